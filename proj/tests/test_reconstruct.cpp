// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "hsvtk/geometry.hpp"
#include "hsvtk/parallel.hpp"
#include "hsvtk/reconstruct.hpp"
#include "hsvtk/synth.hpp"
#include "test_support.hpp"

using namespace hsvtk;
using reconstruct::Coord;
using reconstruct::FrameScope;
using reconstruct::Match;
using reconstruct::MatchConfig;

namespace {

// Independent least-squares oracle: explicit normal equations in long double.
std::pair<long double, long double> ols_oracle(const std::vector<double>& r,
                                               const std::vector<double>& d) {
  long double n = 0.0L, sx = 0.0L, sy = 0.0L, sxx = 0.0L, sxy = 0.0L;
  for (std::size_t i = 0; i < r.size(); ++i) {
    n += 1.0L;
    sx += r[i];
    sy += d[i];
    sxx += static_cast<long double>(r[i]) * r[i];
    sxy += static_cast<long double>(r[i]) * d[i];
  }
  const long double alpha = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const long double beta = (sy - alpha * sx) / n;
  return {alpha, beta};
}

Mask random_missing(int width, int height, double fraction, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(fraction);
  Mask mask(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) mask.set(x, y, coin(rng));
  }
  return mask;
}

}  // namespace

TEST_CASE("match config parses from key/value text and validates") {
  const MatchConfig cfg = MatchConfig::from_config(
      Config::parse("block_radius=2\nsearch_radius=9\nbest_matches=8\nbatch_fraction=0.2\n"));
  CHECK(cfg.block_radius == 2);
  CHECK(cfg.search_radius == 9);
  CHECK(cfg.best_matches == 8);
  CHECK(cfg.batch_fraction == 0.2);

  // Absent keys keep defaults.
  const MatchConfig defaults = MatchConfig::from_config(Config::parse(""));
  CHECK(defaults.block_radius == 3);
  CHECK(defaults.search_radius == 15);
  CHECK(defaults.best_matches == 16);

  CHECK_THROWS_AS(MatchConfig::from_config(Config::parse("best_matches=1\n")), Error);
  CHECK_THROWS_AS(MatchConfig::from_config(Config::parse("batch_fraction=1.5\n")), Error);
}

TEST_CASE("block distance: self, constant offset, random oracle") {
  std::mt19937_64 rng(3);
  const Image ref = test::random_image(20, 20, rng);
  CHECK(reconstruct::block_distance(ref, {9, 9}, {9, 9}, 3) == 0.0);

  // Blocks differing by a constant c over n pixels have distance c*sqrt(n).
  Image flat(20, 20, 0.25);
  Image shifted = flat;
  for (int y = 0; y < 7; ++y) {
    for (int x = 0; x < 7; ++x) shifted(3 + x, 3 + y) = 0.25 + 0.125;
  }
  const double d = reconstruct::block_distance(shifted, {6, 6}, {13, 13}, 3);
  CHECK(d == doctest::Approx(0.125 * std::sqrt(49.0)).epsilon(1e-12));

  // Random blocks against a scalar double-loop oracle.
  const Image other = test::random_image(20, 20, rng);
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<int> pos(3, 16);
    const Coord a{pos(rng), pos(rng)};
    const Coord b{pos(rng), pos(rng)};
    double sum = 0.0;
    for (int dy = -3; dy <= 3; ++dy) {
      for (int dx = -3; dx <= 3; ++dx) {
        const double diff = ref(a.x + dx, a.y + dy) - other(b.x + dx, b.y + dy);
        sum += diff * diff;
      }
    }
    CHECK(reconstruct::block_distance(ref, a, b, 3, 1, &other) ==
          doctest::Approx(std::sqrt(sum)).epsilon(1e-9));
  }

  CHECK_THROWS_AS(reconstruct::block_distance(ref, {0, 0}, {9, 9}, 3), Error);
  CHECK_THROWS_AS(reconstruct::block_distance(ref, {9, 9}, {9, 9}, 3, 1, nullptr), Error);
}

TEST_CASE("best matches on a constant image: B candidates, all zero, self first") {
  const Image flat(24, 24, 0.5);
  MatchConfig cfg;
  const auto matches = reconstruct::best_matches(flat, nullptr, {12, 12}, cfg,
                                                 FrameScope::current_only);
  REQUIRE(static_cast<int>(matches.size()) == cfg.best_matches);
  CHECK(matches.front().pos.x == 12);
  CHECK(matches.front().pos.y == 12);
  CHECK(matches.front().t_d == 0);
  for (const Match& m : matches) CHECK(m.distance == 0.0);
}

TEST_CASE("a duplicated patch ranks directly after the self match") {
  std::mt19937_64 rng(11);
  Image ref = test::random_image(40, 40, rng);
  // Copy the block at (12,12) to (22,17); everything else stays random noise.
  for (int dy = -3; dy <= 3; ++dy) {
    for (int dx = -3; dx <= 3; ++dx) ref(22 + dx, 17 + dy) = ref(12 + dx, 12 + dy);
  }
  MatchConfig cfg;
  const auto matches = reconstruct::best_matches(ref, nullptr, {12, 12}, cfg,
                                                 FrameScope::current_only);
  REQUIRE(matches.size() >= 2);
  CHECK(matches[1].pos.x == 22);
  CHECK(matches[1].pos.y == 17);
  CHECK(matches[1].distance == 0.0);
}

TEST_CASE("a window with fewer than B candidates returns them all, ordered") {
  const Image tiny(8, 8, 0.5);
  MatchConfig cfg;  // B = 16, but only 4 full-block centers exist in 8x8
  const auto matches = reconstruct::best_matches(tiny, nullptr, {4, 4}, cfg,
                                                 FrameScope::current_only);
  CHECK(matches.size() == 4);  // self plus the three other full-block centers
  CHECK(matches.front().pos.x == 4);
  CHECK(matches.front().pos.y == 4);
  for (std::size_t i = 1; i < matches.size(); ++i) {
    CHECK(matches[i].distance >= matches[i - 1].distance);
  }
}

TEST_CASE("a shifted previous frame puts the top temporal match at the shift") {
  const Image cur = test::smooth_image(40, 40, 511);
  Image prev(40, 40, 0.0);
  // prev = cur shifted right by 4: content at (x,y) in cur sits at (x-4,y) in
  // prev, so the best previous-frame block for x is at x + (-4, 0).
  for (int y = 0; y < 40; ++y) {
    for (int x = 0; x < 40; ++x) prev(x, y) = cur(std::min(x + 4, 39), y);
  }
  MatchConfig cfg;
  const auto matches = reconstruct::best_matches(cur, &prev, {20, 20}, cfg,
                                                 FrameScope::current_and_previous);
  // The best non-self temporal candidate sits at (16, 20).
  for (const Match& m : matches) {
    if (m.t_d == 1) {
      CHECK(m.pos.x == 16);
      CHECK(m.pos.y == 20);
      break;
    }
  }
}

TEST_CASE("fit_model: exact line, constant target, random oracle, error paths") {
  {
    std::vector<double> r{0.1, 0.4, 0.8, 0.3};
    std::vector<double> d;
    for (double v : r) d.push_back(2.0 * v + 3.0);
    std::vector<std::uint8_t> known(r.size(), 1);
    const auto fit = reconstruct::fit_model(r, d, known);
    REQUIRE(fit.status == reconstruct::FitStatus::ok);
    CHECK(fit.model.alpha == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(fit.model.beta == doctest::Approx(3.0).epsilon(1e-9));
  }
  {
    std::vector<double> r{0.0, 1.0};
    std::vector<double> d{1.0, 1.0};
    std::vector<std::uint8_t> known{1, 1};
    const auto fit = reconstruct::fit_model(r, d, known);
    REQUIRE(fit.status == reconstruct::FitStatus::ok);
    CHECK(fit.model.alpha == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fit.model.beta == doctest::Approx(1.0).epsilon(1e-12));
  }
  {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::vector<double> r(12), d(12);
    for (std::size_t i = 0; i < r.size(); ++i) {
      r[i] = dist(rng);
      d[i] = 0.7 * r[i] + 0.1 + 0.05 * dist(rng);
    }
    std::vector<std::uint8_t> known(r.size(), 1);
    const auto fit = reconstruct::fit_model(r, d, known);
    REQUIRE(fit.status == reconstruct::FitStatus::ok);
    const auto [alpha, beta] = ols_oracle(r, d);
    CHECK(fit.model.alpha == doctest::Approx(static_cast<double>(alpha)).epsilon(1e-9));
    CHECK(fit.model.beta == doctest::Approx(static_cast<double>(beta)).epsilon(1e-9));
  }
  {
    // Fewer than two known pairs.
    std::vector<double> r{0.5, 0.6};
    std::vector<double> d{0.2, 0.3};
    std::vector<std::uint8_t> known{1, 0};
    CHECK(reconstruct::fit_model(r, d, known).status ==
          reconstruct::FitStatus::insufficient_data);
  }
  {
    // Zero variance in the reference entries.
    std::vector<double> r{0.5, 0.5, 0.5};
    std::vector<double> d{0.2, 0.3, 0.4};
    std::vector<std::uint8_t> known{1, 1, 1};
    CHECK(reconstruct::fit_model(r, d, known).status == reconstruct::FitStatus::degenerate);
  }
}

TEST_CASE("nocs is exact on affine-coupled pairs") {
  std::mt19937_64 rng(23);
  const int n = 56;
  const Image reference = test::smooth_image(n, n, 1234);
  Image distorted(n, n);
  for (std::size_t i = 0; i < distorted.pixel_count(); ++i) {
    distorted.data()[i] = 0.7 * reference.data()[i] + 0.2;
  }

  MatchConfig cfg;
  SUBCASE("random 30 percent occlusion") {
    const Mask missing = random_missing(n, n, 0.3, rng);
    const Image out = reconstruct::nocs(reference, distorted, missing, cfg);
    CHECK(test::max_abs_diff(out, distorted) <= 1e-6);
  }
  SUBCASE("solid block occlusion") {
    Mask missing(n, n);
    for (int y = 10; y < 40; ++y) {
      for (int x = 12; x < 44; ++x) missing.set(x, y, true);
    }
    const Image out = reconstruct::nocs(reference, distorted, missing, cfg);
    CHECK(test::max_abs_diff(out, distorted) <= 1e-6);
  }
}

TEST_CASE("nocs trivia: empty mask is a no-op; one hole in a constant image") {
  MatchConfig cfg;
  const Image reference(20, 20, 0.5);
  const Image distorted(20, 20, 0.75);
  const Mask empty(20, 20, false);
  const Image out = reconstruct::nocs(reference, distorted, empty, cfg);
  CHECK(test::max_abs_diff(out, distorted) == 0.0);

  Mask one(20, 20, false);
  one.set(10, 10, true);
  Image holed = distorted;
  holed(10, 10) = 0.0;
  const Image filled = reconstruct::nocs(reference, holed, one, cfg);
  CHECK(filled(10, 10) == doctest::Approx(0.75).epsilon(1e-9));
}

TEST_CASE("valid pixels are never modified and the output is clipped") {
  std::mt19937_64 rng(31);
  const int n = 32;
  const Image reference = test::random_image(n, n, rng);
  const Image distorted = test::random_image(n, n, rng);
  const Mask missing = random_missing(n, n, 0.25, rng);
  MatchConfig cfg;
  const Image out = reconstruct::nocs(reference, distorted, missing, cfg);
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      if (!missing(x, y)) CHECK(out(x, y) == distorted(x, y));
      CHECK(out(x, y) >= 0.0);
      CHECK(out(x, y) <= 1.0);
    }
  }
}

TEST_CASE("reconstruction is deterministic across thread counts") {
  std::mt19937_64 rng(37);
  const int n = 40;
  const Image reference = test::smooth_image(n, n, 99);
  const Image distorted = test::random_image(n, n, rng);
  const Mask missing = random_missing(n, n, 0.3, rng);
  MatchConfig cfg;

  parallel::set_max_threads(1);
  const Image serial = reconstruct::nocs(reference, distorted, missing, cfg);
  parallel::set_max_threads(8);
  const Image threaded = reconstruct::nocs(reference, distorted, missing, cfg);
  parallel::set_max_threads(0);
  CHECK(serial == threaded);
}

TEST_CASE("tnocs degenerates to nocs for a static scene with identical masks") {
  std::mt19937_64 rng(41);
  const int n = 48;
  const Image reference = test::smooth_image(n, n, 7);
  Image distorted(n, n);
  for (std::size_t i = 0; i < distorted.pixel_count(); ++i) {
    distorted.data()[i] = 0.6 * reference.data()[i] + 0.15;
  }
  const Mask missing = random_missing(n, n, 0.25, rng);

  MatchConfig cfg;
  const Image spatial = reconstruct::nocs(reference, distorted, missing, cfg);
  const Image temporal = reconstruct::tnocs(reference, reference, distorted, distorted,
                                            missing, missing, cfg);
  CHECK(spatial == temporal);
}

TEST_CASE("tnocs degenerates to nocs when the previous frame is fully missing") {
  std::mt19937_64 rng(43);
  const int n = 32;
  const Image reference = test::smooth_image(n, n, 8);
  const Image reference_prev = test::smooth_image(n, n, 9);
  const Image distorted = test::random_image(n, n, rng);
  const Image distorted_prev = test::random_image(n, n, rng);
  const Mask missing = random_missing(n, n, 0.2, rng);
  const Mask all_missing(n, n, true);

  MatchConfig cfg;
  const Image spatial = reconstruct::nocs(reference, distorted, missing, cfg);
  const Image temporal = reconstruct::tnocs(reference, reference_prev, distorted,
                                            distorted_prev, missing, all_missing, cfg);
  CHECK(spatial == temporal);
}

namespace {

struct SequenceData {
  Image reference_t, reference_prev;
  Image distorted_t, distorted_prev;
  Mask missing_t, missing_prev;
  Image truth_t;
};

// Two-frame cross-spectral sequence from the synthetic generator: the
// distorted view is a different spectral band of a peripheral camera warped
// onto the center view; occluders translate between frames so holes of frame
// t are visible in frame t-1.
SequenceData make_sequence(std::uint64_t seed) {
  synth::SceneSpec spec;
  spec.width = 96;
  spec.height = 96;
  spec.frames = 2;
  spec.grid = SpectralGrid::uniform(8, 400.0, 40.0);
  spec.seed = seed;

  std::mt19937_64 rng(seed * 77 + 1);
  std::uniform_real_distribution<double> jitter(0.0, 1.0);

  synth::SceneLayer background;
  background.x = -96;
  background.y = -96;
  background.width = 288;
  background.height = 288;
  background.depth_m = synth::depth_for_disparity(spec.geometry, 2.0);
  background.texture_amp = 0.65;
  background.spectrum = {{430.0, 55.0, 0.35}, {530.0, 60.0, 0.35}, {630.0, 65.0, 0.3}};

  synth::SceneLayer occluder;
  occluder.x = 18.0 + 30.0 * jitter(rng);
  occluder.y = 14.0 + 30.0 * jitter(rng);
  occluder.width = 24.0;
  occluder.height = 30.0;
  occluder.depth_m = synth::depth_for_disparity(spec.geometry, 11.0);
  occluder.vel_x = 7.0;
  occluder.vel_y = jitter(rng) > 0.5 ? 2.0 : -2.0;
  occluder.texture_amp = 0.5;
  occluder.spectrum = {{460.0, 60.0, 0.45}, {590.0, 70.0, 0.45}};

  spec.layers = {background, occluder};

  const int center = 4;
  const int peripheral = 3;
  std::vector<HyperCube> center_frames, peripheral_frames;
  std::vector<DepthMap> center_depths, peripheral_depths;
  synth::generate_camera(spec, center, center_frames, center_depths);
  synth::generate_camera(spec, peripheral, peripheral_frames, peripheral_depths);

  const int band_ref = 5;   // reference band observed by the center camera
  const int band_dist = 2;  // band observed by the peripheral camera

  SequenceData data;
  data.reference_prev = center_frames[0].channel(band_ref);
  data.reference_t = center_frames[1].channel(band_ref);
  data.truth_t = center_frames[1].channel(band_dist);

  auto warp_band = [&](int t) {
    return geometry::warp_view(peripheral_frames[static_cast<std::size_t>(t)].channel(band_dist),
                               peripheral_depths[static_cast<std::size_t>(t)], spec.geometry,
                               peripheral, center);
  };
  auto [warp_prev, valid_prev] = warp_band(0);
  auto [warp_cur, valid_cur] = warp_band(1);
  data.distorted_prev = std::move(warp_prev);
  data.distorted_t = std::move(warp_cur);
  data.missing_prev = Mask(spec.width, spec.height);
  data.missing_t = Mask(spec.width, spec.height);
  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      data.missing_prev.set(x, y, !valid_prev(x, y));
      data.missing_t.set(x, y, !valid_cur(x, y));
    }
  }
  return data;
}

}  // namespace

TEST_CASE("tnocs beats nocs per pixel on a translating synthetic sequence") {
  const SequenceData data = make_sequence(2026);
  MatchConfig cfg;

  const Image out_nocs = reconstruct::nocs(data.reference_t, data.distorted_t, data.missing_t,
                                           cfg);
  const Image out_tnocs =
      reconstruct::tnocs(data.reference_t, data.reference_prev, data.distorted_t,
                         data.distorted_prev, data.missing_t, data.missing_prev, cfg);

  std::size_t reconstructed = 0;
  std::size_t tnocs_not_worse = 0;
  for (int y = 0; y < data.truth_t.height(); ++y) {
    for (int x = 0; x < data.truth_t.width(); ++x) {
      if (!data.missing_t(x, y)) continue;
      ++reconstructed;
      const double err_nocs = std::abs(out_nocs(x, y) - data.truth_t(x, y));
      const double err_tnocs = std::abs(out_tnocs(x, y) - data.truth_t(x, y));
      if (err_tnocs <= err_nocs + 1e-12) ++tnocs_not_worse;
    }
  }
  REQUIRE(reconstructed > 100);
  CHECK(static_cast<double>(tnocs_not_worse) >= 0.9 * static_cast<double>(reconstructed));
}
