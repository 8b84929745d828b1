// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "hsvtk/eval.hpp"
#include "test_support.hpp"

using namespace hsvtk;
using eval::RDPoint;

namespace {

// Monotone random RD curve: strictly increasing rate and psnr.
std::vector<RDPoint> random_curve(std::mt19937_64& rng, int points = 4) {
  std::uniform_real_distribution<double> rate_step(0.2, 1.0);
  std::uniform_real_distribution<double> psnr_step(0.5, 4.0);
  std::vector<RDPoint> curve;
  double rate = 1000.0 * (1.0 + rate_step(rng));
  double psnr = 30.0 + psnr_step(rng);
  for (int i = 0; i < points; ++i) {
    curve.push_back({rate, psnr});
    rate *= 1.0 + rate_step(rng);
    psnr += psnr_step(rng);
  }
  return curve;
}

}  // namespace

TEST_CASE("psnr: infinite sentinel, 20 dB uniform error, scalar oracle, symmetry") {
  const Image a(8, 8, 0.5);
  CHECK(std::isinf(eval::psnr(a, a)));

  Image b(8, 8, 0.6);  // uniform error 0.1 -> 10*log10(1/0.01) = 20 dB
  CHECK(eval::psnr(a, b, 1.0) == doctest::Approx(20.0).epsilon(1e-12));

  std::mt19937_64 rng(3);
  const Image x = test::random_image(9, 7, rng);
  const Image y = test::random_image(9, 7, rng);
  long double sum = 0.0L;
  for (std::size_t i = 0; i < x.pixel_count(); ++i) {
    const long double d = static_cast<long double>(x.data()[i]) - y.data()[i];
    sum += d * d;
  }
  const double oracle =
      10.0 * std::log10(1.0 / static_cast<double>(sum / static_cast<long double>(x.pixel_count())));
  CHECK(eval::psnr(x, y) == doctest::Approx(oracle).epsilon(1e-9));
  CHECK(eval::psnr(x, y) == eval::psnr(y, x));

  // Strictly decreasing in uniform error magnitude.
  Image closer(8, 8, 0.55);
  CHECK(eval::psnr(a, closer) > eval::psnr(a, b));

  Image wrong(4, 4, 0.0);
  CHECK_THROWS_AS(eval::psnr(a, wrong), Error);
}

TEST_CASE("cube psnr pools the MSE over all samples") {
  const SpectralGrid grid = SpectralGrid::uniform(2);
  HyperCube a(2, 2, grid);
  HyperCube b(2, 2, grid);
  // One channel differs by 0.2, the other matches: pooled MSE = 0.04/2.
  for (double& v : b.channel(0).data()) v = 0.2;
  const double expected = 10.0 * std::log10(1.0 / 0.02);
  CHECK(eval::psnr(a, b) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("bd metrics: identical curves give zero deltas") {
  std::mt19937_64 rng(5);
  const auto curve = random_curve(rng);
  const eval::BdResult result = eval::bd_metrics(curve, curve);
  CHECK(std::abs(result.bd_rate_percent) <= 1e-9);
  CHECK(std::abs(result.bd_psnr_db) <= 1e-9);
}

TEST_CASE("halving every rate gives bd_rate of -50 percent") {
  std::mt19937_64 rng(7);
  const auto curve = random_curve(rng, 5);
  std::vector<RDPoint> half = curve;
  for (RDPoint& p : half) p.rate_bits /= 2.0;
  const eval::BdResult result = eval::bd_metrics(curve, half);
  CHECK(result.bd_rate_percent == doctest::Approx(-50.0).epsilon(1e-6));
}

TEST_CASE("a uniform +1 dB shift gives bd_psnr of +1 dB") {
  std::mt19937_64 rng(9);
  const auto curve = random_curve(rng, 6);
  std::vector<RDPoint> lifted = curve;
  for (RDPoint& p : lifted) p.psnr_db += 1.0;
  const eval::BdResult result = eval::bd_metrics(curve, lifted);
  CHECK(result.bd_psnr_db == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("antisymmetry identities hold on random monotone curve pairs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_curve(rng);
    auto b = random_curve(rng);
    // Pull b's psnr range toward a's so the curves overlap.
    b.front().psnr_db = a.front().psnr_db + 0.25;
    for (std::size_t i = 1; i < b.size(); ++i) {
      b[i].psnr_db = b[i - 1].psnr_db + 1.0 + 0.1 * static_cast<double>(i);
    }
    const eval::BdResult ab = eval::bd_metrics(a, b);
    const eval::BdResult ba = eval::bd_metrics(b, a);
    CHECK(std::abs(ab.bd_psnr_db + ba.bd_psnr_db) <= 1e-9);
    const double product =
        (1.0 + ab.bd_rate_percent / 100.0) * (1.0 + ba.bd_rate_percent / 100.0);
    CHECK(std::abs(product - 1.0) <= 1e-6);
  }
}

TEST_CASE("bd metrics validate their inputs") {
  std::mt19937_64 rng(13);
  const auto curve = random_curve(rng);

  auto short_curve = curve;
  short_curve.pop_back();
  CHECK_THROWS_AS(eval::bd_metrics(short_curve, curve), Error);

  auto non_monotone = curve;
  std::swap(non_monotone[1].psnr_db, non_monotone[2].psnr_db);
  CHECK_THROWS_AS(eval::bd_metrics(non_monotone, curve), Error);

  // Far-apart psnr ranges never overlap.
  auto far = curve;
  for (RDPoint& p : far) p.psnr_db += 1000.0;
  CHECK_THROWS_AS(eval::bd_metrics(curve, far), Error);

  auto infinite = curve;
  infinite[1].psnr_db = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(eval::bd_metrics(curve, infinite), Error);
}

TEST_CASE("bd summary reports plain and weighted means") {
  const std::vector<eval::BdResult> results{{-10.0, 0.5}, {-2.0, 0.1}};
  const std::vector<double> weights{1.0, 3.0};
  const eval::BdSummary summary = eval::summarize_bd(results, weights);
  CHECK(summary.mean_bd_rate_percent == doctest::Approx(-6.0).epsilon(1e-12));
  CHECK(summary.mean_bd_psnr_db == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(summary.weighted_bd_rate_percent == doctest::Approx(-4.0).epsilon(1e-12));
  CHECK(summary.weighted_bd_psnr_db == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("rd curve svg is written with axes and one polyline per curve") {
  const auto dir = test::temp_dir("svg");
  std::mt19937_64 rng(17);
  const eval::NamedCurve a{"anchor", random_curve(rng)};
  const eval::NamedCurve b{"test", random_curve(rng)};
  eval::write_rd_curve_svg({a, b}, dir / "rd.svg");

  std::ifstream in(dir / "rd.svg");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.find("<svg") != std::string::npos);
  CHECK(text.find("PSNR [dB]") != std::string::npos);
  CHECK(text.find("log10 rate [bits]") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') > 5);
  std::size_t polylines = 0;
  for (std::size_t pos = text.find("<polyline"); pos != std::string::npos;
       pos = text.find("<polyline", pos + 1)) {
    ++polylines;
  }
  CHECK(polylines == 2);
}
