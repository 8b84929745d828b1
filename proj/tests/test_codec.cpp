// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "hsvtk/codec.hpp"
#include "hsvtk/synth.hpp"
#include "test_support.hpp"

using namespace hsvtk;
using codec::AnchorFrame;
using codec::MotionField;
using codec::UnitMode;

TEST_CASE("quantization step follows 2^((qp-4)/6) clamped at 1") {
  CHECK(codec::quant_step(4) == 1.0);
  CHECK(codec::quant_step(0) == 1.0);  // sub-unit steps clamp to the lossless path
  CHECK(codec::quant_step(22) == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(codec::quant_step(28) == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(codec::transform_bypassed(4));
  CHECK(!codec::transform_bypassed(5));
  CHECK_THROWS_AS(codec::quant_step(52), Error);
}

TEST_CASE("orthonormal DCT: DC-only block and exact inversion") {
  const int n = 8;
  std::vector<double> constant(static_cast<std::size_t>(n) * n, 0.7);
  const std::vector<double> coefficients = codec::dct2(constant, n);
  CHECK(coefficients[0] == doctest::Approx(0.7 * n).epsilon(1e-12));
  for (std::size_t i = 1; i < coefficients.size(); ++i) {
    CHECK(std::abs(coefficients[i]) <= 1e-12);
  }

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-200.0, 200.0);
  std::vector<double> block(static_cast<std::size_t>(n) * n);
  for (double& v : block) v = dist(rng);
  const std::vector<double> back = codec::idct2(codec::dct2(block, n), n);
  for (std::size_t i = 0; i < block.size(); ++i) {
    CHECK(back[i] == doctest::Approx(block[i]).epsilon(1e-10));
  }
}

TEST_CASE("zigzag order visits every index once, diagonals first") {
  const std::vector<int> order = codec::zigzag_order(4);
  REQUIRE(order.size() == 16);
  std::vector<bool> seen(16, false);
  for (int idx : order) {
    REQUIRE(idx >= 0);
    REQUIRE(idx < 16);
    seen[static_cast<std::size_t>(idx)] = true;
  }
  for (bool s : seen) CHECK(s);
  CHECK(order[0] == 0);
  CHECK(order[1] == 1);   // (0,1)
  CHECK(order[2] == 4);   // (1,0)
  CHECK(order[15] == 15);
}

TEST_CASE("base block coder: zero block, lossless integers at step 1, round trip") {
  const int n = 8;
  const std::vector<double> zero(static_cast<std::size_t>(n) * n, 0.0);
  const auto zero_bytes = codec::base_code_block(zero, n, 30);
  const std::vector<double> zero_back = codec::base_decode_block(zero_bytes, n, 30);
  for (double v : zero_back) CHECK(v == 0.0);

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> dist(-255, 255);
  std::vector<double> integers(static_cast<std::size_t>(n) * n);
  for (double& v : integers) v = dist(rng);
  const auto bytes = codec::base_decode_block(codec::base_code_block(integers, n, 4), n, 4);
  for (std::size_t i = 0; i < integers.size(); ++i) CHECK(bytes[i] == integers[i]);

  // Lossy path reproduces quantize/dequantize exactly.
  std::uniform_real_distribution<double> real_dist(-100.0, 100.0);
  std::vector<double> block(static_cast<std::size_t>(n) * n);
  for (double& v : block) v = real_dist(rng);
  const std::vector<double> direct =
      codec::dequantize_block(codec::quantize_block(block, n, 27), n, 27);
  const std::vector<double> via_bytes =
      codec::base_decode_block(codec::base_code_block(block, n, 27), n, 27);
  for (std::size_t i = 0; i < block.size(); ++i) CHECK(direct[i] == via_bytes[i]);
}

TEST_CASE("deflate round trip") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dist(0, 255);
  std::vector<std::uint8_t> raw(5000);
  for (auto& b : raw) b = static_cast<std::uint8_t>(dist(rng) % 7);  // compressible
  const auto packed = codec::deflate_bytes(raw);
  CHECK(packed.size() < raw.size());
  CHECK(codec::inflate_bytes(packed) == raw);
}

TEST_CASE("static frames give zero motion fields") {
  const Image luma = test::smooth_image(64, 64, 21);
  const AnchorFrame frame{&luma, &luma, &luma};
  const codec::DiamondSearchEstimator estimator;
  const auto [fw, bw] = estimator.estimate(frame, frame, frame);
  for (double v : fw.dx.data()) CHECK(v == 0.0);
  for (double v : fw.dy.data()) CHECK(v == 0.0);
  for (double v : bw.dx.data()) CHECK(v == 0.0);
  for (double v : bw.dy.data()) CHECK(v == 0.0);
}

TEST_CASE("a global integer shift is recovered on interior blocks") {
  const int n = 128, k = 5;
  const Image cur = test::smooth_image(n, n, 31);
  Image prev(n, n);
  // cur[x] == prev[x + k]: the content moved left by k from prev to cur.
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      prev(x, y) = cur(std::clamp(x - k, 0, n - 1), y);
    }
  }
  const AnchorFrame af_prev{&prev, &prev, &prev};
  const AnchorFrame af_cur{&cur, &cur, &cur};
  const codec::DiamondSearchEstimator estimator;
  const auto [fw, bw] = estimator.estimate(af_prev, af_cur, af_prev);
  for (int by = 2; by < 6; ++by) {
    for (int bx = 2; bx < 6; ++bx) {
      CHECK(fw.dx(bx * 16, by * 16) == k);
      CHECK(fw.dy(bx * 16, by * 16) == 0);
    }
  }
}

TEST_CASE("motion compensation: identity, half-pel ramp, out-of-scope mask") {
  const int w = 16, h = 8;
  Image ramp(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) ramp(x, y) = 0.1 + 0.02 * x;
  }

  MotionField zero;
  zero.dx = Image(w, h, 0.0);
  zero.dy = Image(w, h, 0.0);
  const auto [p_zero, m_zero] = codec::motion_compensate(ramp, zero);
  CHECK(test::max_abs_diff(p_zero, ramp) == 0.0);
  CHECK(m_zero.count() == m_zero.data().size());

  MotionField half;
  half.dx = Image(w, h, 0.5);
  half.dy = Image(w, h, 0.0);
  const auto [p_half, m_half] = codec::motion_compensate(ramp, half);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w - 1; ++x) {
      CHECK(p_half(x, y) == doctest::Approx(0.1 + 0.02 * (x + 0.5)).epsilon(1e-12));
      CHECK(m_half(x, y));
    }
    CHECK(!m_half(w - 1, y));
    CHECK(p_half(w - 1, y) == doctest::Approx(0.1 + 0.02 * (w - 1)).epsilon(1e-12));
  }

  MotionField far;
  far.dx = Image(w, h, 100.0);
  far.dy = Image(w, h, 0.0);
  const auto [p_far, m_far] = codec::motion_compensate(ramp, far);
  CHECK(m_far.count() == 0);
  for (int y = 0; y < h; ++y) CHECK(p_far(0, y) == ramp(w - 1, y));  // edge clamped
}

TEST_CASE("merge follows the mask case split and is idempotent on equal inputs") {
  const Image a(4, 4, 0.2);
  const Image b(4, 4, 0.6);
  Mask m_fw(4, 4, false);
  Mask m_bw(4, 4, false);
  m_fw.set(0, 0, true);
  m_bw.set(0, 0, true);  // both valid -> mean
  m_fw.set(1, 0, true);  // fw only -> a
  m_bw.set(2, 0, true);  // bw only -> b
  const Image merged = codec::merge_predictions(a, b, m_fw, m_bw);
  CHECK(merged(0, 0) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(merged(1, 0) == 0.2);
  CHECK(merged(2, 0) == 0.6);
  CHECK(merged(3, 3) == doctest::Approx(0.4).epsilon(1e-12));  // both invalid -> mean

  const Image same = codec::merge_predictions(a, a, m_fw, m_bw);
  CHECK(test::max_abs_diff(same, a) == 0.0);
}

TEST_CASE("compute_residual and trivia") {
  std::mt19937_64 rng(11);
  const Image original = test::random_image(6, 5, rng);
  const Image prediction = test::random_image(6, 5, rng);
  const Image residual = codec::compute_residual(original, prediction);
  for (std::size_t i = 0; i < residual.pixel_count(); ++i) {
    CHECK(residual.data()[i] == original.data()[i] - prediction.data()[i]);
  }
  const Image zero = codec::compute_residual(original, original);
  for (double v : zero.data()) CHECK(v == 0.0);
}

TEST_CASE("intra prediction is exact on affine-coupled 8-bit data after block one") {
  const int n = 64;
  codec::CodecConfig cfg;
  // Reference on the 8-bit grid; channel = ref - 26/255 exactly.
  Image ref(n, n);
  const Image smooth = test::smooth_image(n, n, 77, 0.2);
  for (std::size_t i = 0; i < ref.pixel_count(); ++i) {
    ref.data()[i] = std::round(smooth.data()[i] * 255.0) / 255.0;
  }
  Image channel(n, n);
  for (std::size_t i = 0; i < channel.pixel_count(); ++i) {
    channel.data()[i] = ref.data()[i] - 26.0 / 255.0;
  }

  const codec::IntraPrediction out = codec::intra_predict_channel(channel, {ref}, cfg);
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      if (x < cfg.block_size && y < cfg.block_size) continue;  // first block copies the ref
      CHECK(std::abs(out.prediction(x, y) - channel(x, y)) <= 1e-12);
    }
  }
}

TEST_CASE("constant channel and reference carry the level through beta") {
  codec::CodecConfig cfg;
  const Image ref(32, 32, 0.5);
  const Image channel(32, 32, 200.0 / 255.0);
  const codec::IntraPrediction out = codec::intra_predict_channel(channel, {ref}, cfg);
  for (int y = 0; y < 32; ++y) {
    for (int x = 0; x < 32; ++x) {
      if (x < cfg.block_size && y < cfg.block_size) continue;
      CHECK(out.prediction(x, y) == doctest::Approx(200.0 / 255.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("side info selects the affine-matched reference") {
  const int n = 64;
  codec::CodecConfig cfg;
  std::mt19937_64 rng(13);
  const Image channel = test::smooth_image(n, n, 5, 0.25);
  const Image noise1 = test::random_image(n, n, rng);
  const Image noise2 = test::random_image(n, n, rng);
  Image affine(n, n);
  for (std::size_t i = 0; i < affine.pixel_count(); ++i) {
    affine.data()[i] = 0.8 * channel.data()[i] + 0.05;
  }
  const codec::IntraPrediction out =
      codec::intra_predict_channel(channel, {noise1, affine, noise2}, cfg);
  int votes = 0;
  for (std::uint8_t idx : out.ref_indices) votes += idx == 1 ? 1 : 0;
  CHECK(static_cast<double>(votes) >= 0.95 * static_cast<double>(out.ref_indices.size()));
}

namespace {

std::vector<HyperCube> random_video(int width, int height, int channels, int frames,
                                    std::uint64_t seed, bool eight_bit) {
  std::mt19937_64 rng(seed);
  std::vector<HyperCube> video;
  const SpectralGrid grid = SpectralGrid::uniform(channels);
  for (int t = 0; t < frames; ++t) {
    video.push_back(eight_bit ? hsvtk::test::random_cube_8bit(width, height, grid, rng)
                              : hsvtk::test::random_cube(width, height, grid, rng));
  }
  return video;
}

bool videos_identical(const std::vector<HyperCube>& a, const std::vector<HyperCube>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (!(a[t] == b[t])) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("decoder output is bit-identical to the encoder reconstruction") {
  const auto video = random_video(24, 16, 6, 4, 99, false);
  for (int qp : {22, 37}) {
    codec::CodecConfig cfg;
    cfg.qp = qp;
    const codec::EncodeResult result = codec::encode(video, cfg);
    const std::vector<HyperCube> decoded = codec::decode(result.bitstream);
    CHECK(videos_identical(decoded, result.reconstruction));
  }
}

TEST_CASE("step-1 coding of 8-bit data is lossless") {
  const auto video = random_video(16, 16, 5, 4, 7, true);
  for (int qp : {0, 4}) {
    codec::CodecConfig cfg;
    cfg.qp = qp;
    const codec::EncodeResult result = codec::encode(video, cfg);
    const std::vector<HyperCube> decoded = codec::decode(result.bitstream);
    CHECK(videos_identical(decoded, video));
  }
}

TEST_CASE("serialization round-trips the container bit-exactly") {
  const auto video = random_video(16, 8, 4, 2, 3, false);
  codec::CodecConfig cfg;
  cfg.qp = 27;
  const codec::EncodeResult result = codec::encode(video, cfg);
  const auto bytes = result.bitstream.serialize();
  CHECK(bytes.size() == result.bitstream.byte_size());
  const codec::Bitstream parsed = codec::Bitstream::parse(bytes);
  CHECK(parsed.serialize() == bytes);
  const std::vector<HyperCube> decoded = codec::decode(parsed);
  CHECK(videos_identical(decoded, result.reconstruction));
}

TEST_CASE("schedule: anchors every frame, intra on even, residual on odd") {
  const auto video = random_video(16, 16, 6, 4, 15, false);
  codec::CodecConfig cfg;
  cfg.qp = 32;
  const codec::EncodeResult result = codec::encode(video, cfg);

  // Partition check over the emitted units.
  std::map<std::pair<int, int>, UnitMode> seen;
  for (const codec::BitstreamUnit& unit : result.bitstream.units) {
    const auto key = std::make_pair(static_cast<int>(unit.frame), static_cast<int>(unit.channel));
    CHECK(seen.find(key) == seen.end());  // coded exactly once
    seen[key] = unit.mode;
  }
  CHECK(seen.size() == 4 * 6);
  for (const auto& [key, mode] : seen) {
    const auto [t, c] = key;
    if (c < 3) {
      CHECK(mode == UnitMode::anchor);
    } else if (t % 2 == 0) {
      CHECK(mode == UnitMode::intra);
    } else {
      CHECK(mode == UnitMode::residual);
    }
  }

  // Reference buffer contents: channel i >= 3 uses {i-1, i-2, i-3}.
  for (const codec::UnitTrace& trace : result.trace) {
    if (trace.channel < 3) {
      CHECK(trace.reference_channels.empty());
    } else {
      REQUIRE(trace.reference_channels.size() == 3);
      CHECK(trace.reference_channels[0] == trace.channel - 1);
      CHECK(trace.reference_channels[1] == trace.channel - 2);
      CHECK(trace.reference_channels[2] == trace.channel - 3);
    }
  }
}

TEST_CASE("a single-frame video takes the intra path for every channel >= 3") {
  const auto video = random_video(16, 16, 5, 1, 23, false);
  codec::CodecConfig cfg;
  const codec::EncodeResult result = codec::encode(video, cfg);
  for (const codec::BitstreamUnit& unit : result.bitstream.units) {
    CHECK(unit.frame == 0);
    if (unit.channel < 3) {
      CHECK(unit.mode == UnitMode::anchor);
    } else {
      CHECK(unit.mode == UnitMode::intra);
    }
  }
  const std::vector<HyperCube> decoded = codec::decode(result.bitstream);
  CHECK(videos_identical(decoded, result.reconstruction));
}

TEST_CASE("rate is non-increasing in qp on a synthetic scene") {
  synth::SceneSpec spec;
  spec.width = 32;
  spec.height = 32;
  spec.frames = 4;
  spec.grid = SpectralGrid::uniform(6);
  spec.seed = 4;
  synth::SceneLayer background;
  background.x = -32;
  background.y = -32;
  background.width = 128;
  background.height = 128;
  background.depth_m = 8.0;
  background.texture_amp = 0.6;
  background.spectrum = {{500.0, 90.0, 0.8}};
  synth::SceneLayer mover = background;
  mover.x = 8;
  mover.y = 8;
  mover.width = 12;
  mover.height = 12;
  mover.depth_m = 2.0;
  mover.vel_x = 2.0;
  mover.spectrum = {{560.0, 60.0, 0.9}};
  spec.layers = {background, mover};

  std::vector<HyperCube> video;
  std::vector<DepthMap> depths;
  synth::generate_camera(spec, 4, video, depths);

  std::size_t previous = 0;
  bool first = true;
  for (int qp : {22, 27, 32, 37}) {
    codec::CodecConfig cfg;
    cfg.qp = qp;
    const codec::EncodeResult result = codec::encode(video, cfg);
    if (!first) CHECK(result.bitstream.byte_size() <= previous);
    previous = result.bitstream.byte_size();
    first = false;
  }
}

namespace {

// Fixed-field estimator used to exercise the pass-through contract.
class OracleEstimator : public codec::MotionEstimator {
 public:
  explicit OracleEstimator(double dx) : dx_(dx) {}
  std::string id() const override { return "oracle"; }
  std::pair<MotionField, MotionField> estimate(const AnchorFrame& prev, const AnchorFrame&,
                                               const AnchorFrame&) const override {
    MotionField fw, bw;
    fw.dx = Image(prev.c0->width(), prev.c0->height(), dx_);
    fw.dy = Image(prev.c0->width(), prev.c0->height(), 0.0);
    bw = fw;
    bw.direction = codec::MotionDirection::backward;
    return {fw, bw};
  }

 private:
  double dx_;
};

}  // namespace

TEST_CASE("a plugged-in estimator is used verbatim and must match at decode") {
  const auto video = random_video(16, 16, 5, 3, 47, false);
  codec::CodecConfig cfg;
  cfg.qp = 27;
  cfg.motion_estimator_id = "oracle";
  const OracleEstimator estimator(2.0);

  const Image luma(16, 16, 0.5);
  const AnchorFrame frame{&luma, &luma, &luma};
  const auto [fw, bw] = estimator.estimate(frame, frame, frame);
  for (double v : fw.dx.data()) CHECK(v == 2.0);  // accepted verbatim

  const codec::EncodeResult result = codec::encode(video, cfg, &estimator);
  const std::vector<HyperCube> decoded = codec::decode(result.bitstream, &estimator);
  CHECK(videos_identical(decoded, result.reconstruction));

  // Without an instance the id is unknown.
  CHECK_THROWS_AS(codec::encode(video, cfg), Error);
}

TEST_CASE("malformed streams are rejected") {
  const auto video = random_video(16, 16, 4, 2, 5, false);
  codec::CodecConfig cfg;
  const codec::EncodeResult result = codec::encode(video, cfg);
  auto bytes = result.bitstream.serialize();

  {
    auto bad = bytes;
    bad[0] = 'X';
    CHECK_THROWS_AS(codec::Bitstream::parse(bad), codec::StreamError);
  }
  {
    auto bad = bytes;
    bad[4] = 0x7f;  // version
    CHECK_THROWS_AS(codec::Bitstream::parse(bad), codec::StreamError);
  }
  {
    auto bad = bytes;
    bad.resize(bad.size() - 3);
    CHECK_THROWS_AS(codec::Bitstream::parse(bad), codec::StreamError);
  }
  {
    codec::Bitstream reordered = result.bitstream;
    std::swap(reordered.units[0], reordered.units[1]);
    CHECK_THROWS_AS(codec::decode(reordered), codec::StreamError);
  }
  {
    codec::Bitstream tampered = result.bitstream;
    tampered.units[0].payload.pop_back();
    CHECK_THROWS_AS(codec::decode(tampered), Error);
  }
}

TEST_CASE("encode validates its preconditions") {
  codec::CodecConfig cfg;
  CHECK_THROWS_AS(codec::encode({}, cfg), Error);
  const auto three_channels = random_video(8, 8, 3, 1, 1, false);
  CHECK_THROWS_AS(codec::encode(three_channels, cfg), Error);
  cfg.qp = 99;
  const auto ok = random_video(8, 8, 4, 1, 1, false);
  CHECK_THROWS_AS(codec::encode(ok, cfg), Error);
  cfg.qp = 22;
  cfg.block_size = 12;
  CHECK_THROWS_AS(codec::encode(ok, cfg), Error);
}
