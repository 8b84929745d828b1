// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>

#include "hsvtk/blockcoder.hpp"
#include "hsvtk/codec.hpp"
#include "hsvtk/geometry.hpp"
#include "hsvtk/reconstruct.hpp"
#include "hsvtk/spectra.hpp"
#include "hsvtk/synth.hpp"

namespace {

using namespace hsvtk;

Image noise_image(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Image image(n, n);
  for (double& v : image.data()) v = dist(rng);
  return image;
}

void bm_block_matching(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Image ref = noise_image(n, 1);
  reconstruct::MatchConfig cfg;
  for (auto _ : state) {
    auto matches = reconstruct::best_matches(ref, nullptr, {n / 2, n / 2}, cfg,
                                             reconstruct::FrameScope::current_only);
    benchmark::DoNotOptimize(matches);
  }
}
BENCHMARK(bm_block_matching)->Arg(64)->Arg(128);

void bm_nocs(benchmark::State& state) {
  const int n = 48;
  const Image reference = noise_image(n, 2);
  Image distorted(n, n);
  for (std::size_t i = 0; i < distorted.pixel_count(); ++i) {
    distorted.data()[i] = 0.8 * reference.data()[i] + 0.1;
  }
  Mask missing(n, n);
  std::mt19937_64 rng(3);
  std::bernoulli_distribution coin(0.2);
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) missing.set(x, y, coin(rng));
  }
  reconstruct::MatchConfig cfg;
  for (auto _ : state) {
    Image out = reconstruct::nocs(reference, distorted, missing, cfg);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(bm_nocs)->Unit(benchmark::kMillisecond);

void bm_dct_block(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> dist(-255.0, 255.0);
  std::vector<double> block(static_cast<std::size_t>(n) * n);
  for (double& v : block) v = dist(rng);
  for (auto _ : state) {
    auto coded = codec::quantize_block(block, n, 27);
    benchmark::DoNotOptimize(coded);
  }
}
BENCHMARK(bm_dct_block)->Arg(8)->Arg(16);

void bm_warp_view(benchmark::State& state) {
  const int n = 128;
  ArrayGeometry geometry;
  const Image channel = noise_image(n, 5);
  Image depth_raster(n, n, 10.0);
  for (int y = 40; y < 90; ++y) {
    for (int x = 30; x < 80; ++x) depth_raster(x, y) = 2.0;
  }
  const DepthMap depth(depth_raster);
  for (auto _ : state) {
    auto warped = geometry::warp_view(channel, depth, geometry, 4, 3);
    benchmark::DoNotOptimize(warped);
  }
}
BENCHMARK(bm_warp_view)->Unit(benchmark::kMicrosecond);

void bm_apply_filters(benchmark::State& state) {
  const SpectralGrid grid = SpectralGrid::default_grid();
  const FilterBank bank = spectra::builtin_filter_bank(grid);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  HyperCube cube(64, 64, grid);
  for (int ch = 0; ch < cube.channel_count(); ++ch) {
    for (double& v : cube.channel(ch).data()) v = dist(rng);
  }
  for (auto _ : state) {
    auto out = spectra::apply_filters(cube, bank);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(bm_apply_filters)->Unit(benchmark::kMicrosecond);

void bm_encode_video(benchmark::State& state) {
  synth::SceneSpec spec;
  spec.width = 32;
  spec.height = 32;
  spec.frames = 4;
  spec.grid = SpectralGrid::uniform(8);
  spec.seed = 7;
  synth::SceneLayer background;
  background.x = -32;
  background.y = -32;
  background.width = 128;
  background.height = 128;
  background.depth_m = 8.0;
  background.texture_amp = 0.5;
  background.spectrum = {{520.0, 80.0, 0.8}};
  synth::SceneLayer mover = background;
  mover.x = 10;
  mover.y = 10;
  mover.width = 10;
  mover.height = 10;
  mover.depth_m = 2.0;
  mover.vel_x = 2.0;
  spec.layers = {background, mover};

  std::vector<HyperCube> video;
  std::vector<DepthMap> depths;
  synth::generate_camera(spec, 4, video, depths);

  codec::CodecConfig cfg;
  cfg.qp = 32;
  for (auto _ : state) {
    auto result = codec::encode(video, cfg);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(bm_encode_video)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
