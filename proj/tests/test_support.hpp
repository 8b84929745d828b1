// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <filesystem>
#include <random>
#include <vector>

#include "hsvtk/image.hpp"
#include "hsvtk/types.hpp"

namespace hsvtk::test {

inline std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("hsvtk_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline Image random_image(int width, int height, std::mt19937_64& rng, double lo = 0.0,
                          double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Image image(width, height);
  for (double& v : image.data()) v = dist(rng);
  return image;
}

/// Random image quantized to the 8-bit grid (values k/255).
inline Image random_image_8bit(int width, int height, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(0, 255);
  Image image(width, height);
  for (double& v : image.data()) v = dist(rng) / 255.0;
  return image;
}

/// Smooth low-frequency image: a seeded mixture of sinusoids, values within
/// [margin, 1-margin].
inline Image smooth_image(int width, int height, std::uint64_t seed, double margin = 0.1) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * 3.14159265358979);
  std::uniform_real_distribution<double> freq(0.02, 0.11);
  const double fx1 = freq(rng), fy1 = freq(rng), fx2 = freq(rng), fy2 = freq(rng);
  const double p1 = phase(rng), p2 = phase(rng);
  Image image(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double v = 0.5 + 0.25 * std::sin(2.0 * 3.14159265358979 * (fx1 * x + fy1 * y) + p1) +
                       0.2 * std::cos(2.0 * 3.14159265358979 * (fx2 * x - fy2 * y) + p2);
      image(x, y) = margin + (1.0 - 2.0 * margin) * std::clamp(v, 0.0, 1.0);
    }
  }
  return image;
}

inline HyperCube random_cube(int width, int height, const SpectralGrid& grid,
                             std::mt19937_64& rng) {
  HyperCube cube(width, height, grid);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (int ch = 0; ch < cube.channel_count(); ++ch) {
    for (double& v : cube.channel(ch).data()) v = dist(rng);
  }
  return cube;
}

inline HyperCube random_cube_8bit(int width, int height, const SpectralGrid& grid,
                                  std::mt19937_64& rng) {
  HyperCube cube(width, height, grid);
  std::uniform_int_distribution<int> dist(0, 255);
  for (int ch = 0; ch < cube.channel_count(); ++ch) {
    for (double& v : cube.channel(ch).data()) v = dist(rng) / 255.0;
  }
  return cube;
}

inline double max_abs_diff(const Image& a, const Image& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.pixel_count(); ++i) {
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  }
  return worst;
}

}  // namespace hsvtk::test
