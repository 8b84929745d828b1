// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#include "hsvtk/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "hsvtk/spectra.hpp"

namespace hsvtk::synth {

namespace {

// splitmix64; stable across platforms, random-access by construction.
std::uint64_t mix64(std::uint64_t v) {
  v += 0x9e3779b97f4a7c15ULL;
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
  return v ^ (v >> 31);
}

double hash_unit(std::uint64_t seed, std::int64_t a, std::int64_t b) {
  std::uint64_t h = mix64(seed ^ mix64(static_cast<std::uint64_t>(a)));
  h = mix64(h ^ mix64(static_cast<std::uint64_t>(b) * 0x7f4a7c15ULL));
  return static_cast<double>(h >> 11) * (1.0 / 9007199254740992.0);  // [0,1)
}

constexpr double kTextureCell = 8.0;  // px per value-noise cell

// Smooth multiplicative texture in layer-local coordinates.
double texture_value(std::uint64_t layer_seed, double u, double v) {
  const double gu = u / kTextureCell;
  const double gv = v / kTextureCell;
  const double fu = std::floor(gu);
  const double fv = std::floor(gv);
  const auto iu = static_cast<std::int64_t>(fu);
  const auto iv = static_cast<std::int64_t>(fv);
  const double tu = gu - fu;
  const double tv = gv - fv;
  const double c00 = hash_unit(layer_seed, iu, iv);
  const double c10 = hash_unit(layer_seed, iu + 1, iv);
  const double c01 = hash_unit(layer_seed, iu, iv + 1);
  const double c11 = hash_unit(layer_seed, iu + 1, iv + 1);
  const double top = (1.0 - tu) * c00 + tu * c10;
  const double bottom = (1.0 - tu) * c01 + tu * c11;
  return (1.0 - tv) * top + tv * bottom;
}

// Per-bump spectral curves; each bump is modulated by its own texture field,
// so a textured material shows per-pixel spectral variation rather than a
// single scalar brightness.
std::vector<std::vector<double>> layer_bump_curves(const SceneLayer& layer,
                                                   const SpectralGrid& grid) {
  std::vector<std::vector<double>> curves;
  curves.reserve(layer.spectrum.size());
  for (const GaussianBump& bump : layer.spectrum) {
    std::vector<double> curve(static_cast<std::size_t>(grid.size()));
    for (int i = 0; i < grid.size(); ++i) {
      const double d = (grid[i] - bump.center_nm) / bump.width_nm;
      curve[static_cast<std::size_t>(i)] = bump.amplitude * std::exp(-0.5 * d * d);
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

}  // namespace

void SceneSpec::validate() const {
  detail::require(width >= 1 && height >= 1, "SceneSpec: dimensions must be positive");
  detail::require(width <= 256 && height <= 256, "SceneSpec: dimensions capped at 256x256");
  detail::require(frames >= 1, "SceneSpec: need at least one frame");
  detail::require(!layers.empty(), "SceneSpec: need at least one layer");
  geometry.validate();
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const SceneLayer& layer = layers[i];
    detail::require(layer.width > 0.0 && layer.height > 0.0,
                    "SceneSpec: layers must have positive area");
    detail::require(std::isfinite(layer.depth_m) && layer.depth_m > 0.0,
                    "SceneSpec: layer depth must be positive");
    detail::require(layer.spectrum.size() >= 1 && layer.spectrum.size() <= 3,
                    "SceneSpec: layer spectrum takes one to three bumps");
    detail::require(layer.texture_amp >= 0.0 && layer.texture_amp < 1.0,
                    "SceneSpec: texture_amp must be in [0,1)");
    for (std::size_t j = i + 1; j < layers.size(); ++j) {
      detail::require(layers[j].depth_m != layer.depth_m,
                      "SceneSpec: layer depths must be distinct");
    }
  }
}

SceneSpec SceneSpec::from_config(const Config& config) {
  SceneSpec spec;
  spec.width = config.get_int("width", spec.width);
  spec.height = config.get_int("height", spec.height);
  spec.frames = config.get_int("frames", spec.frames);
  const int channels = config.get_int("channels", 31);
  spec.grid = SpectralGrid::uniform(channels);
  spec.temperature_k = config.get_double("temperature_k", spec.temperature_k);
  spec.seed = static_cast<std::uint64_t>(config.get_double("seed", 0.0));
  spec.geometry.rows = config.get_int("rows", spec.geometry.rows);
  spec.geometry.cols = config.get_int("cols", spec.geometry.cols);
  spec.geometry.baseline_mm = config.get_double("baseline_mm", spec.geometry.baseline_mm);
  spec.geometry.intrinsics.focal_mm =
      config.get_double("focal_mm", spec.geometry.intrinsics.focal_mm);
  spec.geometry.intrinsics.sensor_width_mm =
      config.get_double("sensor_width_mm", spec.geometry.intrinsics.sensor_width_mm);
  spec.geometry.intrinsics.sensor_height_mm =
      config.get_double("sensor_height_mm", spec.geometry.intrinsics.sensor_height_mm);
  spec.geometry.intrinsics.res_x = config.get_int("res_x", spec.geometry.intrinsics.res_x);
  spec.geometry.intrinsics.res_y = config.get_int("res_y", spec.geometry.intrinsics.res_y);

  for (const std::string& line : config.get_all("layer")) {
    std::istringstream in(line);
    SceneLayer layer;
    in >> layer.x >> layer.y >> layer.width >> layer.height >> layer.depth_m >> layer.vel_x >>
        layer.vel_y >> layer.texture_amp;
    detail::require(static_cast<bool>(in), "SceneSpec: malformed layer line: " + line);
    GaussianBump bump;
    while (in >> bump.center_nm >> bump.width_nm >> bump.amplitude) {
      layer.spectrum.push_back(bump);
    }
    detail::require(!layer.spectrum.empty(),
                    "SceneSpec: layer line needs at least one spectral bump: " + line);
    spec.layers.push_back(std::move(layer));
  }
  spec.validate();
  return spec;
}

double depth_for_disparity(const ArrayGeometry& geometry, double disparity_px) {
  detail::require(disparity_px > 0.0, "depth_for_disparity: disparity must be positive");
  const double pitch_mm = geometry.intrinsics.pixel_pitch_mm();
  return geometry.baseline_mm * geometry.intrinsics.focal_mm /
         (disparity_px * pitch_mm * 1000.0);
}

void generate_camera(const SceneSpec& spec, int camera, std::vector<HyperCube>& frames,
                     std::vector<DepthMap>& depths) {
  spec.validate();
  detail::require(camera >= 0 && camera < spec.geometry.camera_count(),
                  "generate_camera: camera index out of range");

  const Spectrum illuminant = spectra::planck_spectrum(spec.temperature_k, spec.grid).spectrum;

  // Painting order: farthest first, so nearer layers overwrite.
  std::vector<std::size_t> order(spec.layers.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return spec.layers[a].depth_m > spec.layers[b].depth_m;
  });

  const int center = spec.geometry.center_camera();
  const double dcol = spec.geometry.camera_col(camera) - spec.geometry.camera_col(center);
  const double drow = spec.geometry.camera_row(camera) - spec.geometry.camera_row(center);
  const double pitch_mm = spec.geometry.intrinsics.pixel_pitch_mm();
  const double kx = -dcol * spec.geometry.baseline_mm * spec.geometry.intrinsics.focal_mm / pitch_mm;
  const double ky = -drow * spec.geometry.baseline_mm * spec.geometry.intrinsics.focal_mm / pitch_mm;

  std::vector<std::vector<std::vector<double>>> bump_curves;  // [layer][bump][channel]
  bump_curves.reserve(spec.layers.size());
  for (const SceneLayer& layer : spec.layers) {
    bump_curves.push_back(layer_bump_curves(layer, spec.grid));
  }

  frames.clear();
  depths.clear();
  for (int t = 0; t < spec.frames; ++t) {
    HyperCube cube(spec.width, spec.height, spec.grid);
    Image depth(spec.width, spec.height, 0.0);
    Mask covered(spec.width, spec.height, false);

    for (std::size_t li : order) {
      const SceneLayer& layer = spec.layers[li];
      const double depth_mm = layer.depth_m * 1000.0;
      const double pos_x = layer.x + t * layer.vel_x + kx / depth_mm;
      const double pos_y = layer.y + t * layer.vel_y + ky / depth_mm;
      const std::uint64_t layer_seed = mix64(spec.seed ^ (0x1234567ULL + li));

      const int x0 = std::max(0, static_cast<int>(std::ceil(pos_x - 1e-9)));
      const int y0 = std::max(0, static_cast<int>(std::ceil(pos_y - 1e-9)));
      const int x1 = std::min(spec.width - 1,
                              static_cast<int>(std::floor(pos_x + layer.width - 1e-9)) - 0);
      const int y1 = std::min(spec.height - 1,
                              static_cast<int>(std::floor(pos_y + layer.height - 1e-9)) - 0);
      const std::size_t bumps = layer.spectrum.size();
      std::vector<double> factors(bumps, 1.0);
      for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
          if (x - pos_x >= layer.width || y - pos_y >= layer.height) continue;
          if (layer.texture_amp > 0.0) {
            for (std::size_t b = 0; b < bumps; ++b) {
              factors[b] = 1.0 - layer.texture_amp +
                           layer.texture_amp *
                               texture_value(mix64(layer_seed + b), x - pos_x, y - pos_y);
            }
          }
          for (int ch = 0; ch < spec.grid.size(); ++ch) {
            double reflectance = 0.0;
            for (std::size_t b = 0; b < bumps; ++b) {
              reflectance += bump_curves[li][b][static_cast<std::size_t>(ch)] * factors[b];
            }
            cube(x, y, ch) = illuminant.values[static_cast<std::size_t>(ch)] *
                             std::clamp(reflectance, 0.0, 1.0);
          }
          depth(x, y) = layer.depth_m;
          covered.set(x, y, true);
        }
      }
    }

    detail::require(covered.count() == covered.data().size(),
                    "generate: scene does not cover the frame; add a background layer");
    frames.push_back(std::move(cube));
    depths.emplace_back(std::move(depth));
  }
}

SceneData generate(const SceneSpec& spec) {
  spec.validate();
  SceneData data;
  const int cameras = spec.geometry.camera_count();
  data.videos.resize(static_cast<std::size_t>(cameras));
  data.depths.resize(static_cast<std::size_t>(cameras));
  for (int k = 0; k < cameras; ++k) {
    generate_camera(spec, k, data.videos[static_cast<std::size_t>(k)],
                    data.depths[static_cast<std::size_t>(k)]);
  }
  return data;
}

}  // namespace hsvtk::synth
