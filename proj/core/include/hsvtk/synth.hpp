// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "hsvtk/config.hpp"
#include "hsvtk/types.hpp"

namespace hsvtk::synth {

/// One spectral component of a layer reflectance.
struct GaussianBump {
  double center_nm = 550.0;
  double width_nm = 60.0;
  double amplitude = 0.8;
};

/// Fronto-parallel textured rectangle at a fixed depth, translating by a
/// constant per-frame velocity. Positions are center-view pixel coordinates
/// at frame 0.
struct SceneLayer {
  double x = 0.0;
  double y = 0.0;
  double width = 0.0;
  double height = 0.0;
  double depth_m = 1.0;
  double vel_x = 0.0;
  double vel_y = 0.0;
  /// Strength of the multiplicative value-noise texture in [0,1); 0 keeps the
  /// layer flat.
  double texture_amp = 0.0;
  std::vector<GaussianBump> spectrum;  // at most three bumps
};

struct SceneSpec {
  int width = 64;
  int height = 64;
  int frames = 1;
  SpectralGrid grid = SpectralGrid::default_grid();
  ArrayGeometry geometry;
  double temperature_k = 6400.0;
  std::uint64_t seed = 0;
  std::vector<SceneLayer> layers;

  /// Throws unless dimensions are within 256x256, layer depths are distinct,
  /// and every layer covers a positive area.
  void validate() const;

  /// Parses the key/value + layer-table text format. Layer lines are
  /// `layer = x y w h depth_m vx vy texture_amp c1 w1 a1 [c2 w2 a2 [c3 w3 a3]]`.
  static SceneSpec from_config(const Config& config);
};

/// All cameras' videos plus their per-frame depth maps.
struct SceneData {
  std::vector<std::vector<HyperCube>> videos;  // [camera][frame]
  std::vector<std::vector<DepthMap>> depths;   // [camera][frame]
};

/// Renders the scene deterministically in the seed. Per-camera views shift
/// every layer by its analytic disparity; depth maps carry exact layer depths
/// after z-ordering. Every pixel must be covered by at least one layer.
SceneData generate(const SceneSpec& spec);

/// Renders a single camera (same content as the corresponding generate()
/// entry) without materializing the others.
void generate_camera(const SceneSpec& spec, int camera, std::vector<HyperCube>& frames,
                     std::vector<DepthMap>& depths);

/// Depth in meters that produces the given horizontal-neighbor disparity
/// magnitude (in pixels) under the array's intrinsics; handy for building
/// integer-disparity scenes.
double depth_for_disparity(const ArrayGeometry& geometry, double disparity_px);

}  // namespace hsvtk::synth
