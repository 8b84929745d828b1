// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hsvtk/image.hpp"

namespace hsvtk {

/// Ordered list of sample wavelengths in nanometers.
class SpectralGrid {
 public:
  SpectralGrid() = default;
  explicit SpectralGrid(std::vector<double> wavelengths_nm);

  /// 400 nm to 700 nm in 10 nm steps, 31 entries.
  static SpectralGrid default_grid();
  /// First `channels` entries of a 10 nm grid starting at 400 nm.
  static SpectralGrid uniform(int channels, double start_nm = 400.0, double step_nm = 10.0);

  int size() const { return static_cast<int>(wavelengths_.size()); }
  double operator[](int i) const { return wavelengths_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& wavelengths() const { return wavelengths_; }

  /// Index of an exactly matching wavelength, or -1.
  int index_of(double wavelength_nm) const;

  bool operator==(const SpectralGrid& other) const = default;

 private:
  std::vector<double> wavelengths_;
};

/// One frame's 3D datacube: two spatial dimensions by one spectral dimension.
/// Channel i holds normalized intensities in [0,1] at grid wavelength i.
class HyperCube {
 public:
  HyperCube() = default;
  HyperCube(int width, int height, SpectralGrid grid);
  HyperCube(SpectralGrid grid, std::vector<Image> channels);

  int width() const { return width_; }
  int height() const { return height_; }
  int channel_count() const { return static_cast<int>(channels_.size()); }
  const SpectralGrid& grid() const { return grid_; }

  Image& channel(int i) { return channels_[static_cast<std::size_t>(i)]; }
  const Image& channel(int i) const { return channels_[static_cast<std::size_t>(i)]; }

  double& operator()(int x, int y, int ch) { return channels_[static_cast<std::size_t>(ch)](x, y); }
  double operator()(int x, int y, int ch) const { return channels_[static_cast<std::size_t>(ch)](x, y); }

  /// Throws unless every sample is finite and in [0,1].
  void validate_samples() const;

  bool operator==(const HyperCube& other) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  SpectralGrid grid_;
  std::vector<Image> channels_;
};

/// Physical depth per pixel, in meters. Entries must be positive and finite.
class DepthMap {
 public:
  DepthMap() = default;
  DepthMap(int width, int height, double fill_m = 1.0);
  explicit DepthMap(Image depth_m);

  int width() const { return depth_.width(); }
  int height() const { return depth_.height(); }

  double& operator()(int x, int y) { return depth_(x, y); }
  double operator()(int x, int y) const { return depth_(x, y); }

  Image& raster() { return depth_; }
  const Image& raster() const { return depth_; }

  /// Throws unless every entry is strictly positive and finite.
  void validate() const;

  bool operator==(const DepthMap& other) const = default;

 private:
  Image depth_;
};

/// Signed per-axis pixel displacement between two camera views.
struct DisparityMap {
  Image dx;
  Image dy;

  int width() const { return dx.width(); }
  int height() const { return dx.height(); }
};

/// Pinhole camera with square pixels.
struct CameraIntrinsics {
  double sensor_width_mm = 7.2;
  double sensor_height_mm = 5.4;
  int res_x = 1600;
  int res_y = 1200;
  double focal_mm = 6.0;

  /// Size of a single pixel in millimeters.
  double pixel_pitch_mm() const { return sensor_width_mm / res_x; }

  /// Throws unless pixels are square (horizontal and vertical pitch agree
  /// within 1e-9 mm) and all quantities are positive.
  void validate() const;
};

/// Regular camera grid; cameras are indexed row-major, index = row*cols + col.
struct ArrayGeometry {
  int rows = 3;
  int cols = 3;
  double baseline_mm = 40.0;
  CameraIntrinsics intrinsics;

  int camera_count() const { return rows * cols; }
  int camera_row(int index) const { return index / cols; }
  int camera_col(int index) const { return index % cols; }
  /// Index of the central camera (rows and cols are expected odd).
  int center_camera() const { return (rows / 2) * cols + cols / 2; }

  void validate() const;
};

/// Nonnegative per-wavelength values on a spectral grid (light source
/// emission, material reflectance, or their product).
struct Spectrum {
  SpectralGrid grid;
  std::vector<double> values;

  void validate() const;
};

/// Matrix of sampled spectral transmission curves; each row maps a sampled
/// spectrum to one camera channel.
class FilterBank {
 public:
  struct Row {
    std::string name;
    std::vector<double> transmission;  // one entry per grid wavelength, in [0,1]
  };

  FilterBank() = default;
  FilterBank(SpectralGrid grid, std::vector<Row> rows);

  const SpectralGrid& grid() const { return grid_; }
  int row_count() const { return static_cast<int>(rows_.size()); }
  const Row& row(int i) const { return rows_[static_cast<std::size_t>(i)]; }
  const std::vector<Row>& rows() const { return rows_; }

  /// Index of the row with the given name, or -1.
  int index_of(const std::string& name) const;

 private:
  SpectralGrid grid_;
  std::vector<Row> rows_;
};

/// Named image stack, e.g. the output of applying a filter bank.
struct ChannelStack {
  std::vector<std::string> names;
  std::vector<Image> channels;

  int channel_count() const { return static_cast<int>(channels.size()); }
};

/// Three-channel color image with samples clipped to [0,1].
struct RgbImage {
  Image r, g, b;

  int width() const { return r.width(); }
  int height() const { return r.height(); }
};

}  // namespace hsvtk
