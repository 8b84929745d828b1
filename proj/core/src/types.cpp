// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#include "hsvtk/types.hpp"

#include <cmath>

namespace hsvtk {

SpectralGrid::SpectralGrid(std::vector<double> wavelengths_nm)
    : wavelengths_(std::move(wavelengths_nm)) {
  detail::require(!wavelengths_.empty(), "SpectralGrid: empty wavelength list");
  for (std::size_t i = 0; i < wavelengths_.size(); ++i) {
    detail::require(std::isfinite(wavelengths_[i]) && wavelengths_[i] > 0.0,
                    "SpectralGrid: wavelengths must be positive and finite");
    if (i > 0) {
      detail::require(wavelengths_[i] > wavelengths_[i - 1],
                      "SpectralGrid: wavelengths must be strictly increasing");
    }
  }
}

SpectralGrid SpectralGrid::default_grid() { return uniform(31); }

SpectralGrid SpectralGrid::uniform(int channels, double start_nm, double step_nm) {
  detail::require(channels >= 1, "SpectralGrid::uniform: need at least one channel");
  detail::require(step_nm > 0.0, "SpectralGrid::uniform: step must be positive");
  std::vector<double> w(static_cast<std::size_t>(channels));
  for (int i = 0; i < channels; ++i) w[static_cast<std::size_t>(i)] = start_nm + step_nm * i;
  return SpectralGrid(std::move(w));
}

int SpectralGrid::index_of(double wavelength_nm) const {
  for (std::size_t i = 0; i < wavelengths_.size(); ++i) {
    if (wavelengths_[i] == wavelength_nm) return static_cast<int>(i);
  }
  return -1;
}

HyperCube::HyperCube(int width, int height, SpectralGrid grid)
    : width_(width), height_(height), grid_(std::move(grid)) {
  detail::require(width >= 1 && height >= 1, "HyperCube: dimensions must be positive");
  channels_.assign(static_cast<std::size_t>(grid_.size()), Image(width, height, 0.0));
}

HyperCube::HyperCube(SpectralGrid grid, std::vector<Image> channels)
    : grid_(std::move(grid)), channels_(std::move(channels)) {
  detail::require(static_cast<int>(channels_.size()) == grid_.size(),
                  "HyperCube: channel count must equal grid length");
  detail::require(!channels_.empty(), "HyperCube: no channels");
  width_ = channels_.front().width();
  height_ = channels_.front().height();
  detail::require(width_ >= 1 && height_ >= 1, "HyperCube: dimensions must be positive");
  for (const Image& ch : channels_) {
    detail::require(ch.width() == width_ && ch.height() == height_,
                    "HyperCube: all channels must share the same dimensions");
  }
}

void HyperCube::validate_samples() const {
  for (const Image& ch : channels_) {
    for (double v : ch.data()) {
      detail::require(std::isfinite(v) && v >= 0.0 && v <= 1.0,
                      "HyperCube: samples must be finite and in [0,1]");
    }
  }
}

DepthMap::DepthMap(int width, int height, double fill_m) : depth_(width, height, fill_m) {
  validate();
}

DepthMap::DepthMap(Image depth_m) : depth_(std::move(depth_m)) { validate(); }

void DepthMap::validate() const {
  for (double v : depth_.data()) {
    detail::require(std::isfinite(v) && v > 0.0,
                    "DepthMap: depths must be strictly positive and finite");
  }
}

void CameraIntrinsics::validate() const {
  detail::require(sensor_width_mm > 0.0 && sensor_height_mm > 0.0 && focal_mm > 0.0,
                  "CameraIntrinsics: physical sizes must be positive");
  detail::require(res_x >= 1 && res_y >= 1, "CameraIntrinsics: resolution must be positive");
  const double pitch_x = sensor_width_mm / res_x;
  const double pitch_y = sensor_height_mm / res_y;
  detail::require(std::abs(pitch_x - pitch_y) <= 1e-9,
                  "CameraIntrinsics: pixels must be square");
}

void ArrayGeometry::validate() const {
  detail::require(rows >= 1 && cols >= 1, "ArrayGeometry: grid counts must be positive");
  detail::require(baseline_mm > 0.0, "ArrayGeometry: baseline must be positive");
  intrinsics.validate();
}

void Spectrum::validate() const {
  detail::require(static_cast<int>(values.size()) == grid.size(),
                  "Spectrum: value count must match grid length");
  for (double v : values) {
    detail::require(std::isfinite(v) && v >= 0.0,
                    "Spectrum: values must be finite and nonnegative");
  }
}

FilterBank::FilterBank(SpectralGrid grid, std::vector<Row> rows)
    : grid_(std::move(grid)), rows_(std::move(rows)) {
  for (const Row& row : rows_) {
    detail::require(static_cast<int>(row.transmission.size()) == grid_.size(),
                    "FilterBank: row length must match grid length");
    for (double v : row.transmission) {
      detail::require(std::isfinite(v) && v >= 0.0 && v <= 1.0,
                      "FilterBank: transmissions must be in [0,1]");
    }
  }
}

int FilterBank::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace hsvtk
