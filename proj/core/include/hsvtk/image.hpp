// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hsvtk/error.hpp"

namespace hsvtk {

/// Row-major single-channel raster of real-valued samples.
class Image {
 public:
  Image() = default;
  Image(int width, int height, double fill = 0.0) {
    detail::require(width >= 0 && height >= 0, "Image: negative dimensions");
    width_ = width;
    height_ = height;
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t pixel_count() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width_ && y >= 0 && y < height_;
  }
  bool same_size(const Image& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  double& operator()(int x, int y) {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }
  double operator()(int x, int y) const {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }

  double& at(int x, int y) {
    detail::require(in_bounds(x, y), "Image::at: out of bounds");
    return (*this)(x, y);
  }
  double at(int x, int y) const {
    detail::require(in_bounds(x, y), "Image::at: out of bounds");
    return (*this)(x, y);
  }

  std::span<double> row(int y) { return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)}; }
  std::span<const double> row(int y) const { return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)}; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool operator==(const Image& other) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

/// Per-pixel boolean raster; the meaning of `true` is defined by the consumer
/// (validity after warping, missing-pixel flags, ...).
class Mask {
 public:
  Mask() = default;
  Mask(int width, int height, bool fill = false) {
    detail::require(width >= 0 && height >= 0, "Mask: negative dimensions");
    width_ = width;
    height_ = height;
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                 fill ? std::uint8_t{1} : std::uint8_t{0});
  }

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return data_.empty(); }

  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width_ && y >= 0 && y < height_;
  }
  bool same_size(const Mask& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }
  bool matches(const Image& image) const {
    return width_ == image.width() && height_ == image.height();
  }

  bool operator()(int x, int y) const {
    return data_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  void set(int x, int y, bool value) {
    data_[static_cast<std::size_t>(y) * width_ + x] = value ? 1 : 0;
  }

  std::size_t count() const {
    std::size_t n = 0;
    for (std::uint8_t v : data_) n += v;
    return n;
  }

  const std::vector<std::uint8_t>& data() const { return data_; }

  bool operator==(const Mask& other) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

}  // namespace hsvtk
