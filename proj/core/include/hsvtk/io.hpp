// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hsvtk/types.hpp"

namespace hsvtk::io {

enum class IoErrorKind {
  missing_file,
  dimension_mismatch,
  unsupported_bit_depth,
  unsupported_format,
  malformed_header,
  invalid_value,
  write_failure,
};

class IoError : public Error {
 public:
  IoError(IoErrorKind kind, const std::string& message) : Error(message), kind_(kind) {}
  IoErrorKind kind() const { return kind_; }

 private:
  IoErrorKind kind_;
};

/// Directory layout of a dataset:
///   <root>/<scene>/cam<k>/frame<tt>/ch<wavelength>.png
///   <root>/<scene>/cam<k>/frame<tt>/depth.pfm
/// Frame indices are zero-padded to two digits, wavelengths are printed as
/// integers (ch400 ... ch700). Lexicographic order of channel file names
/// equals spectral order on the default grid.
struct DatasetLayout {
  std::filesystem::path root;

  std::filesystem::path scene_dir(const std::string& scene) const;
  std::filesystem::path camera_dir(const std::string& scene, int camera) const;
  std::filesystem::path frame_dir(const std::string& scene, int camera, int frame) const;
  std::filesystem::path channel_path(const std::string& scene, int camera, int frame,
                                     double wavelength_nm) const;
  std::filesystem::path depth_path(const std::string& scene, int camera, int frame) const;
};

std::string frame_dir_name(int frame);
std::string channel_file_name(double wavelength_nm);

/// 8-bit grayscale PNG. Values are mapped to [0,1] via v/255 on read; writes
/// round half away from zero. Read rejects non-grayscale color types and any
/// bit depth other than 8.
Image read_png_gray(const std::filesystem::path& path);
void write_png_gray(const Image& image, const std::filesystem::path& path);

/// 8-bit RGB PNG, used for color previews.
void write_png_rgb(const RgbImage& image, const std::filesystem::path& path);

/// Grayscale PFM (header "Pf", little-endian scale -1.0, rows stored
/// bottom-to-top). The payload round-trips bit exactly.
Image read_pfm(const std::filesystem::path& path);
void write_pfm(const Image& image, const std::filesystem::path& path);

/// One frame of one camera as a hyperspectral cube; channels are read in
/// ascending wavelength order of `grid`.
HyperCube read_cube(const DatasetLayout& layout, const std::string& scene, int camera,
                    int frame, const SpectralGrid& grid = SpectralGrid::default_grid());
void write_cube(const HyperCube& cube, const DatasetLayout& layout, const std::string& scene,
                int camera, int frame);

/// Read a frame directory directly (all ch*.png files, ascending wavelength).
HyperCube read_cube_dir(const std::filesystem::path& frame_dir);
void write_cube_dir(const HyperCube& cube, const std::filesystem::path& frame_dir);

DepthMap read_depth(const std::filesystem::path& path);
void write_depth(const DepthMap& depth, const std::filesystem::path& path);

struct MetricsRow {
  std::string label;
  double rate_bits = 0.0;
  double psnr_db = 0.0;
};

/// CSV with header `label,rate_bits,psnr_db`; numeric fields use six decimal
/// places; UTF-8 with \n line endings.
void write_metrics_csv(const std::vector<MetricsRow>& rows, const std::filesystem::path& path);
std::vector<MetricsRow> read_metrics_csv(const std::filesystem::path& path);

}  // namespace hsvtk::io
