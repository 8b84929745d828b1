// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#include "hsvtk/io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace hsvtk::io {

namespace {

std::uint8_t quantize_8bit(double v) {
  if (!(v > 0.0)) return 0;
  if (v >= 1.0) return 255;
  return static_cast<std::uint8_t>(std::lround(v * 255.0));
}

struct FileCloser {
  std::FILE* fp = nullptr;
  ~FileCloser() {
    if (fp) std::fclose(fp);
  }
};

std::string wavelength_token(double wavelength_nm) {
  const long long rounded = std::llround(wavelength_nm);
  if (static_cast<double>(rounded) == wavelength_nm) return std::to_string(rounded);
  std::ostringstream out;
  out << wavelength_nm;
  return out.str();
}

}  // namespace

std::string frame_dir_name(int frame) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "frame%02d", frame);
  return buf;
}

std::string channel_file_name(double wavelength_nm) {
  return "ch" + wavelength_token(wavelength_nm) + ".png";
}

std::filesystem::path DatasetLayout::scene_dir(const std::string& scene) const {
  return root / scene;
}

std::filesystem::path DatasetLayout::camera_dir(const std::string& scene, int camera) const {
  return scene_dir(scene) / ("cam" + std::to_string(camera));
}

std::filesystem::path DatasetLayout::frame_dir(const std::string& scene, int camera,
                                               int frame) const {
  return camera_dir(scene, camera) / frame_dir_name(frame);
}

std::filesystem::path DatasetLayout::channel_path(const std::string& scene, int camera,
                                                  int frame, double wavelength_nm) const {
  return frame_dir(scene, camera, frame) / channel_file_name(wavelength_nm);
}

std::filesystem::path DatasetLayout::depth_path(const std::string& scene, int camera,
                                                int frame) const {
  return frame_dir(scene, camera, frame) / "depth.pfm";
}

Image read_png_gray(const std::filesystem::path& path) {
  FileCloser file{std::fopen(path.c_str(), "rb")};
  if (!file.fp) throw IoError(IoErrorKind::missing_file, "cannot open " + path.string());

  png_byte signature[8];
  if (std::fread(signature, 1, 8, file.fp) != 8 || png_sig_cmp(signature, 0, 8) != 0) {
    throw IoError(IoErrorKind::malformed_header, "not a PNG file: " + path.string());
  }

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError(IoErrorKind::malformed_header, "libpng init failed");
  }

  Image image;
  std::vector<std::uint8_t> buffer;
  std::vector<png_bytep> rows;
  int error_kind = -1;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError(IoErrorKind::malformed_header, "corrupt PNG: " + path.string());
  }

  png_init_io(png, file.fp);
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);

  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  const int bit_depth = png_get_bit_depth(png, info);
  const int color_type = png_get_color_type(png, info);

  if (bit_depth != 8) error_kind = static_cast<int>(IoErrorKind::unsupported_bit_depth);
  else if (color_type != PNG_COLOR_TYPE_GRAY)
    error_kind = static_cast<int>(IoErrorKind::unsupported_format);
  if (error_kind >= 0) {
    png_destroy_read_struct(&png, &info, nullptr);
    if (error_kind == static_cast<int>(IoErrorKind::unsupported_bit_depth)) {
      throw IoError(IoErrorKind::unsupported_bit_depth,
                    "unsupported PNG bit depth " + std::to_string(bit_depth) + " in " +
                        path.string());
    }
    throw IoError(IoErrorKind::unsupported_format,
                  "expected 8-bit grayscale PNG: " + path.string());
  }

  png_set_interlace_handling(png);
  png_read_update_info(png, info);

  buffer.assign(static_cast<std::size_t>(width) * height, 0);
  rows.resize(height);
  for (png_uint_32 y = 0; y < height; ++y) {
    rows[y] = buffer.data() + static_cast<std::size_t>(y) * width;
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  image = Image(static_cast<int>(width), static_cast<int>(height));
  for (std::size_t i = 0; i < buffer.size(); ++i) {
    image.data()[i] = buffer[i] / 255.0;
  }
  return image;
}

namespace {

void write_png_impl(const std::filesystem::path& path, int width, int height, int color_type,
                    std::vector<std::uint8_t>& buffer) {
  FileCloser file{std::fopen(path.c_str(), "wb")};
  if (!file.fp) throw IoError(IoErrorKind::write_failure, "cannot create " + path.string());

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw IoError(IoErrorKind::write_failure, "libpng init failed");
  }

  const int samples = color_type == PNG_COLOR_TYPE_RGB ? 3 : 1;
  std::vector<png_bytep> rows(static_cast<std::size_t>(height));
  for (int y = 0; y < height; ++y) {
    rows[static_cast<std::size_t>(y)] =
        buffer.data() + static_cast<std::size_t>(y) * width * samples;
  }

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError(IoErrorKind::write_failure, "PNG write failed: " + path.string());
  }

  png_init_io(png, file.fp);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8,
               color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace

void write_png_gray(const Image& image, const std::filesystem::path& path) {
  detail::require(!image.empty(), "write_png_gray: empty image");
  std::vector<std::uint8_t> buffer(image.pixel_count());
  for (std::size_t i = 0; i < buffer.size(); ++i) {
    buffer[i] = quantize_8bit(image.data()[i]);
  }
  write_png_impl(path, image.width(), image.height(), PNG_COLOR_TYPE_GRAY, buffer);
}

void write_png_rgb(const RgbImage& image, const std::filesystem::path& path) {
  detail::require(!image.r.empty() && image.r.same_size(image.g) && image.r.same_size(image.b),
                  "write_png_rgb: channel dimensions disagree");
  std::vector<std::uint8_t> buffer(image.r.pixel_count() * 3);
  for (std::size_t i = 0; i < image.r.pixel_count(); ++i) {
    buffer[3 * i + 0] = quantize_8bit(image.r.data()[i]);
    buffer[3 * i + 1] = quantize_8bit(image.g.data()[i]);
    buffer[3 * i + 2] = quantize_8bit(image.b.data()[i]);
  }
  write_png_impl(path, image.width(), image.height(), PNG_COLOR_TYPE_RGB, buffer);
}

Image read_pfm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw IoError(IoErrorKind::missing_file, "cannot open " + path.string());

  std::string magic;
  in >> magic;
  if (magic != "Pf") {
    throw IoError(IoErrorKind::malformed_header,
                  "expected grayscale PFM magic 'Pf' in " + path.string());
  }
  long long width = 0;
  long long height = 0;
  double scale = 0.0;
  in >> width >> height >> scale;
  if (!in.good() || width <= 0 || height <= 0 || scale == 0.0 || !std::isfinite(scale)) {
    throw IoError(IoErrorKind::malformed_header, "malformed PFM header in " + path.string());
  }
  in.get();  // single whitespace byte terminating the header

  const bool little_endian = scale < 0.0;
  std::vector<float> row(static_cast<std::size_t>(width));
  Image image(static_cast<int>(width), static_cast<int>(height));
  for (long long r = 0; r < height; ++r) {
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(row.size() * sizeof(float)));
    if (!in.good()) {
      throw IoError(IoErrorKind::malformed_header, "truncated PFM payload in " + path.string());
    }
    const long long y = height - 1 - r;  // PFM rows are stored bottom-to-top
    for (long long x = 0; x < width; ++x) {
      float v = row[static_cast<std::size_t>(x)];
      if (!little_endian) {
        std::uint32_t bits;
        std::memcpy(&bits, &v, sizeof(bits));
        bits = __builtin_bswap32(bits);
        std::memcpy(&v, &bits, sizeof(bits));
      }
      image(static_cast<int>(x), static_cast<int>(y)) = static_cast<double>(v);
    }
  }
  return image;
}

void write_pfm(const Image& image, const std::filesystem::path& path) {
  detail::require(!image.empty(), "write_pfm: empty image");
  std::ofstream out(path, std::ios::binary);
  if (!out.good()) throw IoError(IoErrorKind::write_failure, "cannot create " + path.string());
  out << "Pf\n" << image.width() << " " << image.height() << "\n-1.0\n";
  std::vector<float> row(static_cast<std::size_t>(image.width()));
  for (int r = 0; r < image.height(); ++r) {
    const int y = image.height() - 1 - r;
    for (int x = 0; x < image.width(); ++x) {
      row[static_cast<std::size_t>(x)] = static_cast<float>(image(x, y));
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(float)));
  }
  if (!out.good()) throw IoError(IoErrorKind::write_failure, "PFM write failed: " + path.string());
}

HyperCube read_cube(const DatasetLayout& layout, const std::string& scene, int camera,
                    int frame, const SpectralGrid& grid) {
  std::vector<Image> channels;
  channels.reserve(static_cast<std::size_t>(grid.size()));
  for (int i = 0; i < grid.size(); ++i) {
    const auto path = layout.channel_path(scene, camera, frame, grid[i]);
    if (!std::filesystem::exists(path)) {
      throw IoError(IoErrorKind::missing_file,
                    "missing channel " + wavelength_token(grid[i]) + " nm: " + path.string());
    }
    Image channel = read_png_gray(path);
    if (!channels.empty() && !channel.same_size(channels.front())) {
      throw IoError(IoErrorKind::dimension_mismatch,
                    "channel dimensions disagree at " + path.string());
    }
    channels.push_back(std::move(channel));
  }
  return HyperCube(grid, std::move(channels));
}

void write_cube(const HyperCube& cube, const DatasetLayout& layout, const std::string& scene,
                int camera, int frame) {
  const auto dir = layout.frame_dir(scene, camera, frame);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError(IoErrorKind::write_failure, "cannot create " + dir.string());
  for (int i = 0; i < cube.channel_count(); ++i) {
    write_png_gray(cube.channel(i), dir / channel_file_name(cube.grid()[i]));
  }
}

HyperCube read_cube_dir(const std::filesystem::path& frame_dir) {
  if (!std::filesystem::is_directory(frame_dir)) {
    throw IoError(IoErrorKind::missing_file, "no such frame directory: " + frame_dir.string());
  }
  std::vector<std::pair<double, std::filesystem::path>> found;
  for (const auto& entry : std::filesystem::directory_iterator(frame_dir)) {
    const std::string name = entry.path().filename().string();
    if (name.size() > 6 && name.rfind("ch", 0) == 0 && name.ends_with(".png")) {
      try {
        found.emplace_back(std::stod(name.substr(2, name.size() - 6)), entry.path());
      } catch (const std::exception&) {
        // not a channel file
      }
    }
  }
  if (found.empty()) {
    throw IoError(IoErrorKind::missing_file,
                  "no ch*.png channels in " + frame_dir.string());
  }
  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<double> wavelengths;
  std::vector<Image> channels;
  for (const auto& [wl, path] : found) {
    wavelengths.push_back(wl);
    Image channel = read_png_gray(path);
    if (!channels.empty() && !channel.same_size(channels.front())) {
      throw IoError(IoErrorKind::dimension_mismatch,
                    "channel dimensions disagree at " + path.string());
    }
    channels.push_back(std::move(channel));
  }
  return HyperCube(SpectralGrid(std::move(wavelengths)), std::move(channels));
}

void write_cube_dir(const HyperCube& cube, const std::filesystem::path& frame_dir) {
  std::error_code ec;
  std::filesystem::create_directories(frame_dir, ec);
  if (ec) throw IoError(IoErrorKind::write_failure, "cannot create " + frame_dir.string());
  for (int i = 0; i < cube.channel_count(); ++i) {
    write_png_gray(cube.channel(i), frame_dir / channel_file_name(cube.grid()[i]));
  }
}

DepthMap read_depth(const std::filesystem::path& path) {
  Image raster = read_pfm(path);
  for (double v : raster.data()) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw IoError(IoErrorKind::invalid_value,
                    "depth values must be strictly positive: " + path.string());
    }
  }
  return DepthMap(std::move(raster));
}

void write_depth(const DepthMap& depth, const std::filesystem::path& path) {
  depth.validate();
  write_pfm(depth.raster(), path);
}

void write_metrics_csv(const std::vector<MetricsRow>& rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out.good()) throw IoError(IoErrorKind::write_failure, "cannot create " + path.string());
  out << "label,rate_bits,psnr_db\n";
  char buf[64];
  for (const MetricsRow& row : rows) {
    std::snprintf(buf, sizeof(buf), "%.6f", row.rate_bits);
    out << row.label << "," << buf << ",";
    std::snprintf(buf, sizeof(buf), "%.6f", row.psnr_db);
    out << buf << "\n";
  }
  if (!out.good()) throw IoError(IoErrorKind::write_failure, "CSV write failed: " + path.string());
}

std::vector<MetricsRow> read_metrics_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in.good()) throw IoError(IoErrorKind::missing_file, "cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "label,rate_bits,psnr_db") {
    throw IoError(IoErrorKind::malformed_header, "bad metrics CSV header in " + path.string());
  }
  std::vector<MetricsRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
    if (c2 == std::string::npos) {
      throw IoError(IoErrorKind::invalid_value, "bad metrics CSV row: " + line);
    }
    MetricsRow row;
    row.label = line.substr(0, c1);
    try {
      row.rate_bits = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
      row.psnr_db = std::stod(line.substr(c2 + 1));
    } catch (const std::exception&) {
      throw IoError(IoErrorKind::invalid_value, "bad metrics CSV row: " + line);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace hsvtk::io
