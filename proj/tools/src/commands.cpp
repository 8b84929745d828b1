// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "hsvtk/codec.hpp"
#include "hsvtk/eval.hpp"
#include "hsvtk/geometry.hpp"
#include "hsvtk/io.hpp"
#include "hsvtk/reconstruct.hpp"
#include "hsvtk/spectra.hpp"
#include "hsvtk/synth.hpp"

namespace fs = std::filesystem;

namespace hsvtk::cli {

namespace {

// A "cube or image" argument: directories hold per-channel stacks, single
// files hold one grayscale channel.
std::vector<Image> load_planes(const std::string& path) {
  if (fs::is_directory(path)) {
    HyperCube cube = io::read_cube_dir(path);
    std::vector<Image> planes;
    planes.reserve(static_cast<std::size_t>(cube.channel_count()));
    for (int i = 0; i < cube.channel_count(); ++i) planes.push_back(cube.channel(i));
    return planes;
  }
  return {io::read_png_gray(path)};
}

Mask mask_from_png(const std::string& path, int width, int height) {
  const Image raster = io::read_png_gray(path);
  detail::require(raster.width() == width && raster.height() == height,
                  "mask dimensions do not match the input");
  Mask mask(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) mask.set(x, y, raster(x, y) >= 0.5);
  }
  return mask;
}

void write_mask_png(const Mask& mask, const fs::path& path) {
  Image raster(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) raster(x, y) = mask(x, y) ? 1.0 : 0.0;
  }
  io::write_png_gray(raster, path);
}

ArrayGeometry geometry_from_config(const Config& config) {
  ArrayGeometry geometry;
  geometry.rows = config.get_int("rows", geometry.rows);
  geometry.cols = config.get_int("cols", geometry.cols);
  geometry.baseline_mm = config.get_double("baseline_mm", geometry.baseline_mm);
  geometry.intrinsics.focal_mm = config.get_double("focal_mm", geometry.intrinsics.focal_mm);
  geometry.intrinsics.sensor_width_mm =
      config.get_double("sensor_width_mm", geometry.intrinsics.sensor_width_mm);
  geometry.intrinsics.sensor_height_mm =
      config.get_double("sensor_height_mm", geometry.intrinsics.sensor_height_mm);
  geometry.intrinsics.res_x = config.get_int("res_x", geometry.intrinsics.res_x);
  geometry.intrinsics.res_y = config.get_int("res_y", geometry.intrinsics.res_y);
  geometry.validate();
  return geometry;
}

void append_metrics_row(const std::string& csv_path, const io::MetricsRow& row) {
  std::vector<io::MetricsRow> rows;
  if (fs::exists(csv_path)) rows = io::read_metrics_csv(csv_path);
  rows.push_back(row);
  io::write_metrics_csv(rows, csv_path);
}

std::vector<fs::path> sorted_frame_dirs(const fs::path& camera_dir) {
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(camera_dir)) {
    if (entry.is_directory() && entry.path().filename().string().rfind("frame", 0) == 0) {
      dirs.push_back(entry.path());
    }
  }
  std::sort(dirs.begin(), dirs.end());
  detail::require(!dirs.empty(), "no frame directories under " + camera_dir.string());
  return dirs;
}

}  // namespace

int run_synth(const SynthArgs& args) {
  synth::SceneSpec spec = synth::SceneSpec::from_config(Config::load(args.spec_path));
  if (args.seed >= 0) spec.seed = static_cast<std::uint64_t>(args.seed);

  const io::DatasetLayout layout{args.out_root};
  const synth::SceneData data = synth::generate(spec);
  for (int cam = 0; cam < spec.geometry.camera_count(); ++cam) {
    for (int t = 0; t < spec.frames; ++t) {
      io::write_cube(data.videos[static_cast<std::size_t>(cam)][static_cast<std::size_t>(t)],
                     layout, args.scene, cam, t);
      io::write_depth(data.depths[static_cast<std::size_t>(cam)][static_cast<std::size_t>(t)],
                      layout.depth_path(args.scene, cam, t));
    }
  }

  // Array parameters travel with the scene so later warp calls agree.
  std::ofstream geo(layout.scene_dir(args.scene) / "geometry.cfg");
  geo << "rows=" << spec.geometry.rows << "\ncols=" << spec.geometry.cols
      << "\nbaseline_mm=" << spec.geometry.baseline_mm
      << "\nfocal_mm=" << spec.geometry.intrinsics.focal_mm
      << "\nsensor_width_mm=" << spec.geometry.intrinsics.sensor_width_mm
      << "\nsensor_height_mm=" << spec.geometry.intrinsics.sensor_height_mm
      << "\nres_x=" << spec.geometry.intrinsics.res_x
      << "\nres_y=" << spec.geometry.intrinsics.res_y << "\n";

  std::cout << "wrote " << spec.geometry.camera_count() << " cameras x " << spec.frames
            << " frames to " << (fs::path(args.out_root) / args.scene).string() << "\n";
  return 0;
}

int run_rgb(const RgbArgs& args) {
  const HyperCube cube = io::read_cube_dir(args.in_dir);
  const RgbImage rgb = spectra::render_rgb(cube);
  io::write_png_rgb(rgb, args.out_png);
  std::cout << "wrote " << args.out_png << "\n";
  return 0;
}

int run_filters(const FiltersArgs& args) {
  const HyperCube cube = io::read_cube_dir(args.in_dir);
  const FilterBank bank = args.bank_csv.empty()
                              ? spectra::builtin_filter_bank(cube.grid())
                              : spectra::load_filter_bank_csv(args.bank_csv, cube.grid());
  const ChannelStack stack = spectra::apply_filters(cube, bank);
  fs::create_directories(args.out_dir);
  for (int i = 0; i < stack.channel_count(); ++i) {
    io::write_png_gray(stack.channels[static_cast<std::size_t>(i)],
                       fs::path(args.out_dir) / (stack.names[static_cast<std::size_t>(i)] + ".png"));
  }
  std::cout << "wrote " << stack.channel_count() << " filtered channels to " << args.out_dir
            << "\n";
  return 0;
}

int run_extract_texture(const ExtractTextureArgs& args) {
  detail::require(args.quad.size() == 8,
                  "--quad needs 8 values: x0 y0 x1 y1 x2 y2 x3 y3 "
                  "(top-left, bottom-left, bottom-right, top-right)");
  const HyperCube cube = io::read_cube_dir(args.in_dir);
  geometry::Quad quad;
  for (int i = 0; i < 4; ++i) {
    quad.points[static_cast<std::size_t>(i)] = {args.quad[static_cast<std::size_t>(2 * i)],
                                                args.quad[static_cast<std::size_t>(2 * i + 1)]};
  }
  const HyperCube texture = geometry::extract_texture(cube, quad, args.width, args.height);
  io::write_cube_dir(texture, args.out_dir);
  std::cout << "wrote " << args.width << "x" << args.height << " texture to " << args.out_dir
            << "\n";
  return 0;
}

int run_warp(const WarpArgs& args) {
  const fs::path scene_dir(args.scene_dir);
  const io::DatasetLayout layout{scene_dir.parent_path()};
  const std::string scene = scene_dir.filename().string();

  ArrayGeometry geometry;
  fs::path geo_path = args.geometry_cfg.empty() ? scene_dir / "geometry.cfg"
                                                : fs::path(args.geometry_cfg);
  if (fs::exists(geo_path)) {
    geometry = geometry_from_config(Config::load(geo_path));
  } else {
    geometry.validate();  // paper-array defaults
  }

  const HyperCube cube = io::read_cube_dir(layout.frame_dir(scene, args.cam_src, args.frame));
  const DepthMap depth = io::read_depth(layout.depth_path(scene, args.cam_src, args.frame));

  std::vector<Image> warped_channels;
  Mask valid;
  for (int ch = 0; ch < cube.channel_count(); ++ch) {
    auto [warped, mask] =
        geometry::warp_view(cube.channel(ch), depth, geometry, args.cam_src, args.cam_dst);
    warped_channels.push_back(std::move(warped));
    if (ch == 0) valid = std::move(mask);
  }
  const HyperCube warped_cube(cube.grid(), std::move(warped_channels));
  io::write_cube_dir(warped_cube, args.out_dir);
  write_mask_png(valid, fs::path(args.out_dir) / "mask.png");
  std::cout << "wrote warped view (" << valid.count() << "/" << valid.data().size()
            << " valid pixels) to " << args.out_dir << "\n";
  return 0;
}

int run_reconstruct(const ReconstructArgs& args) {
  reconstruct::MatchConfig cfg;
  if (!args.config_path.empty()) {
    cfg = reconstruct::MatchConfig::from_config(Config::load(args.config_path));
  }
  if (args.block_radius > 0) cfg.block_radius = args.block_radius;
  if (args.search_radius > 0) cfg.search_radius = args.search_radius;
  if (args.best > 0) cfg.best_matches = args.best;
  if (args.batch_fraction > 0.0) cfg.batch_fraction = args.batch_fraction;
  cfg.validate();

  const std::vector<Image> reference = load_planes(args.reference);
  const std::vector<Image> distorted = load_planes(args.distorted);
  detail::require(reference.size() == distorted.size() || reference.size() == 1,
                  "reference must have one channel or match the distorted channel count");

  const int width = distorted.front().width();
  const int height = distorted.front().height();
  const Mask valid = mask_from_png(args.mask, width, height);
  Mask missing(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) missing.set(x, y, !valid(x, y));
  }

  std::vector<Image> reference_prev, distorted_prev;
  Mask missing_prev;
  if (args.temporal) {
    reference_prev = load_planes(args.reference_prev);
    distorted_prev = load_planes(args.distorted_prev);
    const Mask valid_prev = mask_from_png(args.mask_prev, width, height);
    missing_prev = Mask(width, height);
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) missing_prev.set(x, y, !valid_prev(x, y));
    }
  }

  std::vector<Image> result;
  for (std::size_t ch = 0; ch < distorted.size(); ++ch) {
    const Image& ref = reference.size() == 1 ? reference.front() : reference[ch];
    if (args.temporal) {
      const Image& ref_prev = reference_prev.size() == 1 ? reference_prev.front()
                                                         : reference_prev[ch];
      result.push_back(reconstruct::tnocs(ref, ref_prev, distorted[ch], distorted_prev[ch],
                                          missing, missing_prev, cfg));
    } else {
      result.push_back(reconstruct::nocs(ref, distorted[ch], missing, cfg));
    }
  }

  if (fs::is_directory(args.distorted)) {
    const HyperCube source = io::read_cube_dir(args.distorted);
    HyperCube out(source.grid(), std::move(result));
    io::write_cube_dir(out, args.out);
    if (!args.gt.empty()) {
      const HyperCube gt = io::read_cube_dir(args.gt);
      const double value = eval::psnr(out, gt);
      std::cout << "psnr_db=" << value << "\n";
      if (!args.csv.empty()) append_metrics_row(args.csv, {args.label, 0.0, value});
    }
  } else {
    io::write_png_gray(result.front(), args.out);
    if (!args.gt.empty()) {
      const Image gt = io::read_png_gray(args.gt);
      const double value = eval::psnr(result.front(), gt);
      std::cout << "psnr_db=" << value << "\n";
      if (!args.csv.empty()) append_metrics_row(args.csv, {args.label, 0.0, value});
    }
  }
  std::cout << "wrote reconstruction to " << args.out << "\n";
  return 0;
}

int run_encode(const EncodeArgs& args) {
  std::vector<HyperCube> video;
  for (const fs::path& dir : sorted_frame_dirs(args.in_dir)) {
    video.push_back(io::read_cube_dir(dir));
  }
  codec::CodecConfig cfg;
  cfg.qp = args.qp;
  cfg.block_size = args.block_size;
  const codec::EncodeResult result = codec::encode(video, cfg);
  result.bitstream.save(args.out_file);
  std::cout << "encoded " << video.size() << " frames, qp=" << args.qp << ", "
            << result.bitstream.byte_size() * 8 << " bits -> " << args.out_file << "\n";
  return 0;
}

int run_decode(const DecodeArgs& args) {
  const codec::Bitstream stream = codec::Bitstream::load(args.in_file);
  const std::vector<HyperCube> video = codec::decode(stream);
  for (std::size_t t = 0; t < video.size(); ++t) {
    io::write_cube_dir(video[t], fs::path(args.out_dir) / io::frame_dir_name(static_cast<int>(t)));
  }
  std::cout << "decoded " << video.size() << " frames to " << args.out_dir << "\n";
  return 0;
}

int run_eval_psnr(const EvalPsnrArgs& args) {
  double value = 0.0;
  if (fs::is_directory(args.a)) {
    value = eval::psnr(io::read_cube_dir(args.a), io::read_cube_dir(args.b), args.peak);
  } else {
    value = eval::psnr(io::read_png_gray(args.a), io::read_png_gray(args.b), args.peak);
  }
  std::cout << "psnr_db=" << value << "\n";
  if (!args.csv.empty()) append_metrics_row(args.csv, {args.label, args.rate_bits, value});
  return 0;
}

int run_eval_bd(const EvalBdArgs& args) {
  auto to_curve = [](const std::vector<io::MetricsRow>& rows) {
    std::vector<eval::RDPoint> curve;
    for (const io::MetricsRow& row : rows) curve.push_back({row.rate_bits, row.psnr_db});
    return curve;
  };
  const std::vector<eval::RDPoint> anchor = to_curve(io::read_metrics_csv(args.anchor_csv));
  const std::vector<eval::RDPoint> test = to_curve(io::read_metrics_csv(args.test_csv));
  const eval::BdResult result = eval::bd_metrics(anchor, test);
  std::cout << "bd_rate_percent=" << result.bd_rate_percent << "\n"
            << "bd_psnr_db=" << result.bd_psnr_db << "\n";
  if (!args.svg.empty()) {
    eval::write_rd_curve_svg({{"anchor", anchor}, {"test", test}}, args.svg);
    std::cout << "wrote " << args.svg << "\n";
  }
  return 0;
}

}  // namespace hsvtk::cli
