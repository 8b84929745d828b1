// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace hsvtk::cli {

struct SynthArgs {
  std::string spec_path;
  std::string out_root;
  std::string scene = "scene0";
  long long seed = -1;  // -1 keeps the spec file's seed
};
int run_synth(const SynthArgs& args);

struct RgbArgs {
  std::string in_dir;
  std::string out_png;
};
int run_rgb(const RgbArgs& args);

struct FiltersArgs {
  std::string in_dir;
  std::string out_dir;
  std::string bank_csv;  // empty = built-in nine-filter bank
};
int run_filters(const FiltersArgs& args);

struct ExtractTextureArgs {
  std::string in_dir;
  std::string out_dir;
  std::vector<double> quad;  // x0 y0 x1 y1 x2 y2 x3 y3
  int width = 0;
  int height = 0;
};
int run_extract_texture(const ExtractTextureArgs& args);

struct WarpArgs {
  std::string scene_dir;
  int cam_src = 0;
  int cam_dst = 4;
  int frame = 0;
  std::string out_dir;
  std::string geometry_cfg;  // empty = <scene_dir>/geometry.cfg or defaults
};
int run_warp(const WarpArgs& args);

struct ReconstructArgs {
  bool temporal = false;
  std::string reference;
  std::string distorted;
  std::string mask;  // validity mask: white = valid, dark = missing
  std::string reference_prev;
  std::string distorted_prev;
  std::string mask_prev;
  std::string out;
  std::string config_path;
  int block_radius = -1;
  int search_radius = -1;
  int best = -1;
  double batch_fraction = -1.0;
  std::string gt;
  std::string csv;
  std::string label = "reconstruct";
};
int run_reconstruct(const ReconstructArgs& args);

struct EncodeArgs {
  std::string in_dir;
  std::string out_file;
  int qp = 32;
  int block_size = 8;
};
int run_encode(const EncodeArgs& args);

struct DecodeArgs {
  std::string in_file;
  std::string out_dir;
};
int run_decode(const DecodeArgs& args);

struct EvalPsnrArgs {
  std::string a;
  std::string b;
  double peak = 1.0;
  std::string csv;
  std::string label = "psnr";
  double rate_bits = 0.0;
};
int run_eval_psnr(const EvalPsnrArgs& args);

struct EvalBdArgs {
  std::string anchor_csv;
  std::string test_csv;
  std::string svg;
};
int run_eval_bd(const EvalBdArgs& args);

}  // namespace hsvtk::cli
