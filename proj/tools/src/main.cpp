// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"
#include "hsvtk/error.hpp"
#include "hsvtk/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{"hsvtk - hyperspectral datacube toolkit"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "Cap worker threads (0 = hardware default)")
      ->capture_default_str();

  hsvtk::cli::SynthArgs synth_args;
  CLI::App* synth = app.add_subcommand("synth", "Render a procedural ground-truth scene");
  synth->add_option("--spec", synth_args.spec_path, "Scene spec config file")->required();
  synth->add_option("--out", synth_args.out_root, "Output dataset root")->required();
  synth->add_option("--scene", synth_args.scene, "Scene name")->capture_default_str();
  synth->add_option("--seed", synth_args.seed, "Override the spec seed");

  hsvtk::cli::RgbArgs rgb_args;
  CLI::App* rgb = app.add_subcommand("rgb", "Render a frame directory to an RGB preview");
  rgb->add_option("--in", rgb_args.in_dir, "Frame directory (ch*.png)")->required();
  rgb->add_option("--out", rgb_args.out_png, "Output PNG")->required();

  hsvtk::cli::FiltersArgs filters_args;
  CLI::App* filters = app.add_subcommand("filters", "Apply a spectral filter bank");
  filters->add_option("--in", filters_args.in_dir, "Frame directory")->required();
  filters->add_option("--out", filters_args.out_dir, "Output directory")->required();
  filters->add_option("--bank", filters_args.bank_csv,
                      "Filter bank CSV (default: built-in nine-filter bank)");

  hsvtk::cli::ExtractTextureArgs texture_args;
  CLI::App* texture = app.add_subcommand("extract-texture", "Warp a quad region to a texture");
  texture->add_option("--in", texture_args.in_dir, "Frame directory")->required();
  texture->add_option("--out", texture_args.out_dir, "Output directory")->required();
  texture->add_option("--quad", texture_args.quad,
                      "Quad corners: x0 y0 x1 y1 x2 y2 x3 y3 (tl bl br tr)")
      ->expected(8)
      ->required();
  texture->add_option("--width", texture_args.width, "Texture width")->required();
  texture->add_option("--height", texture_args.height, "Texture height")->required();

  hsvtk::cli::WarpArgs warp_args;
  CLI::App* warp = app.add_subcommand("warp", "Warp one camera view to another");
  warp->add_option("--scene-dir", warp_args.scene_dir, "Scene directory (cam*/frame*)")
      ->required();
  warp->add_option("--cam-src", warp_args.cam_src, "Source camera index")->required();
  warp->add_option("--cam-dst", warp_args.cam_dst, "Destination camera index")->required();
  warp->add_option("--frame", warp_args.frame, "Frame index")->capture_default_str();
  warp->add_option("--out", warp_args.out_dir, "Output directory")->required();
  warp->add_option("--geometry", warp_args.geometry_cfg,
                   "Array geometry config (default: <scene-dir>/geometry.cfg)");

  hsvtk::cli::ReconstructArgs rec_args;
  CLI::App* rec = app.add_subcommand("reconstruct", "Cross-spectral occlusion reconstruction");
  rec->require_subcommand(1);
  CLI::App* rec_nocs = rec->add_subcommand("nocs", "Spatial block-matching reconstruction");
  CLI::App* rec_tnocs =
      rec->add_subcommand("tnocs", "Reconstruction that also searches the previous frame");
  for (CLI::App* sub : {rec_nocs, rec_tnocs}) {
    sub->add_option("--reference", rec_args.reference, "Reference image or frame directory")
        ->required();
    sub->add_option("--distorted", rec_args.distorted, "Distorted image or frame directory")
        ->required();
    sub->add_option("--mask", rec_args.mask, "Validity mask PNG (white = valid)")->required();
    sub->add_option("--out", rec_args.out, "Output image or directory")->required();
    sub->add_option("--config", rec_args.config_path, "key=value matching config file");
    sub->add_option("--block-radius", rec_args.block_radius, "Block radius r, block (2r+1)^2");
    sub->add_option("--search-radius", rec_args.search_radius, "Search window radius");
    sub->add_option("--best", rec_args.best, "Number of best matches B");
    sub->add_option("--batch-fraction", rec_args.batch_fraction,
                    "Fraction of remaining pixels per round");
    sub->add_option("--gt", rec_args.gt, "Ground truth for a PSNR report");
    sub->add_option("--csv", rec_args.csv, "Append the PSNR to this metrics CSV");
    sub->add_option("--label", rec_args.label, "CSV row label")->capture_default_str();
  }
  rec_tnocs->add_option("--reference-prev", rec_args.reference_prev, "Previous reference")
      ->required();
  rec_tnocs->add_option("--distorted-prev", rec_args.distorted_prev, "Previous distorted")
      ->required();
  rec_tnocs->add_option("--mask-prev", rec_args.mask_prev,
                        "Previous validity mask (original, before reconstruction)")
      ->required();

  hsvtk::cli::EncodeArgs enc_args;
  CLI::App* enc = app.add_subcommand("encode", "Encode a camera directory to a bitstream");
  enc->add_option("--qp", enc_args.qp, "Quantization parameter [0,51]")->required();
  enc->add_option("--in", enc_args.in_dir, "Camera directory (frame*/ch*.png)")->required();
  enc->add_option("--out", enc_args.out_file, "Output bitstream file")->required();
  enc->add_option("--block-size", enc_args.block_size, "Transform block size")
      ->capture_default_str();

  hsvtk::cli::DecodeArgs dec_args;
  CLI::App* dec = app.add_subcommand("decode", "Decode a bitstream to frame directories");
  dec->add_option("--in", dec_args.in_file, "Input bitstream file")->required();
  dec->add_option("--out", dec_args.out_dir, "Output camera directory")->required();

  CLI::App* eval = app.add_subcommand("eval", "Quality and rate-distortion evaluation");
  eval->require_subcommand(1);
  hsvtk::cli::EvalPsnrArgs psnr_args;
  CLI::App* eval_psnr = eval->add_subcommand("psnr", "PSNR between images or cubes");
  eval_psnr->add_option("--a", psnr_args.a, "First image or frame directory")->required();
  eval_psnr->add_option("--b", psnr_args.b, "Second image or frame directory")->required();
  eval_psnr->add_option("--peak", psnr_args.peak, "Peak signal value")->capture_default_str();
  eval_psnr->add_option("--csv", psnr_args.csv, "Append to this metrics CSV");
  eval_psnr->add_option("--label", psnr_args.label, "CSV row label")->capture_default_str();
  eval_psnr->add_option("--rate-bits", psnr_args.rate_bits, "Rate to record with the row");

  hsvtk::cli::EvalBdArgs bd_args;
  CLI::App* eval_bd = eval->add_subcommand("bd", "Bjontegaard deltas between two RD curves");
  eval_bd->add_option("--anchor", bd_args.anchor_csv, "Anchor curve CSV")->required();
  eval_bd->add_option("--test", bd_args.test_csv, "Test curve CSV")->required();
  eval_bd->add_option("--svg", bd_args.svg, "Write an SVG plot of both curves");

  CLI11_PARSE(app, argc, argv);

  hsvtk::parallel::set_max_threads(threads);
  rec_args.temporal = rec_tnocs->parsed();

  try {
    if (synth->parsed()) return hsvtk::cli::run_synth(synth_args);
    if (rgb->parsed()) return hsvtk::cli::run_rgb(rgb_args);
    if (filters->parsed()) return hsvtk::cli::run_filters(filters_args);
    if (texture->parsed()) return hsvtk::cli::run_extract_texture(texture_args);
    if (warp->parsed()) return hsvtk::cli::run_warp(warp_args);
    if (rec->parsed()) return hsvtk::cli::run_reconstruct(rec_args);
    if (enc->parsed()) return hsvtk::cli::run_encode(enc_args);
    if (dec->parsed()) return hsvtk::cli::run_decode(dec_args);
    if (eval->parsed()) {
      if (eval_psnr->parsed()) return hsvtk::cli::run_eval_psnr(psnr_args);
      if (eval_bd->parsed()) return hsvtk::cli::run_eval_bd(bd_args);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand selected\n";
  return 1;
}
