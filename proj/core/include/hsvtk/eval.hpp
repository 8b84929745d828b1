// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hsvtk/types.hpp"

namespace hsvtk::eval {

/// 10*log10(peak^2 / MSE) with the MSE pooled over every sample. Identical
/// inputs report +infinity (a documented sentinel, excluded from curve fits).
double psnr(const Image& a, const Image& b, double peak = 1.0);
double psnr(const HyperCube& a, const HyperCube& b, double peak = 1.0);

struct RDPoint {
  double rate_bits = 0.0;
  double psnr_db = 0.0;
};

struct BdResult {
  double bd_rate_percent = 0.0;
  double bd_psnr_db = 0.0;
};

/// Classic Bjontegaard deltas between two rate-distortion curves of at least
/// four points each: cubic fits of psnr over log10(rate) (and of log10(rate)
/// over psnr) integrated across the overlapping interval. Curves must be
/// strictly monotone (higher rate, higher psnr) with finite psnr values.
BdResult bd_metrics(const std::vector<RDPoint>& curve_a, const std::vector<RDPoint>& curve_b);

struct BdSummary {
  double mean_bd_rate_percent = 0.0;
  double mean_bd_psnr_db = 0.0;
  double weighted_bd_rate_percent = 0.0;
  double weighted_bd_psnr_db = 0.0;
};

/// Per-scene mean and weight-averaged deltas (weights are typically the
/// anchor curves' total rates, so large sequences dominate the weighted
/// figure).
BdSummary summarize_bd(const std::vector<BdResult>& results,
                       const std::vector<double>& weights);

struct NamedCurve {
  std::string label;
  std::vector<RDPoint> points;
};

/// Static SVG of rate-distortion curves: polylines over log10(rate), labeled
/// axes, no interactivity.
void write_rd_curve_svg(const std::vector<NamedCurve>& curves,
                        const std::filesystem::path& path);

}  // namespace hsvtk::eval
