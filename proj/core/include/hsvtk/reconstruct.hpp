// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hsvtk/config.hpp"
#include "hsvtk/image.hpp"

namespace hsvtk::reconstruct {

/// Block-matching and scheduling parameters. Blocks are (2r+1)^2 pixels.
struct MatchConfig {
  int block_radius = 3;
  int search_radius = 15;
  int best_matches = 16;       // B
  double batch_fraction = 0.1; // share of remaining pixels per round

  void validate() const;

  /// Reads block_radius / search_radius / best_matches / batch_fraction keys;
  /// absent keys keep their defaults.
  static MatchConfig from_config(const Config& config);
};

struct Coord {
  int x = 0;
  int y = 0;
};

/// Per-pixel linear regression parameters.
struct PixelModel {
  double alpha = 0.0;
  double beta = 0.0;
};

enum class FitStatus { ok, insufficient_data, degenerate };

struct FitResult {
  FitStatus status = FitStatus::ok;
  PixelModel model;
};

/// Euclidean norm of the elementwise difference between the block around `a`
/// in the current reference frame and the block around `b` in the current
/// (t_d = 0) or previous (t_d = 1) reference frame. Both blocks must lie
/// fully inside their images.
double block_distance(const Image& ref, Coord a, Coord b, int block_radius, int t_d = 0,
                      const Image* ref_prev = nullptr);

struct Match {
  Coord pos;
  int t_d = 0;
  double distance = 0.0;
};

enum class FrameScope { current_only, current_and_previous };

/// The B smallest-distance candidates around `x` within the search window,
/// searched in the current frame and, when enabled, the previous frame
/// (t_d in {0,1}). The self match (x, t_d = 0) is always first; remaining
/// candidates are ordered by (distance, t_d, y, x). Candidate centers other
/// than x itself keep full blocks only; the block of x is clamped to the
/// image and distances use its in-bounds offsets.
std::vector<Match> best_matches(const Image& ref_t, const Image* ref_prev, Coord x,
                                const MatchConfig& cfg, FrameScope scope);

/// Ordinary least squares of dist ~ alpha * ref + beta over the known pairs.
/// Fewer than two known pairs reports insufficient_data; zero variance in the
/// known reference entries reports degenerate.
FitResult fit_model(std::span<const double> ref, std::span<const double> dist,
                    std::span<const std::uint8_t> known);

/// Non-local cross-spectral reconstruction of the pixels flagged in
/// `missing` (true = missing). The reference image must be fully available.
/// Each round reconstructs ceil(batch_fraction x remaining) pixels (at least
/// one), preferring those whose match vector currently holds the most known
/// distorted entries; reconstructed values become available to later rounds.
/// Output values are clipped to [0,1]; valid pixels are returned unchanged.
Image nocs(const Image& reference, const Image& distorted, const Mask& missing,
           const MatchConfig& cfg);

/// Temporal variant: block matching additionally searches the previous
/// reference frame. Previous-frame candidates are used only where the
/// previous distorted frame was originally valid (reconstructed pixels of the
/// previous frame never contribute), and a previous-frame candidate that
/// duplicates the same-coordinate current-frame candidate (identical
/// reference block and identical known pair) is dropped as carrying no new
/// information.
Image tnocs(const Image& reference_t, const Image& reference_prev, const Image& distorted_t,
            const Image& distorted_prev, const Mask& missing_t,
            const Mask& missing_prev_original, const MatchConfig& cfg);

}  // namespace hsvtk::reconstruct
