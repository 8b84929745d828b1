// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>
#include <utility>

#include "hsvtk/image.hpp"

namespace hsvtk::codec {

enum class MotionDirection { forward, backward };

/// Dense per-pixel displacement field. The prediction for pixel (x,y) samples
/// the reference frame at (x + dx, y + dy).
struct MotionField {
  Image dx;
  Image dy;
  MotionDirection direction = MotionDirection::forward;

  int width() const { return dx.width(); }
  int height() const { return dx.height(); }
};

/// Three decoded anchor channels of one frame.
struct AnchorFrame {
  const Image* c0 = nullptr;
  const Image* c1 = nullptr;
  const Image* c2 = nullptr;
};

/// Pluggable motion estimator. `forward` satisfies
/// cur[p] ~ prev[p + forward[p]], `backward` satisfies
/// cur[p] ~ next[p + backward[p]].
class MotionEstimator {
 public:
  virtual ~MotionEstimator() = default;
  virtual std::string id() const = 0;
  virtual std::pair<MotionField, MotionField> estimate(const AnchorFrame& prev,
                                                       const AnchorFrame& cur,
                                                       const AnchorFrame& next) const = 0;
};

/// Default estimator: per 16x16 block, diamond search (large/small diamond
/// patterns) with integer radius 24 and an SAD criterion on the mean of the
/// three anchor channels. Ties prefer the smaller |v|, then lexicographic
/// (dy, dx).
class DiamondSearchEstimator : public MotionEstimator {
 public:
  DiamondSearchEstimator(int block_size = 16, int search_radius = 24);

  std::string id() const override { return "diamond"; }
  std::pair<MotionField, MotionField> estimate(const AnchorFrame& prev, const AnchorFrame& cur,
                                               const AnchorFrame& next) const override;

 private:
  int block_size_;
  int search_radius_;
};

const MotionEstimator& default_motion_estimator();

/// Mean of the three anchor channels, the luma plane motion search runs on.
Image anchor_luma(const AnchorFrame& frame);

/// Samples `reference` at (x + dx, y + dy) with bilinear interpolation and
/// edge-clamped extension. The mask is valid where the sample coordinate lies
/// inside [0, W-1] x [0, H-1].
std::pair<Image, Mask> motion_compensate(const Image& reference, const MotionField& field);

/// Averages the two predictions where both or neither mask is valid and takes
/// the single valid prediction otherwise.
Image merge_predictions(const Image& p_fw, const Image& p_bw, const Mask& m_fw,
                        const Mask& m_bw);

/// Elementwise original - prediction.
Image compute_residual(const Image& original, const Image& prediction);

}  // namespace hsvtk::codec
