// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <utility>

#include "hsvtk/types.hpp"

namespace hsvtk::geometry {

/// Raised when a point configuration admits no invertible homography.
class SingularConfiguration : public Error {
 public:
  using Error::Error;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// 3x3 projective transform normalized so h33 == 1.
class Homography {
 public:
  Homography();  // identity
  explicit Homography(const std::array<std::array<double, 3>, 3>& m);

  double operator()(int row, int col) const { return m_[row][col]; }
  double& operator()(int row, int col) { return m_[row][col]; }

  /// Applies the transform to a point (perspective divide included).
  Point apply(Point p) const;

  double determinant() const;

 private:
  std::array<std::array<double, 3>, 3> m_;
};

/// Four source-image points ordered top-left, bottom-left, bottom-right,
/// top-right; they correspond to destination corners
/// (0,0), (0,H), (W,H), (W,0).
struct Quad {
  std::array<Point, 4> points;
};

/// Least-squares homography mapping the destination corners
/// (0,0),(0,H),(W,H),(W,0) onto the quad points, scaled so h33 = 1. With four
/// exact correspondences the residual is zero. Throws SingularConfiguration
/// for degenerate quads (three collinear points or a rank-deficient system).
Homography estimate_homography(const Quad& quad, int width, int height);

/// Warps the quad region of `cube` to a width x height cube; every
/// destination pixel is sampled through the homography with bilinear
/// interpolation, all channels with the identical transform. The quad must
/// lie inside the source bounds.
HyperCube extract_texture(const HyperCube& cube, const Quad& quad, int width, int height);

/// Per-axis disparity between two cameras of the array from physical depth:
/// each axis uses d = -(offset * baseline * focal) / (depth * pixel_pitch),
/// with `offset` the camera grid displacement along that axis. Adding the
/// disparity to source pixel coordinates yields the location of the same
/// scene point in the destination view. Depth is in meters, baseline/focal/
/// pitch in millimeters.
DisparityMap depth_to_disparity(const DepthMap& depth, const ArrayGeometry& geometry,
                                int cam_src, int cam_dst);

/// Forward-warps one channel from cam_src to cam_dst: every source pixel
/// lands at round(source + disparity); collisions keep the smaller depth, and
/// equal depths keep the lexicographically smaller (y,x) source. The mask
/// marks destination pixels some source pixel reached.
std::pair<Image, Mask> warp_view(const Image& channel, const DepthMap& depth_src,
                                 const ArrayGeometry& geometry, int cam_src, int cam_dst);

/// Bilinear sample with edge clamping (used by texture extraction and tests).
double sample_bilinear(const Image& image, double x, double y);

}  // namespace hsvtk::geometry
