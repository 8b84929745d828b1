// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#include "hsvtk/geometry.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace hsvtk::geometry {

Homography::Homography() : m_{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}} {}

Homography::Homography(const std::array<std::array<double, 3>, 3>& m) : m_(m) {
  detail::require(m_[2][2] != 0.0, "Homography: h33 must be nonzero");
  if (m_[2][2] != 1.0) {
    const double s = m_[2][2];
    for (auto& row : m_) {
      for (double& v : row) v /= s;
    }
  }
  detail::require(std::abs(determinant()) > 1e-12, "Homography: matrix is singular");
}

Point Homography::apply(Point p) const {
  const double w = m_[2][0] * p.x + m_[2][1] * p.y + m_[2][2];
  detail::require(w != 0.0, "Homography::apply: point maps to infinity");
  return {(m_[0][0] * p.x + m_[0][1] * p.y + m_[0][2]) / w,
          (m_[1][0] * p.x + m_[1][1] * p.y + m_[1][2]) / w};
}

double Homography::determinant() const {
  return m_[0][0] * (m_[1][1] * m_[2][2] - m_[1][2] * m_[2][1]) -
         m_[0][1] * (m_[1][0] * m_[2][2] - m_[1][2] * m_[2][0]) +
         m_[0][2] * (m_[1][0] * m_[2][1] - m_[1][1] * m_[2][0]);
}

namespace {

double triangle_area(Point a, Point b, Point c) {
  return 0.5 * std::abs((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

void require_non_degenerate(const Quad& quad) {
  const auto& p = quad.points;
  for (int skip = 0; skip < 4; ++skip) {
    Point tri[3];
    int n = 0;
    for (int i = 0; i < 4; ++i) {
      if (i != skip) tri[n++] = p[static_cast<std::size_t>(i)];
    }
    if (triangle_area(tri[0], tri[1], tri[2]) < 1e-9) {
      throw SingularConfiguration("estimate_homography: three quad points are collinear");
    }
  }
}

}  // namespace

Homography estimate_homography(const Quad& quad, int width, int height) {
  detail::require(width >= 1 && height >= 1, "estimate_homography: W,H must be >= 1");
  require_non_degenerate(quad);

  const double w = static_cast<double>(width);
  const double h = static_cast<double>(height);
  const Point dst[4] = {{0.0, 0.0}, {0.0, h}, {w, h}, {w, 0.0}};

  // Direct linear transform on the four correspondences H * dst = src with
  // h33 pinned to 1: two equations per pair in the eight unknowns h11..h32.
  Eigen::Matrix<double, 8, 8> a = Eigen::Matrix<double, 8, 8>::Zero();
  Eigen::Matrix<double, 8, 1> b;
  for (int i = 0; i < 4; ++i) {
    const Point d = dst[i];
    const Point s = quad.points[static_cast<std::size_t>(i)];
    a(2 * i, 0) = d.x;
    a(2 * i, 1) = d.y;
    a(2 * i, 2) = 1.0;
    a(2 * i, 6) = -s.x * d.x;
    a(2 * i, 7) = -s.x * d.y;
    b(2 * i) = s.x;
    a(2 * i + 1, 3) = d.x;
    a(2 * i + 1, 4) = d.y;
    a(2 * i + 1, 5) = 1.0;
    a(2 * i + 1, 6) = -s.y * d.x;
    a(2 * i + 1, 7) = -s.y * d.y;
    b(2 * i + 1) = s.y;
  }

  Eigen::FullPivLU<Eigen::Matrix<double, 8, 8>> lu(a);
  if (!lu.isInvertible()) {
    throw SingularConfiguration("estimate_homography: correspondence system is singular");
  }
  const Eigen::Matrix<double, 8, 1> hv = lu.solve(b);

  Homography result(
      {{{hv(0), hv(1), hv(2)}, {hv(3), hv(4), hv(5)}, {hv(6), hv(7), 1.0}}});

  for (int i = 0; i < 4; ++i) {
    const Point mapped = result.apply(dst[i]);
    const Point s = quad.points[static_cast<std::size_t>(i)];
    if (std::hypot(mapped.x - s.x, mapped.y - s.y) > 1e-6) {
      throw SingularConfiguration("estimate_homography: corner residual exceeds 1e-6 px");
    }
  }
  return result;
}

double sample_bilinear(const Image& image, double x, double y) {
  const double cx = std::clamp(x, 0.0, static_cast<double>(image.width() - 1));
  const double cy = std::clamp(y, 0.0, static_cast<double>(image.height() - 1));
  const int x0 = std::min(static_cast<int>(cx), image.width() - 1);
  const int y0 = std::min(static_cast<int>(cy), image.height() - 1);
  const int x1 = std::min(x0 + 1, image.width() - 1);
  const int y1 = std::min(y0 + 1, image.height() - 1);
  const double fx = cx - x0;
  const double fy = cy - y0;
  const double top = (1.0 - fx) * image(x0, y0) + fx * image(x1, y0);
  const double bottom = (1.0 - fx) * image(x0, y1) + fx * image(x1, y1);
  return (1.0 - fy) * top + fy * bottom;
}

HyperCube extract_texture(const HyperCube& cube, const Quad& quad, int width, int height) {
  for (const Point& p : quad.points) {
    detail::require(p.x >= 0.0 && p.x <= cube.width() && p.y >= 0.0 && p.y <= cube.height(),
                    "extract_texture: quad point outside the source image");
  }
  const Homography h = estimate_homography(quad, width, height);

  HyperCube out(width, height, cube.grid());
  for (int ch = 0; ch < cube.channel_count(); ++ch) {
    const Image& src = cube.channel(ch);
    Image& dst = out.channel(ch);
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        const Point s = h.apply({static_cast<double>(x), static_cast<double>(y)});
        dst(x, y) = sample_bilinear(src, s.x, s.y);
      }
    }
  }
  return out;
}

DisparityMap depth_to_disparity(const DepthMap& depth, const ArrayGeometry& geometry,
                                int cam_src, int cam_dst) {
  geometry.validate();
  detail::require(cam_src >= 0 && cam_src < geometry.camera_count() && cam_dst >= 0 &&
                      cam_dst < geometry.camera_count(),
                  "depth_to_disparity: camera index out of range");
  detail::require(cam_src != cam_dst, "depth_to_disparity: cameras must be distinct");

  const double dcol = geometry.camera_col(cam_dst) - geometry.camera_col(cam_src);
  const double drow = geometry.camera_row(cam_dst) - geometry.camera_row(cam_src);
  const double pitch_mm = geometry.intrinsics.pixel_pitch_mm();
  // Per-axis numerator of d = b*f/(p*s); depth is in meters, the rest in mm.
  const double kx = -dcol * geometry.baseline_mm * geometry.intrinsics.focal_mm / pitch_mm;
  const double ky = -drow * geometry.baseline_mm * geometry.intrinsics.focal_mm / pitch_mm;

  DisparityMap out;
  out.dx = Image(depth.width(), depth.height());
  out.dy = Image(depth.width(), depth.height());
  const std::vector<double>& p = depth.raster().data();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double depth_mm = p[i] * 1000.0;
    out.dx.data()[i] = kx / depth_mm;
    out.dy.data()[i] = ky / depth_mm;
  }
  return out;
}

std::pair<Image, Mask> warp_view(const Image& channel, const DepthMap& depth_src,
                                 const ArrayGeometry& geometry, int cam_src, int cam_dst) {
  detail::require(channel.width() == depth_src.width() && channel.height() == depth_src.height(),
                  "warp_view: channel and depth dimensions disagree");

  Image warped(channel.width(), channel.height(), 0.0);
  Mask valid(channel.width(), channel.height(), false);

  if (cam_src == cam_dst) {
    // Zero baseline: identity warp.
    warped = channel;
    valid = Mask(channel.width(), channel.height(), true);
    return {std::move(warped), std::move(valid)};
  }

  const DisparityMap disparity = depth_to_disparity(depth_src, geometry, cam_src, cam_dst);
  Image zbuffer(channel.width(), channel.height(), 0.0);

  // Raster-order traversal plus a strictly-smaller depth test makes ties
  // resolve to the lexicographically smaller (y,x) source pixel.
  for (int y = 0; y < channel.height(); ++y) {
    for (int x = 0; x < channel.width(); ++x) {
      const long lx = std::lround(x + disparity.dx(x, y));
      const long ly = std::lround(y + disparity.dy(x, y));
      if (lx < 0 || lx >= channel.width() || ly < 0 || ly >= channel.height()) continue;
      const int dx = static_cast<int>(lx);
      const int dy = static_cast<int>(ly);
      const double depth = depth_src(x, y);
      if (!valid(dx, dy) || depth < zbuffer(dx, dy)) {
        warped(dx, dy) = channel(x, y);
        zbuffer(dx, dy) = depth;
        valid.set(dx, dy, true);
      }
    }
  }
  return {std::move(warped), std::move(valid)};
}

}  // namespace hsvtk::geometry
