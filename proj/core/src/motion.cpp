// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#include "hsvtk/motion.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hsvtk/parallel.hpp"

namespace hsvtk::codec {

namespace {

double sample_clamped(const Image& image, int x, int y) {
  return image(std::clamp(x, 0, image.width() - 1), std::clamp(y, 0, image.height() - 1));
}

double sample_bilinear_clamped(const Image& image, double x, double y) {
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

struct Vec {
  int x = 0;
  int y = 0;
};

// (cost, |v|^2, y, x) lexicographic ordering for tie-free minima.
struct Scored {
  double cost = 0.0;
  Vec v;

  bool better_than(const Scored& other) const {
    if (cost != other.cost) return cost < other.cost;
    const long la = static_cast<long>(v.x) * v.x + static_cast<long>(v.y) * v.y;
    const long lb = static_cast<long>(other.v.x) * other.v.x +
                    static_cast<long>(other.v.y) * other.v.y;
    if (la != lb) return la < lb;
    if (v.y != other.v.y) return v.y < other.v.y;
    return v.x < other.v.x;
  }
};

}  // namespace

Image anchor_luma(const AnchorFrame& frame) {
  detail::require(frame.c0 && frame.c1 && frame.c2, "anchor_luma: missing channels");
  detail::require(frame.c0->same_size(*frame.c1) && frame.c0->same_size(*frame.c2),
                  "anchor_luma: channel dimensions disagree");
  Image out(frame.c0->width(), frame.c0->height());
  for (std::size_t i = 0; i < out.pixel_count(); ++i) {
    out.data()[i] =
        (frame.c0->data()[i] + frame.c1->data()[i] + frame.c2->data()[i]) / 3.0;
  }
  return out;
}

DiamondSearchEstimator::DiamondSearchEstimator(int block_size, int search_radius)
    : block_size_(block_size), search_radius_(search_radius) {
  detail::require(block_size >= 1 && search_radius >= 1,
                  "DiamondSearchEstimator: invalid parameters");
}

namespace {

MotionField diamond_search(const Image& reference, const Image& current, int block_size,
                           int radius, MotionDirection direction) {
  MotionField field;
  field.dx = Image(current.width(), current.height());
  field.dy = Image(current.width(), current.height());
  field.direction = direction;

  const int blocks_x = (current.width() + block_size - 1) / block_size;
  const int blocks_y = (current.height() + block_size - 1) / block_size;

  auto block_sad = [&](int bx, int by, Vec v) {
    const int x0 = bx * block_size;
    const int y0 = by * block_size;
    const int x1 = std::min(x0 + block_size, current.width());
    const int y1 = std::min(y0 + block_size, current.height());
    double sad = 0.0;
    for (int y = y0; y < y1; ++y) {
      for (int x = x0; x < x1; ++x) {
        sad += std::abs(current(x, y) - sample_clamped(reference, x + v.x, y + v.y));
      }
    }
    return sad;
  };

  parallel::parallel_for(static_cast<std::size_t>(blocks_x) * blocks_y, [&](std::size_t b) {
    const int bx = static_cast<int>(b) % blocks_x;
    const int by = static_cast<int>(b) / blocks_x;

    auto clamp_vec = [&](Vec v) {
      return Vec{std::clamp(v.x, -radius, radius), std::clamp(v.y, -radius, radius)};
    };
    auto score = [&](Vec v) { return Scored{block_sad(bx, by, v), v}; };

    static constexpr Vec kLarge[] = {{0, 0}, {2, 0},  {-2, 0}, {0, 2},  {0, -2},
                                     {1, 1}, {-1, 1}, {1, -1}, {-1, -1}};
    static constexpr Vec kSmall[] = {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};

    Scored center = score({0, 0});
    for (;;) {
      Scored best = center;
      for (const Vec& step : kLarge) {
        const Vec v = clamp_vec({center.v.x + step.x, center.v.y + step.y});
        if (v.x == center.v.x && v.y == center.v.y) continue;
        const Scored s = score(v);
        if (s.better_than(best)) best = s;
      }
      if (best.v.x == center.v.x && best.v.y == center.v.y) break;
      center = best;
    }
    Scored best = center;
    for (const Vec& step : kSmall) {
      const Vec v = clamp_vec({center.v.x + step.x, center.v.y + step.y});
      if (v.x == center.v.x && v.y == center.v.y) continue;
      const Scored s = score(v);
      if (s.better_than(best)) best = s;
    }

    const int x0 = bx * block_size;
    const int y0 = by * block_size;
    const int x1 = std::min(x0 + block_size, current.width());
    const int y1 = std::min(y0 + block_size, current.height());
    for (int y = y0; y < y1; ++y) {
      for (int x = x0; x < x1; ++x) {
        field.dx(x, y) = best.v.x;
        field.dy(x, y) = best.v.y;
      }
    }
  });
  return field;
}

}  // namespace

std::pair<MotionField, MotionField> DiamondSearchEstimator::estimate(
    const AnchorFrame& prev, const AnchorFrame& cur, const AnchorFrame& next) const {
  const Image luma_prev = anchor_luma(prev);
  const Image luma_cur = anchor_luma(cur);
  const Image luma_next = anchor_luma(next);
  detail::require(luma_prev.same_size(luma_cur) && luma_next.same_size(luma_cur),
                  "estimate_motion: frame dimensions disagree");
  MotionField fw = diamond_search(luma_prev, luma_cur, block_size_, search_radius_,
                                  MotionDirection::forward);
  MotionField bw = diamond_search(luma_next, luma_cur, block_size_, search_radius_,
                                  MotionDirection::backward);
  return {std::move(fw), std::move(bw)};
}

const MotionEstimator& default_motion_estimator() {
  static const DiamondSearchEstimator instance;
  return instance;
}

std::pair<Image, Mask> motion_compensate(const Image& reference, const MotionField& field) {
  detail::require(reference.same_size(field.dx) && reference.same_size(field.dy),
                  "motion_compensate: dimensions disagree");
  Image prediction(reference.width(), reference.height());
  Mask valid(reference.width(), reference.height(), false);
  for (int y = 0; y < reference.height(); ++y) {
    for (int x = 0; x < reference.width(); ++x) {
      const double sx = x + field.dx(x, y);
      const double sy = y + field.dy(x, y);
      prediction(x, y) = sample_bilinear_clamped(reference, sx, sy);
      valid.set(x, y, sx >= 0.0 && sx <= reference.width() - 1.0 && sy >= 0.0 &&
                          sy <= reference.height() - 1.0);
    }
  }
  return {std::move(prediction), std::move(valid)};
}

Image merge_predictions(const Image& p_fw, const Image& p_bw, const Mask& m_fw,
                        const Mask& m_bw) {
  detail::require(p_fw.same_size(p_bw) && m_fw.matches(p_fw) && m_bw.matches(p_bw),
                  "merge_predictions: dimensions disagree");
  Image out(p_fw.width(), p_fw.height());
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      const bool fw = m_fw(x, y);
      const bool bw = m_bw(x, y);
      if (fw == bw) {
        out(x, y) = 0.5 * (p_fw(x, y) + p_bw(x, y));
      } else if (fw) {
        out(x, y) = p_fw(x, y);
      } else {
        out(x, y) = p_bw(x, y);
      }
    }
  }
  return out;
}

Image compute_residual(const Image& original, const Image& prediction) {
  detail::require(original.same_size(prediction), "compute_residual: dimensions disagree");
  Image out(original.width(), original.height());
  for (std::size_t i = 0; i < out.pixel_count(); ++i) {
    out.data()[i] = original.data()[i] - prediction.data()[i];
  }
  return out;
}

}  // namespace hsvtk::codec
