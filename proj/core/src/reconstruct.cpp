// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#include "hsvtk/reconstruct.hpp"

#include <algorithm>
#include <cmath>

#include "hsvtk/parallel.hpp"

namespace hsvtk::reconstruct {

void MatchConfig::validate() const {
  detail::require(block_radius >= 1, "MatchConfig: block_radius must be >= 1");
  detail::require(search_radius >= 1, "MatchConfig: search_radius must be >= 1");
  detail::require(best_matches >= 2, "MatchConfig: best_matches must be >= 2");
  detail::require(batch_fraction > 0.0 && batch_fraction <= 1.0,
                  "MatchConfig: batch_fraction must be in (0,1]");
}

MatchConfig MatchConfig::from_config(const Config& config) {
  MatchConfig cfg;
  cfg.block_radius = config.get_int("block_radius", cfg.block_radius);
  cfg.search_radius = config.get_int("search_radius", cfg.search_radius);
  cfg.best_matches = config.get_int("best_matches", cfg.best_matches);
  cfg.batch_fraction = config.get_double("batch_fraction", cfg.batch_fraction);
  cfg.validate();
  return cfg;
}

namespace {

struct Offset {
  int dx;
  int dy;
};

// In-bounds block offsets around x; the full square when x is interior.
std::vector<Offset> block_offsets(const Image& image, Coord x, int radius) {
  std::vector<Offset> offsets;
  offsets.reserve(static_cast<std::size_t>(2 * radius + 1) * (2 * radius + 1));
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      if (image.in_bounds(x.x + dx, x.y + dy)) offsets.push_back({dx, dy});
    }
  }
  return offsets;
}

bool full_block_inside(const Image& image, Coord c, int radius) {
  return c.x - radius >= 0 && c.x + radius < image.width() && c.y - radius >= 0 &&
         c.y + radius < image.height();
}

double masked_distance(const Image& ref_a, Coord a, const Image& ref_b, Coord b,
                       const std::vector<Offset>& offsets) {
  double sum = 0.0;
  for (const Offset& o : offsets) {
    const double d = ref_a(a.x + o.dx, a.y + o.dy) - ref_b(b.x + o.dx, b.y + o.dy);
    sum += d * d;
  }
  return std::sqrt(sum);
}

// Optional per-candidate context for the reconstruction driver: previous
// frame eligibility and spatial/temporal duplicate suppression.
struct TemporalFilter {
  const Image* distorted_t = nullptr;
  const Image* distorted_prev = nullptr;
  const Mask* missing_t_original = nullptr;
  const Mask* missing_prev_original = nullptr;
};

std::vector<Match> scan_matches(const Image& ref_t, const Image* ref_prev, Coord x,
                                const MatchConfig& cfg, FrameScope scope,
                                const TemporalFilter* filter) {
  const bool temporal = scope == FrameScope::current_and_previous;
  if (temporal) {
    detail::require(ref_prev != nullptr,
                    "best_matches: previous frame requested but not provided");
    detail::require(ref_prev->same_size(ref_t),
                    "best_matches: frame dimensions disagree");
  }
  detail::require(ref_t.in_bounds(x.x, x.y), "best_matches: pixel outside the image");

  const std::vector<Offset> offsets = block_offsets(ref_t, x, cfg.block_radius);

  auto duplicate_of_spatial = [&](Coord y) {
    // A previous-frame candidate adds nothing when the same coordinate in the
    // current frame carries an identical reference block and an identical
    // known pair.
    if (filter == nullptr) return false;
    if ((*filter->missing_t_original)(y.x, y.y) || (*filter->missing_prev_original)(y.x, y.y)) {
      return false;
    }
    if ((*filter->distorted_t)(y.x, y.y) != (*filter->distorted_prev)(y.x, y.y)) return false;
    for (const Offset& o : offsets) {
      if (ref_t(y.x + o.dx, y.y + o.dy) != (*ref_prev)(y.x + o.dx, y.y + o.dy)) return false;
    }
    return true;
  };

  std::vector<Match> candidates;
  const int r = cfg.search_radius;
  const int x0 = std::max(0, x.x - r);
  const int x1 = std::min(ref_t.width() - 1, x.x + r);
  const int y0 = std::max(0, x.y - r);
  const int y1 = std::min(ref_t.height() - 1, x.y + r);
  for (int cy = y0; cy <= y1; ++cy) {
    for (int cx = x0; cx <= x1; ++cx) {
      const Coord c{cx, cy};
      if (!full_block_inside(ref_t, c, cfg.block_radius)) continue;
      if (!(cx == x.x && cy == x.y)) {
        candidates.push_back({c, 0, masked_distance(ref_t, x, ref_t, c, offsets)});
      }
      if (temporal) {
        if (filter != nullptr && (*filter->missing_prev_original)(cx, cy)) continue;
        if (duplicate_of_spatial(c)) continue;
        candidates.push_back({c, 1, masked_distance(ref_t, x, *ref_prev, c, offsets)});
      }
    }
  }

  std::sort(candidates.begin(), candidates.end(), [](const Match& a, const Match& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.t_d != b.t_d) return a.t_d < b.t_d;
    if (a.pos.y != b.pos.y) return a.pos.y < b.pos.y;
    return a.pos.x < b.pos.x;
  });

  std::vector<Match> out;
  out.reserve(static_cast<std::size_t>(cfg.best_matches));
  out.push_back({x, 0, 0.0});  // a block has distance 0 with itself
  for (const Match& m : candidates) {
    if (static_cast<int>(out.size()) >= cfg.best_matches) break;
    out.push_back(m);
  }
  return out;
}

}  // namespace

double block_distance(const Image& ref, Coord a, Coord b, int block_radius, int t_d,
                      const Image* ref_prev) {
  detail::require(block_radius >= 1, "block_distance: block_radius must be >= 1");
  detail::require(t_d == 0 || t_d == 1, "block_distance: t_d must be 0 or 1");
  const Image* other = &ref;
  if (t_d == 1) {
    detail::require(ref_prev != nullptr, "block_distance: t_d = 1 requires the previous frame");
    other = ref_prev;
  }
  detail::require(full_block_inside(ref, a, block_radius) &&
                      full_block_inside(*other, b, block_radius),
                  "block_distance: block outside image bounds");
  double sum = 0.0;
  for (int dy = -block_radius; dy <= block_radius; ++dy) {
    for (int dx = -block_radius; dx <= block_radius; ++dx) {
      const double d = ref(a.x + dx, a.y + dy) - (*other)(b.x + dx, b.y + dy);
      sum += d * d;
    }
  }
  return std::sqrt(sum);
}

std::vector<Match> best_matches(const Image& ref_t, const Image* ref_prev, Coord x,
                                const MatchConfig& cfg, FrameScope scope) {
  cfg.validate();
  return scan_matches(ref_t, ref_prev, x, cfg, scope, nullptr);
}

FitResult fit_model(std::span<const double> ref, std::span<const double> dist,
                    std::span<const std::uint8_t> known) {
  detail::require(ref.size() == dist.size() && ref.size() == known.size(),
                  "fit_model: vector lengths disagree");
  double n = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    if (!known[i]) continue;
    n += 1.0;
    sx += ref[i];
    sy += dist[i];
    sxx += ref[i] * ref[i];
    sxy += ref[i] * dist[i];
  }
  if (n < 2.0) return {FitStatus::insufficient_data, {}};
  const double denom = n * sxx - sx * sx;
  if (!(denom > 1e-12 * std::max(1.0, n * sxx))) return {FitStatus::degenerate, {}};
  PixelModel model;
  model.alpha = (n * sxy - sx * sy) / denom;
  model.beta = (sy - model.alpha * sx) / n;
  return {FitStatus::ok, model};
}

namespace {

struct PixelTask {
  Coord pos;
  std::vector<Match> matches;
};

Image run_reconstruction(const Image& reference_t, const Image* reference_prev,
                         const Image& distorted_t, const Image* distorted_prev,
                         const Mask& missing_t, const Mask* missing_prev_original,
                         const MatchConfig& cfg) {
  cfg.validate();
  detail::require(missing_t.matches(reference_t) && reference_t.same_size(distorted_t),
                  "reconstruct: image and mask dimensions disagree");
  const bool temporal = reference_prev != nullptr;
  if (temporal) {
    detail::require(reference_prev->same_size(reference_t) &&
                        distorted_prev->same_size(reference_t) &&
                        missing_prev_original->matches(reference_t),
                    "reconstruct: previous-frame dimensions disagree");
  }

  Image result = distorted_t;
  Mask missing_now = missing_t;

  std::vector<PixelTask> tasks;
  for (int y = 0; y < reference_t.height(); ++y) {
    for (int x = 0; x < reference_t.width(); ++x) {
      if (missing_t(x, y)) tasks.push_back({{x, y}, {}});
    }
  }
  if (tasks.empty()) return result;

  // Fallback gain for pixels whose match vector holds no known entry:
  // least-squares fit of distorted ~ gain * reference over the valid pixels.
  double gain_num = 0.0, gain_den = 0.0;
  for (int y = 0; y < reference_t.height(); ++y) {
    for (int x = 0; x < reference_t.width(); ++x) {
      if (missing_t(x, y)) continue;
      gain_num += reference_t(x, y) * distorted_t(x, y);
      gain_den += reference_t(x, y) * reference_t(x, y);
    }
  }
  const double global_gain = gain_den > 0.0 ? gain_num / gain_den : 1.0;

  TemporalFilter filter;
  filter.distorted_t = &distorted_t;
  filter.distorted_prev = distorted_prev;
  filter.missing_t_original = &missing_t;
  filter.missing_prev_original = missing_prev_original;

  parallel::parallel_for(tasks.size(), [&](std::size_t i) {
    tasks[i].matches = scan_matches(reference_t, reference_prev, tasks[i].pos, cfg,
                                    temporal ? FrameScope::current_and_previous
                                             : FrameScope::current_only,
                                    temporal ? &filter : nullptr);
  });

  std::vector<std::size_t> remaining(tasks.size());
  for (std::size_t i = 0; i < tasks.size(); ++i) remaining[i] = i;

  struct Ranked {
    int known_count;
    Coord pos;
    std::size_t task;
  };
  std::vector<Ranked> ranked;
  std::vector<double> values(tasks.size(), 0.0);

  while (!remaining.empty()) {
    ranked.clear();
    ranked.reserve(remaining.size());
    for (std::size_t idx : remaining) {
      const PixelTask& task = tasks[idx];
      int count = 0;
      for (std::size_t m = 1; m < task.matches.size(); ++m) {
        const Match& match = task.matches[m];
        if (match.t_d == 1 || !missing_now(match.pos.x, match.pos.y)) ++count;
      }
      ranked.push_back({count, task.pos, idx});
    }
    const std::size_t batch = std::max<std::size_t>(
        1, static_cast<std::size_t>(
               std::ceil(cfg.batch_fraction * static_cast<double>(remaining.size()))));
    const std::size_t take = std::min(batch, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take),
                      ranked.end(), [](const Ranked& a, const Ranked& b) {
                        if (a.known_count != b.known_count) return a.known_count > b.known_count;
                        if (a.pos.y != b.pos.y) return a.pos.y < b.pos.y;
                        return a.pos.x < b.pos.x;
                      });

    parallel::parallel_for(take, [&](std::size_t s) {
      const PixelTask& task = tasks[ranked[s].task];
      const std::size_t len = task.matches.size();
      std::vector<double> r(len), d(len);
      std::vector<std::uint8_t> known(len);
      for (std::size_t m = 0; m < len; ++m) {
        const Match& match = task.matches[m];
        if (match.t_d == 1) {
          r[m] = (*reference_prev)(match.pos.x, match.pos.y);
          d[m] = (*distorted_prev)(match.pos.x, match.pos.y);
          known[m] = 1;
        } else {
          r[m] = reference_t(match.pos.x, match.pos.y);
          d[m] = result(match.pos.x, match.pos.y);
          known[m] = missing_now(match.pos.x, match.pos.y) ? 0 : 1;
        }
      }
      known[0] = 0;  // the pixel to reconstruct is the first entry

      const FitResult fit = fit_model(r, d, known);
      double value;
      if (fit.status == FitStatus::ok) {
        value = fit.model.alpha * r[0] + fit.model.beta;
      } else {
        double sum = 0.0;
        int count = 0;
        for (std::size_t m = 1; m < len; ++m) {
          if (known[m]) {
            sum += d[m];
            ++count;
          }
        }
        if (fit.status == FitStatus::degenerate || count >= 1) {
          value = sum / count;  // degenerate always has >= 2 known entries
        } else {
          value = global_gain * r[0];
        }
      }
      values[ranked[s].task] = std::clamp(value, 0.0, 1.0);
    });

    // Commit at the round barrier so every pixel of the round saw the same
    // state.
    std::vector<std::size_t> next;
    next.reserve(remaining.size() - take);
    std::vector<std::uint8_t> selected(tasks.size(), 0);
    for (std::size_t s = 0; s < take; ++s) {
      const std::size_t idx = ranked[s].task;
      selected[idx] = 1;
      result(tasks[idx].pos.x, tasks[idx].pos.y) = values[idx];
      missing_now.set(tasks[idx].pos.x, tasks[idx].pos.y, false);
    }
    for (std::size_t idx : remaining) {
      if (!selected[idx]) next.push_back(idx);
    }
    remaining.swap(next);
  }

  return result;
}

}  // namespace

Image nocs(const Image& reference, const Image& distorted, const Mask& missing,
           const MatchConfig& cfg) {
  return run_reconstruction(reference, nullptr, distorted, nullptr, missing, nullptr, cfg);
}

Image tnocs(const Image& reference_t, const Image& reference_prev, const Image& distorted_t,
            const Image& distorted_prev, const Mask& missing_t,
            const Mask& missing_prev_original, const MatchConfig& cfg) {
  return run_reconstruction(reference_t, &reference_prev, distorted_t, &distorted_prev,
                            missing_t, &missing_prev_original, cfg);
}

}  // namespace hsvtk::reconstruct
