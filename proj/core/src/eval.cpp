// Copyright (c) 2026 hsvtk contributors.
// SPDX-License-Identifier: Apache-2.0

#include "hsvtk/eval.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

namespace hsvtk::eval {

double psnr(const Image& a, const Image& b, double peak) {
  detail::require(a.same_size(b), "psnr: dimensions disagree");
  detail::require(peak > 0.0, "psnr: peak must be positive");
  detail::require(!a.empty(), "psnr: empty image");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.pixel_count(); ++i) {
    const double d = a.data()[i] - b.data()[i];
    sum += d * d;
  }
  const double mse = sum / static_cast<double>(a.pixel_count());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

double psnr(const HyperCube& a, const HyperCube& b, double peak) {
  detail::require(a.width() == b.width() && a.height() == b.height() &&
                      a.channel_count() == b.channel_count(),
                  "psnr: cube dimensions disagree");
  detail::require(peak > 0.0, "psnr: peak must be positive");
  double sum = 0.0;
  std::size_t count = 0;
  for (int ch = 0; ch < a.channel_count(); ++ch) {
    const auto& pa = a.channel(ch).data();
    const auto& pb = b.channel(ch).data();
    for (std::size_t i = 0; i < pa.size(); ++i) {
      const double d = pa[i] - pb[i];
      sum += d * d;
    }
    count += pa.size();
  }
  detail::require(count > 0, "psnr: empty cube");
  const double mse = sum / static_cast<double>(count);
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

namespace {

struct Curve {
  std::vector<double> log_rate;
  std::vector<double> psnr_db;
};

Curve prepare_curve(const std::vector<RDPoint>& points, const char* which) {
  detail::require(points.size() >= 4,
                  std::string("bd_metrics: ") + which + " needs at least four points");
  std::vector<RDPoint> sorted = points;
  std::sort(sorted.begin(), sorted.end(),
            [](const RDPoint& a, const RDPoint& b) { return a.rate_bits < b.rate_bits; });
  Curve curve;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    detail::require(sorted[i].rate_bits > 0.0,
                    std::string("bd_metrics: ") + which + " has a nonpositive rate");
    detail::require(std::isfinite(sorted[i].psnr_db),
                    std::string("bd_metrics: ") + which + " has a non-finite psnr");
    if (i > 0) {
      detail::require(sorted[i].rate_bits > sorted[i - 1].rate_bits &&
                          sorted[i].psnr_db > sorted[i - 1].psnr_db,
                      std::string("bd_metrics: ") + which +
                          " must be strictly monotone (rate up, psnr up)");
    }
    curve.log_rate.push_back(std::log10(sorted[i].rate_bits));
    curve.psnr_db.push_back(sorted[i].psnr_db);
  }
  return curve;
}

Eigen::Vector4d polyfit_cubic(const std::vector<double>& xs, const std::vector<double>& ys) {
  const auto n = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXd a(n, 4);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = xs[static_cast<std::size_t>(i)];
    a(i, 0) = 1.0;
    a(i, 1) = x;
    a(i, 2) = x * x;
    a(i, 3) = x * x * x;
    b(i) = ys[static_cast<std::size_t>(i)];
  }
  return a.colPivHouseholderQr().solve(b);
}

double poly_integral(const Eigen::Vector4d& c, double lo, double hi) {
  auto antiderivative = [&](double x) {
    return c(0) * x + c(1) * x * x / 2.0 + c(2) * x * x * x / 3.0 +
           c(3) * x * x * x * x / 4.0;
  };
  return antiderivative(hi) - antiderivative(lo);
}

// Average vertical distance between cubic fits of ys over xs, integrated on
// the overlapping x interval: mean of fit_b - fit_a.
double bd_delta(const std::vector<double>& xs_a, const std::vector<double>& ys_a,
                const std::vector<double>& xs_b, const std::vector<double>& ys_b) {
  const double lo = std::max(*std::min_element(xs_a.begin(), xs_a.end()),
                             *std::min_element(xs_b.begin(), xs_b.end()));
  const double hi = std::min(*std::max_element(xs_a.begin(), xs_a.end()),
                             *std::max_element(xs_b.begin(), xs_b.end()));
  detail::require(hi > lo, "bd_metrics: curves do not overlap");
  const Eigen::Vector4d fit_a = polyfit_cubic(xs_a, ys_a);
  const Eigen::Vector4d fit_b = polyfit_cubic(xs_b, ys_b);
  return (poly_integral(fit_b, lo, hi) - poly_integral(fit_a, lo, hi)) / (hi - lo);
}

}  // namespace

BdResult bd_metrics(const std::vector<RDPoint>& curve_a, const std::vector<RDPoint>& curve_b) {
  const Curve a = prepare_curve(curve_a, "curve_a");
  const Curve b = prepare_curve(curve_b, "curve_b");

  BdResult result;
  result.bd_psnr_db = bd_delta(a.log_rate, a.psnr_db, b.log_rate, b.psnr_db);
  const double delta_log_rate = bd_delta(a.psnr_db, a.log_rate, b.psnr_db, b.log_rate);
  result.bd_rate_percent = (std::pow(10.0, delta_log_rate) - 1.0) * 100.0;
  return result;
}

BdSummary summarize_bd(const std::vector<BdResult>& results,
                       const std::vector<double>& weights) {
  detail::require(!results.empty(), "summarize_bd: no results");
  detail::require(results.size() == weights.size(), "summarize_bd: weight count mismatch");
  BdSummary summary;
  double weight_sum = 0.0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    detail::require(weights[i] > 0.0, "summarize_bd: weights must be positive");
    summary.mean_bd_rate_percent += results[i].bd_rate_percent;
    summary.mean_bd_psnr_db += results[i].bd_psnr_db;
    summary.weighted_bd_rate_percent += weights[i] * results[i].bd_rate_percent;
    summary.weighted_bd_psnr_db += weights[i] * results[i].bd_psnr_db;
    weight_sum += weights[i];
  }
  summary.mean_bd_rate_percent /= static_cast<double>(results.size());
  summary.mean_bd_psnr_db /= static_cast<double>(results.size());
  summary.weighted_bd_rate_percent /= weight_sum;
  summary.weighted_bd_psnr_db /= weight_sum;
  return summary;
}

void write_rd_curve_svg(const std::vector<NamedCurve>& curves,
                        const std::filesystem::path& path) {
  detail::require(!curves.empty(), "write_rd_curve_svg: no curves");
  double min_x = std::numeric_limits<double>::max();
  double max_x = std::numeric_limits<double>::lowest();
  double min_y = min_x;
  double max_y = max_x;
  for (const NamedCurve& curve : curves) {
    detail::require(!curve.points.empty(), "write_rd_curve_svg: empty curve");
    for (const RDPoint& p : curve.points) {
      detail::require(p.rate_bits > 0.0 && std::isfinite(p.psnr_db),
                      "write_rd_curve_svg: invalid point");
      min_x = std::min(min_x, std::log10(p.rate_bits));
      max_x = std::max(max_x, std::log10(p.rate_bits));
      min_y = std::min(min_y, p.psnr_db);
      max_y = std::max(max_y, p.psnr_db);
    }
  }
  if (max_x - min_x < 1e-12) max_x = min_x + 1.0;
  if (max_y - min_y < 1e-12) max_y = min_y + 1.0;

  constexpr int kWidth = 640;
  constexpr int kHeight = 480;
  constexpr int kMargin = 60;
  auto sx = [&](double lx) {
    return kMargin + (lx - min_x) / (max_x - min_x) * (kWidth - 2 * kMargin);
  };
  auto sy = [&](double p) {
    return kHeight - kMargin - (p - min_y) / (max_y - min_y) * (kHeight - 2 * kMargin);
  };

  std::ofstream out(path);
  detail::require(out.good(), "write_rd_curve_svg: cannot create " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "  <line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
      << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "  <line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
      << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "  <text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - kMargin / 3
      << "\" text-anchor=\"middle\" font-size=\"14\">log10 rate [bits]</text>\n";
  out << "  <text x=\"" << kMargin / 3 << "\" y=\"" << kHeight / 2
      << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 " << kMargin / 3
      << " " << kHeight / 2 << ")\">PSNR [dB]</text>\n";

  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  for (std::size_t c = 0; c < curves.size(); ++c) {
    std::vector<RDPoint> pts = curves[c].points;
    std::sort(pts.begin(), pts.end(),
              [](const RDPoint& a, const RDPoint& b) { return a.rate_bits < b.rate_bits; });
    out << "  <polyline fill=\"none\" stroke=\"" << colors[c % 6]
        << "\" stroke-width=\"2\" points=\"";
    for (const RDPoint& p : pts) {
      out << sx(std::log10(p.rate_bits)) << "," << sy(p.psnr_db) << " ";
    }
    out << "\"/>\n";
    for (const RDPoint& p : pts) {
      out << "  <circle cx=\"" << sx(std::log10(p.rate_bits)) << "\" cy=\"" << sy(p.psnr_db)
          << "\" r=\"3\" fill=\"" << colors[c % 6] << "\"/>\n";
    }
    out << "  <text x=\"" << kWidth - kMargin + 5 << "\" y=\"" << kMargin + 18 * c
        << "\" font-size=\"12\" fill=\"" << colors[c % 6] << "\" text-anchor=\"end\">"
        << curves[c].label << "</text>\n";
  }
  out << "</svg>\n";
  detail::require(out.good(), "write_rd_curve_svg: write failed");
}

}  // namespace hsvtk::eval
