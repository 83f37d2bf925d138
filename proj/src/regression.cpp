#include "thermofit/regression.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace thermofit {
namespace {

// Relative cutoff below which a spread (n*sum_v2 - sum_v^2) counts as zero.
constexpr double kSpreadTolerance = 1e-12;

void require_points(std::span<const Point> points, std::size_t min_count) {
  if (points.empty()) throw Error(ErrorCode::kEmptyInput, "no data points");
  if (points.size() < min_count) {
    throw Error(ErrorCode::kInsufficientData,
                fmt::format("need at least {} points, got {}", min_count, points.size()));
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i].x) || !std::isfinite(points[i].y)) {
      throw Error(ErrorCode::kOutOfRange, fmt::format("point {} is not finite", i));
    }
  }
}

bool degenerate(double spread, double scale) {
  return !(spread > kSpreadTolerance * scale);
}

double clamp_unit(double r) { return std::clamp(r, -1.0, 1.0); }

}  // namespace

std::vector<Point> to_points(const Series& series) {
  std::vector<Point> pts;
  pts.reserve(series.samples.size());
  for (const auto& s : series.samples) pts.push_back({s.time_s, s.temperature_c});
  return pts;
}

double SummaryStats::spread_x() const {
  return static_cast<double>(n) * sum_x2 - sum_x * sum_x;
}
double SummaryStats::spread_y() const {
  return static_cast<double>(n) * sum_y2 - sum_y * sum_y;
}
double SummaryStats::spread_xy() const {
  return static_cast<double>(n) * sum_xy - sum_x * sum_y;
}

std::string_view to_string(Axis axis) {
  return axis == Axis::kYOnX ? "y-on-x" : "x-on-y";
}

std::string_view to_string(FitClass c) {
  switch (c) {
    case FitClass::kGood: return "GOOD";
    case FitClass::kModerate: return "MODERATE";
    case FitClass::kPoor: return "POOR";
  }
  return "POOR";
}

SummaryStats summarize(std::span<const Point> points) {
  require_points(points, 1);
  SummaryStats s;
  s.n = points.size();
  for (const auto& p : points) {
    s.sum_x += p.x;
    s.sum_y += p.y;
    s.sum_xy += p.x * p.y;
    s.sum_x2 += p.x * p.x;
    s.sum_y2 += p.y * p.y;
  }
  return s;
}

LinearFit ols_fit(std::span<const Point> points, Axis axis) {
  require_points(points, 2);
  const SummaryStats s = summarize(points);
  const double n = static_cast<double>(s.n);
  const double sxx = s.spread_x();
  const double syy = s.spread_y();
  const double sxy = s.spread_xy();

  if (degenerate(sxx, n * s.sum_x2)) {
    throw Error(ErrorCode::kDegenerateVariance, "all x values are equal");
  }
  if (degenerate(syy, n * s.sum_y2)) {
    throw Error(ErrorCode::kDegenerateVariance, "all y values are equal");
  }

  LinearFit fit;
  fit.axis = axis;
  fit.n = s.n;
  fit.r = clamp_unit(sxy / std::sqrt(sxx * syy));

  if (axis == Axis::kYOnX) {
    fit.slope = sxy / sxx;
    fit.intercept = (s.sum_y - fit.slope * s.sum_x) / n;
  } else {
    const double m_xy = sxy / syy;
    const double b_xy = (s.sum_x - m_xy * s.sum_y) / n;
    if (m_xy == 0.0) {
      throw Error(ErrorCode::kDegenerateVariance,
                  "x-on-y slope is zero; line is vertical in y = mx + b form");
    }
    fit.slope = 1.0 / m_xy;
    fit.intercept = -b_xy / m_xy;
  }
  fit.sse = sse(fit, points);
  return fit;
}

LinearFit wls_fit(std::span<const Point> points, std::span<const double> weights) {
  if (points.size() != weights.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                fmt::format("{} points but {} weights", points.size(), weights.size()));
  }
  require_points(points, 2);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!std::isfinite(weights[i]) || weights[i] <= 0.0) {
      throw Error(ErrorCode::kNonPositiveWeight,
                  fmt::format("weight {} is {}, must be positive", i, weights[i]));
    }
  }

  double sw = 0, swx = 0, swy = 0, swxy = 0, swx2 = 0, swy2 = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double w = weights[i];
    const auto& p = points[i];
    sw += w;
    swx += w * p.x;
    swy += w * p.y;
    swxy += w * p.x * p.y;
    swx2 += w * p.x * p.x;
    swy2 += w * p.y * p.y;
  }
  const double sxx = sw * swx2 - swx * swx;
  const double syy = sw * swy2 - swy * swy;
  const double sxy = sw * swxy - swx * swy;
  if (degenerate(sxx, sw * swx2)) {
    throw Error(ErrorCode::kDegenerateVariance, "weighted x variance is zero");
  }

  LinearFit fit;
  fit.axis = Axis::kYOnX;
  fit.n = points.size();
  fit.slope = sxy / sxx;
  fit.intercept = (swy - fit.slope * swx) / sw;
  if (degenerate(syy, sw * swy2)) {
    throw Error(ErrorCode::kDegenerateVariance, "weighted y variance is zero");
  }
  fit.r = clamp_unit(sxy / std::sqrt(sxx * syy));
  fit.sse = sse(fit, points);
  return fit;
}

double predict(const LinearFit& fit, double x) { return fit.slope * x + fit.intercept; }

std::vector<double> residuals(const LinearFit& fit, std::span<const Point> points) {
  std::vector<double> d;
  d.reserve(points.size());
  if (fit.axis == Axis::kYOnX) {
    for (const auto& p : points) d.push_back(p.y - predict(fit, p.x));
  } else {
    const double m = fit.native_slope();
    const double b = fit.native_intercept();
    for (const auto& p : points) d.push_back(p.x - (m * p.y + b));
  }
  return d;
}

double sse(const LinearFit& fit, std::span<const Point> points) {
  double total = 0.0;
  for (double d : residuals(fit, points)) total += d * d;
  return total;
}

double correlation(std::span<const Point> points) {
  require_points(points, 2);
  const SummaryStats s = summarize(points);
  const double n = static_cast<double>(s.n);
  const double sxx = s.spread_x();
  const double syy = s.spread_y();
  if (degenerate(sxx, n * s.sum_x2) || degenerate(syy, n * s.sum_y2)) {
    throw Error(ErrorCode::kDegenerateVariance, "correlation undefined for constant data");
  }
  return clamp_unit(s.spread_xy() / std::sqrt(sxx * syy));
}

FitClass classify_fit(double r) {
  if (!(std::abs(r) <= 1.0)) {
    throw Error(ErrorCode::kOutOfRange, fmt::format("|r| = {} exceeds 1", std::abs(r)));
  }
  const double a = std::abs(r);
  if (a >= 0.9) return FitClass::kGood;
  if (a >= 0.5) return FitClass::kModerate;
  return FitClass::kPoor;
}

}  // namespace thermofit
