#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "thermofit/dataset.hpp"

namespace thermofit {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

std::vector<Point> to_points(const Series& series);

/// Raw accumulators n, sum x, sum y, sum xy, sum x^2, sum y^2.
/// Plain double accumulation; adequate for the thousands of points this
/// tool targets but not compensated against cancellation.
struct SummaryStats {
  std::size_t n = 0;
  double sum_x = 0.0;
  double sum_y = 0.0;
  double sum_xy = 0.0;
  double sum_x2 = 0.0;
  double sum_y2 = 0.0;

  double mean_x() const { return sum_x / static_cast<double>(n); }
  double mean_y() const { return sum_y / static_cast<double>(n); }
  /// n*sum_x2 - sum_x^2
  double spread_x() const;
  /// n*sum_y2 - sum_y^2
  double spread_y() const;
  /// n*sum_xy - sum_x*sum_y
  double spread_xy() const;
};

/// Which deviations are minimized. kYOnX is the usual vertical-residual
/// regression; kXOnY minimizes horizontal residuals.
enum class Axis { kYOnX, kXOnY };

std::string_view to_string(Axis axis);

/// A fitted line, always expressed as y = slope*x + intercept.
///
/// For kXOnY fits the underlying regression is x = native_slope()*y + b';
/// `sse` then sums squared horizontal residuals (units of x^2).
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  Axis axis = Axis::kYOnX;
  double r = 0.0;
  double sse = 0.0;
  std::size_t n = 0;

  /// Slope in the fit's own regression direction: dy/dx for kYOnX,
  /// dx/dy for kXOnY.
  double native_slope() const { return axis == Axis::kYOnX ? slope : 1.0 / slope; }
  double native_intercept() const {
    return axis == Axis::kYOnX ? intercept : -intercept / slope;
  }
};

enum class FitClass { kPoor = 0, kModerate = 1, kGood = 2 };

std::string_view to_string(FitClass c);

SummaryStats summarize(std::span<const Point> points);

LinearFit ols_fit(std::span<const Point> points, Axis axis = Axis::kYOnX);

/// Weighted least squares via the weighted normal equations. `r` is the
/// weighted correlation and `sse` the unweighted sum of squared residuals
/// of the resulting line.
LinearFit wls_fit(std::span<const Point> points, std::span<const double> weights);

double predict(const LinearFit& fit, double x);

/// d_i = y_i - f(x_i) for kYOnX; for kXOnY the mirrored horizontal
/// deviation d_i = x_i - (native_slope*y_i + native_intercept).
std::vector<double> residuals(const LinearFit& fit, std::span<const Point> points);

double sse(const LinearFit& fit, std::span<const Point> points);

/// Pearson coefficient of correlation, clamped to [-1, 1].
double correlation(std::span<const Point> points);

/// kGood for |r| >= 0.9, kModerate for |r| >= 0.5, otherwise kPoor.
FitClass classify_fit(double r);

}  // namespace thermofit
