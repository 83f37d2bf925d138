#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "thermofit/dataset.hpp"
#include "thermofit/nonlinear.hpp"
#include "thermofit/regression.hpp"

namespace thermofit {

/// One row of the observed-vs-predicted table. `d` = observed - predicted.
struct ResidualRow {
  double x = 0.0;
  double y_observed = 0.0;
  double y_predicted = 0.0;
  double d = 0.0;
};

enum class Solver { kGaussNewton, kGradientDescent };

std::string_view to_string(Solver solver);

struct NonlinearResult {
  Solver solver = Solver::kGaussNewton;
  NlFit fit;
};

struct FitReport {
  std::string series_label;
  std::optional<double> power_w;
  bool weighted = false;
  LinearFit linear;
  FitClass fit_class = FitClass::kPoor;
  std::optional<NonlinearResult> nonlinear;
  /// Vertical deviations from the reported y = mx + b line, one per sample.
  std::vector<ResidualRow> residual_table;
};

struct ReportOptions {
  Axis axis = Axis::kYOnX;
  /// When set, the linear fit is weighted least squares (y on x).
  std::optional<std::vector<double>> weights;
  /// When set, a step-response model is also fitted with this solver.
  std::optional<Solver> nonlinear;
  std::optional<StepModelParams> init;
};

/// Runs the linear fit, correlation, classification and (optionally) the
/// step-response fit for one series. Errors propagate as thermofit::Error.
FitReport build_report(const Series& series, const ReportOptions& opts = {});

/// Human-readable report with values at 4 decimal places.
std::string render_text(const FitReport& report, bool color = false);

/// Machine-readable report. Doubles are written in shortest round-trip form.
std::string render_json(const FitReport& report);

/// Inverse of render_json(); the optimizer trace is not serialized.
FitReport parse_report_json(std::string_view json_text);

// ---------------------------------------------------------------------------
// SVG plotting

struct PlotSeries {
  std::string label;
  std::vector<Point> points;
  std::optional<LinearFit> line;
  std::optional<StepModelParams> curve;
};

struct PlotOptions {
  int width = 720;
  int height = 450;
  std::string title = "Best Fit Curve";
  std::string x_label = "Time in Sec";
  std::string y_label = "Temperature in degree";
};

/// Standalone SVG: samples as <circle>, each fitted line as one <line>,
/// each step-response curve as one <path>. Axes, ticks and legend swatches
/// use <polyline>/<rect> so the element counts above stay exact. Output is
/// a pure function of the input.
std::string render_svg(std::span<const PlotSeries> series, const PlotOptions& opts = {});

}  // namespace thermofit
