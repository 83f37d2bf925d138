#include "thermofit/report.hpp"

#include <cstdlib>
#include <fmt/format.h>
#include <json.hpp>

namespace thermofit {
namespace {

using ojson = nlohmann::ordered_json;

FitClass fit_class_from(std::string_view s) {
  if (s == "GOOD") return FitClass::kGood;
  if (s == "MODERATE") return FitClass::kModerate;
  if (s == "POOR") return FitClass::kPoor;
  throw Error(ErrorCode::kMalformedRow, fmt::format("unknown fit_class '{}'", s));
}

Axis axis_from(std::string_view s) {
  if (s == "y-on-x") return Axis::kYOnX;
  if (s == "x-on-y") return Axis::kXOnY;
  throw Error(ErrorCode::kMalformedRow, fmt::format("unknown axis '{}'", s));
}

Solver solver_from(std::string_view s) {
  if (s == "gauss-newton") return Solver::kGaussNewton;
  if (s == "gradient-descent") return Solver::kGradientDescent;
  throw Error(ErrorCode::kMalformedRow, fmt::format("unknown solver '{}'", s));
}

struct Style {
  bool on;
  std::string bold(std::string_view s) const {
    return on ? fmt::format("\x1b[1m{}\x1b[0m", s) : std::string(s);
  }
  std::string klass(FitClass c) const {
    if (!on) return std::string(to_string(c));
    const char* colour = c == FitClass::kGood       ? "32"
                         : c == FitClass::kModerate ? "33"
                                                    : "31";
    return fmt::format("\x1b[{}m{}\x1b[0m", colour, to_string(c));
  }
};

}  // namespace

std::string_view to_string(Solver solver) {
  return solver == Solver::kGaussNewton ? "gauss-newton" : "gradient-descent";
}

FitReport build_report(const Series& series, const ReportOptions& opts) {
  const auto pts = to_points(series);

  FitReport report;
  report.series_label = series.label;
  report.power_w = series.power_w;
  if (opts.weights) {
    if (opts.axis != Axis::kYOnX) {
      throw Error(ErrorCode::kUsage, "weighted fits support only the y-on-x axis");
    }
    report.linear = wls_fit(pts, *opts.weights);
    report.weighted = true;
  } else {
    report.linear = ols_fit(pts, opts.axis);
  }
  report.fit_class = classify_fit(report.linear.r);

  report.residual_table.reserve(pts.size());
  for (const auto& p : pts) {
    const double predicted = predict(report.linear, p.x);
    report.residual_table.push_back({p.x, p.y, predicted, p.y - predicted});
  }

  if (opts.nonlinear) {
    const StepModelParams init = opts.init ? *opts.init : default_init(pts);
    NonlinearResult nl;
    nl.solver = *opts.nonlinear;
    nl.fit = nl.solver == Solver::kGaussNewton ? gauss_newton(pts, init)
                                               : gradient_descent(pts, init);
    report.nonlinear = std::move(nl);
  }
  return report;
}

std::string render_text(const FitReport& report, bool color) {
  const Style st{color};
  const auto& fit = report.linear;
  std::string out;
  out += st.bold(fmt::format("Series: {}", report.series_label.empty() ? "(unlabeled)"
                                                                      : report.series_label));
  out += '\n';
  if (report.power_w) out += fmt::format("Power:        {:.4f} W\n", *report.power_w);
  out += fmt::format("Method:       {} ({})\n", report.weighted ? "WLS" : "OLS",
                     to_string(fit.axis));
  out += fmt::format("Samples:      {}\n", fit.n);
  out += fmt::format("Line:         y = {:.4f}x + {:.4f}\n", fit.slope, fit.intercept);
  out += fmt::format("Slope:        {:.4f}\n", fit.slope);
  out += fmt::format("Intercept:    {:.4f}\n", fit.intercept);
  out += fmt::format("r:            {:.4f}\n", fit.r);
  out += fmt::format("SSE:          {:.4f}\n", fit.sse);
  out += fmt::format("Fit class:    {}\n", st.klass(report.fit_class));

  if (report.nonlinear) {
    const auto& nl = report.nonlinear->fit;
    out += '\n';
    out += st.bold(fmt::format("Step response ({})", to_string(report.nonlinear->solver)));
    out += '\n';
    out += fmt::format("T0:           {:.4f} C\n", nl.params.t_ambient_c);
    out += fmt::format("Tinf:         {:.4f} C\n", nl.params.t_final_c);
    out += fmt::format("tau:          {:.4f} s\n", nl.params.tau_s);
    out += fmt::format("SSE:          {:.4f}\n", nl.sse);
    out += fmt::format("Iterations:   {}\n", nl.iterations);
    out += fmt::format("Converged:    {}\n", nl.converged ? "yes" : "no");
  }

  out += '\n';
  out += st.bold(fmt::format("{:>10} {:>12} {:>12} {:>12}", "x", "observed", "predicted", "d"));
  out += '\n';
  for (const auto& row : report.residual_table) {
    out += fmt::format("{:>10.4f} {:>12.4f} {:>12.4f} {:>12.4f}\n", row.x, row.y_observed,
                       row.y_predicted, row.d);
  }
  return out;
}

std::string render_json(const FitReport& report) {
  const auto& fit = report.linear;
  ojson j;
  j["series_label"] = report.series_label;
  j["power_w"] = report.power_w ? ojson(*report.power_w) : ojson(nullptr);
  j["method"] = report.weighted ? "wls" : "ols";
  j["axis"] = to_string(fit.axis);
  j["n"] = fit.n;
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["r"] = fit.r;
  j["sse"] = fit.sse;
  j["fit_class"] = to_string(report.fit_class);
  ojson rows = ojson::array();
  for (const auto& row : report.residual_table) {
    rows.push_back({{"x", row.x},
                    {"observed", row.y_observed},
                    {"predicted", row.y_predicted},
                    {"d", row.d}});
  }
  j["residuals"] = std::move(rows);
  if (report.nonlinear) {
    const auto& nl = report.nonlinear->fit;
    j["nonlinear"] = {{"solver", to_string(report.nonlinear->solver)},
                      {"t0", nl.params.t_ambient_c},
                      {"tinf", nl.params.t_final_c},
                      {"tau", nl.params.tau_s},
                      {"sse", nl.sse},
                      {"iterations", nl.iterations},
                      {"converged", nl.converged}};
  }
  return j.dump(2) + "\n";
}

FitReport parse_report_json(std::string_view json_text) {
  ojson j;
  try {
    j = ojson::parse(json_text);
  } catch (const ojson::parse_error& e) {
    throw Error(ErrorCode::kMalformedRow, fmt::format("report is not valid JSON: {}", e.what()));
  }

  try {
    FitReport report;
    report.series_label = j.at("series_label").get<std::string>();
    if (!j.at("power_w").is_null()) report.power_w = j.at("power_w").get<double>();
    report.weighted = j.at("method").get<std::string>() == "wls";
    auto& fit = report.linear;
    fit.axis = axis_from(j.at("axis").get<std::string>());
    fit.n = j.at("n").get<std::size_t>();
    fit.slope = j.at("slope").get<double>();
    fit.intercept = j.at("intercept").get<double>();
    fit.r = j.at("r").get<double>();
    fit.sse = j.at("sse").get<double>();
    report.fit_class = fit_class_from(j.at("fit_class").get<std::string>());
    for (const auto& row : j.at("residuals")) {
      report.residual_table.push_back({row.at("x").get<double>(),
                                       row.at("observed").get<double>(),
                                       row.at("predicted").get<double>(),
                                       row.at("d").get<double>()});
    }
    if (j.contains("nonlinear")) {
      const auto& nl = j.at("nonlinear");
      NonlinearResult result;
      result.solver = solver_from(nl.at("solver").get<std::string>());
      result.fit.params = {nl.at("t0").get<double>(), nl.at("tinf").get<double>(),
                           nl.at("tau").get<double>()};
      result.fit.sse = nl.at("sse").get<double>();
      result.fit.iterations = nl.at("iterations").get<std::size_t>();
      result.fit.converged = nl.at("converged").get<bool>();
      report.nonlinear = std::move(result);
    }
    return report;
  } catch (const ojson::exception& e) {
    throw Error(ErrorCode::kMalformedRow, fmt::format("report JSON missing field: {}", e.what()));
  }
}

}  // namespace thermofit
