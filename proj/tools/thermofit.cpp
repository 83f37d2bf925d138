// thermofit: least-squares fitting of heat-sink temperature series and
// thermal-resistance lookups.

#include <CLI11.hpp>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "thermofit/dataset.hpp"
#include "thermofit/error.hpp"
#include "thermofit/nonlinear.hpp"
#include "thermofit/regression.hpp"
#include "thermofit/report.hpp"
#include "thermofit/thermal.hpp"

namespace tf = thermofit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNoConvergence = 2;

bool use_color() {
  return std::getenv("THERMOFIT_NO_COLOR") == nullptr && isatty(fileno(stdout)) != 0;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tf::Error(tf::ErrorCode::kIo, fmt::format("cannot read '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw tf::Error(tf::ErrorCode::kIo, fmt::format("cannot write '{}'", path));
  out << content;
  out.flush();
  if (!out) throw tf::Error(tf::ErrorCode::kIo, fmt::format("failed writing '{}'", path));
}

tf::Series builtin_series(const std::string& name) {
  auto [idle, full] = tf::builtin_table3();
  if (name == "idle") return idle;
  if (name == "full") return full;
  throw tf::Error(tf::ErrorCode::kUsage,
                  fmt::format("unknown builtin '{}' (expected idle or full)", name));
}

tf::Series load_series(const std::string& path, const std::string& builtin) {
  if (path.empty() == builtin.empty()) {
    throw tf::Error(tf::ErrorCode::kUsage, "give exactly one of an input file or --builtin");
  }
  if (!builtin.empty()) return builtin_series(builtin);
  tf::Series s = tf::parse_csv(read_file(path));
  if (s.label.empty()) s.label = path;
  return s;
}

std::vector<double> parse_weights(const std::string& text) {
  std::vector<double> weights;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string field = line.substr(first, last - first + 1);
    if (weights.empty() && field == "weight") continue;
    double w = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), w);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
      throw tf::Error(tf::ErrorCode::kMalformedRow,
                      fmt::format("weights line {}: '{}' is not a number", line_no, field));
    }
    weights.push_back(w);
  }
  return weights;
}

tf::Solver parse_solver(const std::string& s) {
  if (s == "gn" || s == "gauss-newton") return tf::Solver::kGaussNewton;
  if (s == "gd" || s == "gradient-descent") return tf::Solver::kGradientDescent;
  throw tf::Error(tf::ErrorCode::kUsage, fmt::format("unknown solver '{}'", s));
}

tf::StepModelParams parse_init(const std::vector<double>& v) {
  if (v.size() != 3) {
    throw tf::Error(tf::ErrorCode::kUsage, "--init takes three values: T0,Tinf,tau");
  }
  return {v[0], v[1], v[2]};
}

struct InputArgs {
  std::string path;
  std::string builtin;
};

void add_input(CLI::App* cmd, InputArgs& in) {
  cmd->add_option("input", in.path, "CSV file with a time_s,temperature_c header");
  cmd->add_option("--builtin", in.builtin, "Embedded case-study series")
      ->check(CLI::IsMember({"idle", "full"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Least-squares fitting of heat-sink temperature series"};
  app.require_subcommand(1);

  // fit
  InputArgs fit_in;
  std::string fit_axis = "y-on-x";
  std::string fit_weights;
  bool fit_nonlinear = false;
  std::string fit_solver = "gn";
  std::vector<double> fit_init;
  bool fit_json = false;
  auto* fit = app.add_subcommand("fit", "Fit a least-squares line (and optionally a step response)");
  add_input(fit, fit_in);
  fit->add_option("--axis", fit_axis, "Regression direction")
      ->check(CLI::IsMember({"y-on-x", "x-on-y"}));
  fit->add_option("--weights", fit_weights, "File with one positive weight per line");
  fit->add_flag("--nonlinear", fit_nonlinear, "Also fit T(t) = Tinf + (T0 - Tinf) exp(-t/tau)");
  fit->add_option("--solver", fit_solver, "Nonlinear solver: gn or gd");
  fit->add_option("--init", fit_init, "Nonlinear starting point T0 Tinf tau")->expected(3)
      ->delimiter(',');
  fit->add_flag("--json", fit_json, "Emit JSON instead of text");

  // correlate
  InputArgs cor_in;
  bool cor_json = false;
  auto* cor = app.add_subcommand("correlate", "Coefficient of correlation only");
  add_input(cor, cor_in);
  cor->add_flag("--json", cor_json, "Emit JSON instead of text");

  // predict
  std::optional<double> pred_m;
  std::optional<double> pred_b;
  std::string pred_report;
  double pred_x = 0.0;
  auto* pred = app.add_subcommand("predict", "Evaluate y = mx + b");
  pred->add_option("-m,--slope", pred_m, "Slope");
  pred->add_option("-b,--intercept", pred_b, "Intercept");
  pred->add_option("--report", pred_report, "JSON report written by 'fit --json'");
  pred->add_option("-x", pred_x, "Abscissa")->required();

  // thermal
  auto* thermal = app.add_subcommand("thermal", "Thermal-resistance tables and junction temperature");
  thermal->require_subcommand(1);
  bool th_csv = false;
  auto* th_pkg = thermal->add_subcommand("packages", "Package junction-to-case / junction-to-air");
  th_pkg->add_flag("--csv", th_csv, "Emit CSV");
  auto* th_hs = thermal->add_subcommand("heatsinks", "Surface-mount heat sinks");
  th_hs->add_flag("--csv", th_csv, "Emit CSV");

  double th_power = 0.0, th_theta = 0.0, th_ambient = 0.0, th_tmax = 0.0, th_jc = 0.0;
  auto* th_j = thermal->add_subcommand("junction", "T_j = T_ambient + P * theta");
  th_j->add_option("-p,--power", th_power, "Dissipated power (W)")->required();
  th_j->add_option("-r,--theta", th_theta, "Total thermal resistance (C/W)")->required();
  th_j->add_option("-a,--ambient", th_ambient, "Ambient temperature (C)")->required();

  auto* th_mp = thermal->add_subcommand("max-power", "Largest power keeping T_j <= T_max");
  th_mp->add_option("-t,--t-max", th_tmax, "Maximum junction temperature (C)")->required();
  th_mp->add_option("-r,--theta", th_theta, "Total thermal resistance (C/W)")->required();
  th_mp->add_option("-a,--ambient", th_ambient, "Ambient temperature (C)")->required();

  auto* th_sel = thermal->add_subcommand("select", "Cheapest adequate built-in heat sink");
  th_sel->add_option("-p,--power", th_power, "Dissipated power (W)")->required();
  th_sel->add_option("-t,--t-max", th_tmax, "Maximum junction temperature (C)")->required();
  th_sel->add_option("-a,--ambient", th_ambient, "Ambient temperature (C)")->required();
  th_sel->add_option("--theta-jc", th_jc, "Junction-to-case resistance (C/W)")->required();

  // plot
  std::vector<std::string> plot_paths;
  std::vector<std::string> plot_builtins;
  std::string plot_out;
  bool plot_nonlinear = false;
  auto* plot = app.add_subcommand("plot", "Write an SVG of samples and fitted curves");
  plot->add_option("input", plot_paths, "CSV files");
  plot->add_option("--builtin", plot_builtins, "Embedded series (repeatable)")
      ->check(CLI::IsMember({"idle", "full"}));
  plot->add_option("-o,--output", plot_out, "SVG output path")->required();
  plot->add_flag("--nonlinear", plot_nonlinear, "Overlay the fitted step response");

  // export
  std::string exp_builtin;
  std::string exp_out;
  auto* exp = app.add_subcommand("export", "Write an embedded series as CSV");
  exp->add_option("--builtin", exp_builtin, "Embedded series")
      ->required()
      ->check(CLI::IsMember({"idle", "full"}));
  exp->add_option("-o,--output", exp_out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << tf::code_name(tf::ErrorCode::kUsage) << ": " << e.what() << "\n";
    return kExitError;
  }

  try {
    if (fit->parsed()) {
      const tf::Series series = load_series(fit_in.path, fit_in.builtin);
      tf::ReportOptions opts;
      opts.axis = fit_axis == "x-on-y" ? tf::Axis::kXOnY : tf::Axis::kYOnX;
      if (!fit_weights.empty()) opts.weights = parse_weights(read_file(fit_weights));
      if (fit_nonlinear) {
        opts.nonlinear = parse_solver(fit_solver);
        if (!fit_init.empty()) opts.init = parse_init(fit_init);
      }
      const tf::FitReport report = tf::build_report(series, opts);
      std::cout << (fit_json ? tf::render_json(report) : tf::render_text(report, use_color()));
      if (report.nonlinear && !report.nonlinear->fit.converged) {
        std::cerr << tf::code_name(tf::ErrorCode::kNoConvergence) << ": "
                  << tf::to_string(report.nonlinear->solver) << " stopped after "
                  << report.nonlinear->fit.iterations << " iterations without converging\n";
        return kExitNoConvergence;
      }
      return kExitOk;
    }

    if (cor->parsed()) {
      const tf::Series series = load_series(cor_in.path, cor_in.builtin);
      const auto pts = tf::to_points(series);
      const double r = tf::correlation(pts);
      const auto cls = tf::classify_fit(r);
      if (cor_json) {
        nlohmann::ordered_json j;
        j["series_label"] = series.label;
        j["n"] = pts.size();
        j["r"] = r;
        j["fit_class"] = tf::to_string(cls);
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << fmt::format("r = {:.4f} ({})\n", r, tf::to_string(cls));
      }
      return kExitOk;
    }

    if (pred->parsed()) {
      tf::LinearFit line;
      if (!pred_report.empty()) {
        if (pred_m || pred_b) {
          throw tf::Error(tf::ErrorCode::kUsage, "use either --report or -m/-b, not both");
        }
        line = tf::parse_report_json(read_file(pred_report)).linear;
      } else {
        if (!pred_m || !pred_b) {
          throw tf::Error(tf::ErrorCode::kUsage, "predict needs -m and -b, or --report");
        }
        line.slope = *pred_m;
        line.intercept = *pred_b;
      }
      if (!std::isfinite(line.slope) || !std::isfinite(line.intercept) ||
          !std::isfinite(pred_x)) {
        throw tf::Error(tf::ErrorCode::kOutOfRange, "model and x must be finite");
      }
      std::cout << fmt::format("{:.4f}\n", tf::predict(line, pred_x));
      return kExitOk;
    }

    if (thermal->parsed()) {
      if (th_pkg->parsed()) {
        const auto pkgs = tf::builtin_packages();
        if (th_csv) {
          std::cout << tf::packages_csv(pkgs);
        } else {
          std::cout << fmt::format("{:<10} {:>18} {:>18}\n", "Package", "theta_jc (C/W)",
                                   "theta_ja (C/W)");
          for (const auto& p : pkgs) {
            std::cout << fmt::format("{:<10} {:>18} {:>18}\n", p.name, p.theta_jc, p.theta_ja);
          }
        }
      } else if (th_hs->parsed()) {
        const auto sinks = tf::builtin_heatsinks();
        if (th_csv) {
          std::cout << tf::heatsinks_csv(sinks);
        } else {
          std::cout << fmt::format("{:<36} {:>16}\n", "Heat sink", "theta_sa (C/W)");
          for (const auto& s : sinks) {
            std::cout << fmt::format("{:<36} {:>16}\n", s.name, s.theta_sa);
          }
        }
      } else if (th_j->parsed()) {
        std::cout << fmt::format("{:.4f}\n",
                                 tf::junction_temperature(th_power, th_theta, th_ambient));
      } else if (th_mp->parsed()) {
        std::cout << fmt::format("{:.4f}\n", tf::max_power(th_tmax, th_theta, th_ambient));
      } else if (th_sel->parsed()) {
        const auto sinks = tf::builtin_heatsinks();
        const auto best = tf::select_heatsink(sinks, th_power, th_tmax, th_ambient, th_jc);
        if (best) {
          std::cout << fmt::format("{} ({} C/W)\n", best->name, best->theta_sa);
        } else {
          std::cout << "none\n";
        }
      }
      return kExitOk;
    }

    if (plot->parsed()) {
      std::vector<tf::Series> all;
      for (const auto& name : plot_builtins) all.push_back(builtin_series(name));
      for (const auto& path : plot_paths) all.push_back(load_series(path, ""));
      if (all.empty()) {
        throw tf::Error(tf::ErrorCode::kUsage, "plot needs at least one input or --builtin");
      }
      std::vector<tf::PlotSeries> plotted;
      bool converged = true;
      for (const auto& s : all) {
        tf::ReportOptions opts;
        if (plot_nonlinear) opts.nonlinear = tf::Solver::kGaussNewton;
        const auto report = tf::build_report(s, opts);
        tf::PlotSeries ps{s.label, tf::to_points(s), report.linear, std::nullopt};
        if (report.nonlinear) {
          ps.curve = report.nonlinear->fit.params;
          converged = converged && report.nonlinear->fit.converged;
        }
        plotted.push_back(std::move(ps));
      }
      write_file(plot_out, tf::render_svg(plotted));
      if (!converged) {
        std::cerr << tf::code_name(tf::ErrorCode::kNoConvergence)
                  << ": step-response fit did not converge; curve shows best iterate\n";
        return kExitNoConvergence;
      }
      return kExitOk;
    }

    if (exp->parsed()) {
      const std::string csv = tf::to_csv(builtin_series(exp_builtin));
      if (exp_out.empty()) {
        std::cout << csv;
      } else {
        write_file(exp_out, csv);
      }
      return kExitOk;
    }
  } catch (const tf::Error& e) {
    std::cerr << tf::code_name(e.code()) << ": " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << tf::code_name(tf::ErrorCode::kIo) << ": " << e.what() << "\n";
    return kExitError;
  }
  return kExitOk;
}
