#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <span>
#include <vector>

#include "thermofit/dataset.hpp"
#include "thermofit/regression.hpp"

namespace thermofit {

/// First-order step response T(t) = T_final + (T_ambient - T_final) * exp(-t / tau).
struct StepModelParams {
  double t_ambient_c = 0.0;
  double t_final_c = 0.0;
  double tau_s = 1.0;

  bool valid() const;
  Eigen::Vector3d as_vector() const { return {t_ambient_c, t_final_c, tau_s}; }
  static StepModelParams from_vector(const Eigen::Vector3d& v) { return {v[0], v[1], v[2]}; }
};

struct TracePoint {
  std::size_t iteration = 0;
  double sse = 0.0;
};

struct NlFit {
  StepModelParams params;
  double sse = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  /// SSE at the starting point (iteration 0) and after every accepted step.
  std::vector<TracePoint> trace;
};

enum class JacobianMode { kAnalytic, kFiniteDiff };

/// Rows are (dT/dT_ambient, dT/dT_final, dT/dtau) at each time.
using Jacobian = Eigen::Matrix<double, Eigen::Dynamic, 3>;

struct GaussNewtonOptions {
  std::size_t max_iterations = 100;
  double relative_tolerance = 1e-10;
  std::size_t max_halvings = 20;
  /// Holds tau fixed, leaving a problem that is linear in the two temperatures.
  bool freeze_tau = false;
  /// Smallest accepted reciprocal condition number of the column-scaled JᵀJ.
  double min_rcond = 1e-12;
};

struct GradientDescentOptions {
  /// Initial step on the mean squared residual SSE / n.
  double learning_rate = 1e-4;
  std::size_t max_iterations = 50000;
  double relative_tolerance = 1e-10;
  /// Convergence is judged on the SSE decrease across this many iterations.
  std::size_t window = 100;
  /// Step growth after an accepted step; a rejected step halves it.
  double growth = 1.2;
  std::size_t max_halvings = 60;
};

double model_eval(const StepModelParams& params, double t);

Jacobian jacobian(const StepModelParams& params, std::span<const double> times,
                  JacobianMode mode = JacobianMode::kAnalytic);

/// Sum of squared residuals y - T(t) over the points (x is time).
double step_sse(const StepModelParams& params, std::span<const Point> points);

/// Gradient of step_sse(): -2 Jᵀ (y - T).
Eigen::Vector3d step_sse_gradient(const StepModelParams& params,
                                  std::span<const Point> points,
                                  JacobianMode mode = JacobianMode::kAnalytic);

/// T_ambient = first temperature, T_final = last, tau = time span / 3.
StepModelParams default_init(std::span<const Point> points);

NlFit gauss_newton(std::span<const Point> points, const StepModelParams& init,
                   const GaussNewtonOptions& opts = {});
NlFit gauss_newton(const Series& series, const StepModelParams& init,
                   const GaussNewtonOptions& opts = {});

NlFit gradient_descent(std::span<const Point> points, const StepModelParams& init,
                       const GradientDescentOptions& opts = {});
NlFit gradient_descent(const Series& series, const StepModelParams& init,
                       const GradientDescentOptions& opts = {});

}  // namespace thermofit
