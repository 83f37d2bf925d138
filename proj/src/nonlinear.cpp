#include "thermofit/nonlinear.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <fmt/format.h>
#include <limits>

namespace thermofit {
namespace {

constexpr std::size_t kMinSamples = 4;

void check_problem(std::span<const Point> points, const StepModelParams& init) {
  if (points.size() < kMinSamples) {
    throw Error(ErrorCode::kInsufficientData,
                fmt::format("step-response fit needs at least {} samples, got {}",
                            kMinSamples, points.size()));
  }
  if (!init.valid()) {
    throw Error(ErrorCode::kInvalidInit,
                fmt::format("invalid initial parameters ({}, {}, {})", init.t_ambient_c,
                            init.t_final_c, init.tau_s));
  }
}

std::vector<double> times_of(std::span<const Point> points) {
  std::vector<double> t;
  t.reserve(points.size());
  for (const auto& p : points) t.push_back(p.x);
  return t;
}

Eigen::VectorXd residual_vector(const StepModelParams& params,
                                std::span<const Point> points) {
  Eigen::VectorXd r(static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    r[static_cast<Eigen::Index>(i)] = points[i].y - model_eval(params, points[i].x);
  }
  return r;
}

// A candidate is usable only if tau stays positive and the SSE is a number.
bool acceptable(const StepModelParams& p, double candidate_sse) {
  return p.valid() && std::isfinite(candidate_sse);
}

}  // namespace

bool StepModelParams::valid() const {
  return std::isfinite(t_ambient_c) && std::isfinite(t_final_c) && std::isfinite(tau_s) &&
         tau_s > 0.0;
}

double model_eval(const StepModelParams& params, double t) {
  return params.t_final_c +
         (params.t_ambient_c - params.t_final_c) * std::exp(-t / params.tau_s);
}

Jacobian jacobian(const StepModelParams& params, std::span<const double> times,
                  JacobianMode mode) {
  Jacobian J(static_cast<Eigen::Index>(times.size()), 3);
  if (mode == JacobianMode::kAnalytic) {
    const double amplitude = params.t_ambient_c - params.t_final_c;
    const double tau = params.tau_s;
    for (Eigen::Index i = 0; i < J.rows(); ++i) {
      const double t = times[static_cast<std::size_t>(i)];
      const double e = std::exp(-t / tau);
      J(i, 0) = e;
      J(i, 1) = 1.0 - e;
      J(i, 2) = amplitude * (t / (tau * tau)) * e;
    }
    return J;
  }

  // Central differences, h_j = sqrt(eps) * max(1, |theta_j|).
  const double root_eps = std::sqrt(std::numeric_limits<double>::epsilon());
  const Eigen::Vector3d theta = params.as_vector();
  for (int j = 0; j < 3; ++j) {
    const double h = root_eps * std::max(1.0, std::abs(theta[j]));
    Eigen::Vector3d up = theta;
    Eigen::Vector3d down = theta;
    up[j] += h;
    down[j] -= h;
    double span = 2.0 * h;
    if (j == 2 && down[j] <= 0.0) {
      down[j] = theta[j];
      span = h;
    }
    const auto pu = StepModelParams::from_vector(up);
    const auto pd = StepModelParams::from_vector(down);
    for (Eigen::Index i = 0; i < J.rows(); ++i) {
      const double t = times[static_cast<std::size_t>(i)];
      J(i, j) = (model_eval(pu, t) - model_eval(pd, t)) / span;
    }
  }
  return J;
}

double step_sse(const StepModelParams& params, std::span<const Point> points) {
  double total = 0.0;
  for (const auto& p : points) {
    const double d = p.y - model_eval(params, p.x);
    total += d * d;
  }
  return total;
}

Eigen::Vector3d step_sse_gradient(const StepModelParams& params,
                                  std::span<const Point> points, JacobianMode mode) {
  const auto t = times_of(points);
  const Jacobian J = jacobian(params, t, mode);
  return -2.0 * J.transpose() * residual_vector(params, points);
}

StepModelParams default_init(std::span<const Point> points) {
  if (points.empty()) throw Error(ErrorCode::kEmptyInput, "no data points");
  const auto& first = points.front();
  const auto& last = points.back();
  return {first.y, last.y, (last.x - first.x) / 3.0};
}

NlFit gauss_newton(std::span<const Point> points, const StepModelParams& init,
                   const GaussNewtonOptions& opts) {
  check_problem(points, init);
  const auto times = times_of(points);
  const int free_params = opts.freeze_tau ? 2 : 3;

  NlFit fit;
  fit.params = init;
  fit.sse = step_sse(init, points);
  fit.trace.push_back({0, fit.sse});
  if (fit.sse == 0.0) {
    fit.converged = true;
    return fit;
  }

  for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
    const Jacobian full = jacobian(fit.params, times);
    const Eigen::MatrixXd J = full.leftCols(free_params);
    const Eigen::VectorXd r = residual_vector(fit.params, points);
    const Eigen::MatrixXd normal = J.transpose() * J;
    const Eigen::VectorXd rhs = J.transpose() * r;

    // Equilibrate columns so the conditioning test ignores parameter units.
    const Eigen::VectorXd scale = normal.diagonal().cwiseSqrt();
    if ((scale.array() <= 0.0).any()) {
      throw Error(ErrorCode::kSingularNormalMatrix,
                  "a Jacobian column is identically zero; parameters are unidentifiable");
    }
    const Eigen::MatrixXd scaled =
        scale.cwiseInverse().asDiagonal() * normal * scale.cwiseInverse().asDiagonal();
    const Eigen::VectorXd eig =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(scaled, Eigen::EigenvaluesOnly)
            .eigenvalues();
    const double rcond = eig.minCoeff() / eig.maxCoeff();
    if (!(rcond >= opts.min_rcond)) {
      throw Error(ErrorCode::kSingularNormalMatrix,
                  fmt::format("normal matrix reciprocal condition {:.3g} below {:.3g}", rcond,
                              opts.min_rcond));
    }
    const Eigen::VectorXd step =
        scale.cwiseInverse().asDiagonal() *
        scaled.llt().solve(scale.cwiseInverse().asDiagonal() * rhs);

    Eigen::Vector3d delta = Eigen::Vector3d::Zero();
    delta.head(free_params) = step;

    const Eigen::Vector3d theta = fit.params.as_vector();
    double factor = 1.0;
    bool accepted = false;
    StepModelParams candidate;
    double candidate_sse = 0.0;
    for (std::size_t h = 0; h <= opts.max_halvings; ++h, factor *= 0.5) {
      candidate = StepModelParams::from_vector(theta + factor * delta);
      candidate_sse = step_sse(candidate, points);
      if (acceptable(candidate, candidate_sse) && candidate_sse < fit.sse) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // No decrease along a descent direction: numerically stationary.
      fit.converged = true;
      break;
    }

    const double previous = fit.sse;
    fit.params = candidate;
    fit.sse = candidate_sse;
    fit.iterations = it;
    fit.trace.push_back({it, fit.sse});
    if (fit.sse == 0.0 || (previous - fit.sse) < opts.relative_tolerance * previous) {
      fit.converged = true;
      break;
    }
  }
  return fit;
}

NlFit gauss_newton(const Series& series, const StepModelParams& init,
                   const GaussNewtonOptions& opts) {
  const auto pts = to_points(series);
  return gauss_newton(pts, init, opts);
}

NlFit gradient_descent(std::span<const Point> points, const StepModelParams& init,
                       const GradientDescentOptions& opts) {
  check_problem(points, init);
  const double n = static_cast<double>(points.size());

  NlFit fit;
  fit.params = init;
  fit.sse = step_sse(init, points);
  fit.trace.push_back({0, fit.sse});

  double rate = opts.learning_rate;
  for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
    if (fit.sse == 0.0) {
      fit.converged = true;
      break;
    }
    const Eigen::Vector3d grad = step_sse_gradient(fit.params, points) / n;
    if (grad.isZero(0.0)) {
      fit.converged = true;
      break;
    }

    const Eigen::Vector3d theta = fit.params.as_vector();
    bool accepted = false;
    StepModelParams candidate;
    double candidate_sse = 0.0;
    for (std::size_t h = 0; h <= opts.max_halvings; ++h) {
      candidate = StepModelParams::from_vector(theta - rate * grad);
      candidate_sse = step_sse(candidate, points);
      if (acceptable(candidate, candidate_sse) && candidate_sse < fit.sse) {
        accepted = true;
        break;
      }
      rate *= 0.5;
    }
    if (!accepted) {
      fit.converged = true;
      break;
    }

    fit.params = candidate;
    fit.sse = candidate_sse;
    fit.iterations = it;
    fit.trace.push_back({it, fit.sse});
    rate *= opts.growth;

    if (fit.trace.size() > opts.window) {
      const double before = fit.trace[fit.trace.size() - 1 - opts.window].sse;
      if (before - fit.sse < opts.relative_tolerance * before) {
        fit.converged = true;
        break;
      }
    }
  }
  return fit;
}

NlFit gradient_descent(const Series& series, const StepModelParams& init,
                       const GradientDescentOptions& opts) {
  const auto pts = to_points(series);
  return gradient_descent(pts, init, opts);
}

}  // namespace thermofit
