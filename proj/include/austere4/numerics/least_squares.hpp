#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>

namespace austere4::numerics {

struct LmOptions {
  int max_iterations = 500;
  double gradient_tolerance = 1e-10;
  double cost_floor = 1e-30;
  double jacobian_step = 1e-6;
  /// Stop once an accepted step lowers the cost by less than this fraction.
  double relative_decrease_tolerance = 1e-12;
};

template <class State>
struct LmResult {
  State state;
  double cost = 0.0;  // 0.5 |r|^2
  int iterations = 0;
};

template <class State>
using ResidualFn = std::function<Eigen::VectorXd(const State&)>;
template <class State>
using RetractFn = std::function<State(const State&, const Eigen::VectorXd&)>;
/// Jacobian of the residual in the chart at the given state.
template <class State>
using JacobianFn = std::function<Eigen::MatrixXd(const State&)>;

/// Levenberg-Marquardt on a manifold given by a retraction.
///
/// `retract(x, delta)` moves the state along a local chart (delta in R^dim,
/// retract(x, 0) == x). Without an explicit Jacobian, it is formed by central
/// differences in that chart. Rejected steps raise the damping tenfold.
template <class State>
LmResult<State> minimize_least_squares(int dim, const ResidualFn<State>& residual,
                                       const RetractFn<State>& retract, State start,
                                       const LmOptions& options = {},
                                       const JacobianFn<State>& jacobian = {}) {
  LmResult<State> out{std::move(start), 0.0, 0};
  Eigen::VectorXd r = residual(out.state);
  out.cost = 0.5 * r.squaredNorm();
  double damping = 1e-3;
  for (int it = 0; it < options.max_iterations; ++it) {
    out.iterations = it + 1;
    if (out.cost <= options.cost_floor) break;
    Eigen::MatrixXd jac;
    if (jacobian) {
      jac = jacobian(out.state);
    } else {
      jac.resize(r.size(), dim);
      for (int k = 0; k < dim; ++k) {
        Eigen::VectorXd d = Eigen::VectorXd::Zero(dim);
        d(k) = options.jacobian_step;
        jac.col(k) = (residual(retract(out.state, d)) - residual(retract(out.state, -d))) /
                     (2.0 * options.jacobian_step);
      }
    }
    const Eigen::VectorXd grad = jac.transpose() * r;
    if (grad.norm() < options.gradient_tolerance) break;
    const Eigen::MatrixXd normal = jac.transpose() * jac;
    bool accepted = false;
    bool stalled = false;
    for (int tries = 0; tries < 30 && !accepted; ++tries) {
      Eigen::MatrixXd lhs = normal;
      lhs.diagonal() += damping * (normal.diagonal().array() + 1e-12).matrix();
      const Eigen::VectorXd step = lhs.ldlt().solve(-grad);
      State candidate = retract(out.state, step);
      Eigen::VectorXd rc = residual(candidate);
      const double cost = 0.5 * rc.squaredNorm();
      if (std::isfinite(cost) && cost < out.cost) {
        stalled = cost > (1.0 - options.relative_decrease_tolerance) * out.cost;
        out.state = std::move(candidate);
        r = std::move(rc);
        out.cost = cost;
        damping = std::max(damping / 10.0, 1e-12);
        accepted = true;
      } else {
        damping *= 10.0;
      }
    }
    if (!accepted || stalled) break;
  }
  return out;
}

}  // namespace austere4::numerics
