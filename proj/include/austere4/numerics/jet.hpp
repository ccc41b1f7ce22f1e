#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <vector>

#include "austere4/numerics/expr.hpp"

namespace austere4::numerics {

inline constexpr int kMaxDomainDim = 8;

using Gradient = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDomainDim, 1>;
using Curvature =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDomainDim, kMaxDomainDim>;

/// Truncated second-order Taylor scalar: value, gradient and Hessian with
/// respect to the m domain variables. Hessians stay exactly symmetric under
/// every operation below.
struct TaylorScalar {
  double value = 0.0;
  Gradient grad;
  Curvature hess;

  static TaylorScalar constant(double c, int dim);
  static TaylorScalar variable(double x, int index, int dim);
};

/// A map R^m -> R^n given by one expression per output component.
class VectorMap {
 public:
  VectorMap() = default;
  VectorMap(int domain_dim, std::vector<Expr> components);

  int domain_dim() const { return domain_dim_; }
  int range_dim() const { return static_cast<int>(components_.size()); }
  const std::vector<Expr>& components() const { return components_; }

  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const;

 private:
  int domain_dim_ = 0;
  std::vector<Expr> components_;
};

/// Value, Jacobian (n x m) and Hessian (n slices of m x m) of a map at a point.
struct Jet2 {
  Eigen::VectorXd value;
  Eigen::MatrixXd jacobian;
  std::vector<Eigen::MatrixXd> hessian;

  int range_dim() const { return static_cast<int>(value.size()); }
  int domain_dim() const { return static_cast<int>(jacobian.cols()); }
};

double evaluate(const Expr& e, std::span<const double> x);
TaylorScalar evaluate_taylor(const Expr& e, std::span<const TaylorScalar> x);

/// Exact second-order jet of `f` at `x` by Taylor arithmetic.
Jet2 jet_eval(const VectorMap& f, const Eigen::VectorXd& x);

/// Axis-aligned closed box in parameter space.
struct Box {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  int dim() const { return static_cast<int>(lower.size()); }
  bool contains(const Eigen::VectorXd& x) const;
  Box shrunk(double fraction) const;
};

struct FiniteDifferenceJet {
  Eigen::MatrixXd jacobian;
  std::vector<Eigen::MatrixXd> hessian;
};

inline constexpr double kDefaultFiniteDifferenceStep = 1e-4;

/// Central-difference Jacobian and Hessian; O(h^2) accurate. When `domain`
/// is given, every stencil point x +- h e_i +- h e_j must lie inside it.
FiniteDifferenceJet finite_diff_second(const VectorMap& f, const Eigen::VectorXd& x,
                                       double h = kDefaultFiniteDifferenceStep,
                                       const std::optional<Box>& domain = std::nullopt);

}  // namespace austere4::numerics
