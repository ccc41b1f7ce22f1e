#include "austere4/numerics/jet.hpp"

#include <cmath>
#include <string>

#include "austere4/numerics/errors.hpp"

namespace austere4::numerics {
namespace {

using Op = Expr::Op;

std::string show(double v) { return std::to_string(v); }

double eval_double(const Expr::Node& n, std::span<const double> x) {
  switch (n.op) {
    case Op::kConst:
      return n.scalar;
    case Op::kVar:
      if (n.index >= static_cast<int>(x.size())) {
        throw PreconditionError("variable x" + std::to_string(n.index) + " out of range");
      }
      return x[static_cast<std::size_t>(n.index)];
    case Op::kAdd: return eval_double(*n.lhs, x) + eval_double(*n.rhs, x);
    case Op::kSub: return eval_double(*n.lhs, x) - eval_double(*n.rhs, x);
    case Op::kMul: return eval_double(*n.lhs, x) * eval_double(*n.rhs, x);
    case Op::kDiv: {
      double den = eval_double(*n.rhs, x);
      if (den == 0.0) throw DomainError("div", "division by zero");
      return eval_double(*n.lhs, x) / den;
    }
    case Op::kNeg: return -eval_double(*n.lhs, x);
    case Op::kSin: return std::sin(eval_double(*n.lhs, x));
    case Op::kCos: return std::cos(eval_double(*n.lhs, x));
    case Op::kExp: return std::exp(eval_double(*n.lhs, x));
    case Op::kSqrt: {
      double a = eval_double(*n.lhs, x);
      if (a < 0.0) throw DomainError("sqrt", "negative argument " + show(a));
      return std::sqrt(a);
    }
    case Op::kPowInt: {
      double a = eval_double(*n.lhs, x);
      if (n.index < 0 && a == 0.0) throw DomainError("pow", "zero base with negative exponent");
      return std::pow(a, n.index);
    }
    case Op::kPowReal: {
      double a = eval_double(*n.lhs, x);
      if (a <= 0.0) throw DomainError("pow", "nonpositive base " + show(a) + " with real exponent");
      return std::pow(a, n.scalar);
    }
  }
  return 0.0;
}

// f(u) with f'(u) = d1, f''(u) = d2 applied to a Taylor scalar.
TaylorScalar chain(const TaylorScalar& u, double f, double d1, double d2) {
  TaylorScalar r;
  r.value = f;
  r.grad = d1 * u.grad;
  // Evaluated before scaling: Eigen would otherwise fold d2 into one factor
  // and (i, j), (j, i) would round differently.
  const Curvature outer = u.grad * u.grad.transpose();
  r.hess = d1 * u.hess + d2 * outer;
  return r;
}

TaylorScalar add(const TaylorScalar& a, const TaylorScalar& b, double sign) {
  TaylorScalar r;
  r.value = a.value + sign * b.value;
  r.grad = a.grad + sign * b.grad;
  r.hess = a.hess + sign * b.hess;
  return r;
}

TaylorScalar mul(const TaylorScalar& a, const TaylorScalar& b) {
  TaylorScalar r;
  r.value = a.value * b.value;
  r.grad = b.value * a.grad + a.value * b.grad;
  // The cross term is formed first so that (i, j) and (j, i) round identically.
  Curvature cross = a.grad * b.grad.transpose() + b.grad * a.grad.transpose();
  r.hess = b.value * a.hess + a.value * b.hess + cross;
  return r;
}

TaylorScalar eval_taylor(const Expr::Node& n, std::span<const TaylorScalar> x, int dim) {
  switch (n.op) {
    case Op::kConst:
      return TaylorScalar::constant(n.scalar, dim);
    case Op::kVar:
      if (n.index >= static_cast<int>(x.size())) {
        throw PreconditionError("variable x" + std::to_string(n.index) + " out of range");
      }
      return x[static_cast<std::size_t>(n.index)];
    case Op::kAdd: return add(eval_taylor(*n.lhs, x, dim), eval_taylor(*n.rhs, x, dim), 1.0);
    case Op::kSub: return add(eval_taylor(*n.lhs, x, dim), eval_taylor(*n.rhs, x, dim), -1.0);
    case Op::kMul: return mul(eval_taylor(*n.lhs, x, dim), eval_taylor(*n.rhs, x, dim));
    case Op::kDiv: {
      TaylorScalar den = eval_taylor(*n.rhs, x, dim);
      double v = den.value;
      if (v == 0.0) throw DomainError("div", "division by zero");
      TaylorScalar inv = chain(den, 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
      return mul(eval_taylor(*n.lhs, x, dim), inv);
    }
    case Op::kNeg: {
      TaylorScalar a = eval_taylor(*n.lhs, x, dim);
      a.value = -a.value;
      a.grad = -a.grad;
      a.hess = -a.hess;
      return a;
    }
    case Op::kSin: {
      TaylorScalar a = eval_taylor(*n.lhs, x, dim);
      double s = std::sin(a.value), c = std::cos(a.value);
      return chain(a, s, c, -s);
    }
    case Op::kCos: {
      TaylorScalar a = eval_taylor(*n.lhs, x, dim);
      double s = std::sin(a.value), c = std::cos(a.value);
      return chain(a, c, -s, -c);
    }
    case Op::kExp: {
      TaylorScalar a = eval_taylor(*n.lhs, x, dim);
      double e = std::exp(a.value);
      return chain(a, e, e, e);
    }
    case Op::kSqrt: {
      TaylorScalar a = eval_taylor(*n.lhs, x, dim);
      if (a.value < 0.0) throw DomainError("sqrt", "negative argument " + show(a.value));
      if (a.value == 0.0) throw DomainError("sqrt", "not differentiable at 0");
      double r = std::sqrt(a.value);
      return chain(a, r, 0.5 / r, -0.25 / (r * a.value));
    }
    case Op::kPowInt: {
      TaylorScalar a = eval_taylor(*n.lhs, x, dim);
      const int k = n.index;
      if (k < 0 && a.value == 0.0) throw DomainError("pow", "zero base with negative exponent");
      double f = std::pow(a.value, k);
      double d1 = k * std::pow(a.value, k - 1);
      double d2 = (k == 1) ? 0.0 : k * (k - 1) * std::pow(a.value, k - 2);
      return chain(a, f, d1, d2);
    }
    case Op::kPowReal: {
      TaylorScalar a = eval_taylor(*n.lhs, x, dim);
      const double p = n.scalar;
      if (a.value <= 0.0) {
        throw DomainError("pow", "nonpositive base " + show(a.value) + " with real exponent");
      }
      double f = std::pow(a.value, p);
      return chain(a, f, p * f / a.value, p * (p - 1.0) * f / (a.value * a.value));
    }
  }
  return TaylorScalar::constant(0.0, dim);
}

}  // namespace

TaylorScalar TaylorScalar::constant(double c, int dim) {
  TaylorScalar t;
  t.value = c;
  t.grad = Gradient::Zero(dim);
  t.hess = Curvature::Zero(dim, dim);
  return t;
}

TaylorScalar TaylorScalar::variable(double x, int index, int dim) {
  TaylorScalar t = constant(x, dim);
  t.grad(index) = 1.0;
  return t;
}

VectorMap::VectorMap(int domain_dim, std::vector<Expr> components)
    : domain_dim_(domain_dim), components_(std::move(components)) {
  if (domain_dim_ < 1 || domain_dim_ > kMaxDomainDim) {
    throw PreconditionError("map domain dimension must be in [1, " +
                            std::to_string(kMaxDomainDim) + "]");
  }
  for (const auto& c : components_) {
    if (c.arity() > domain_dim_) {
      throw PreconditionError("map component references a variable beyond the domain");
    }
  }
}

Eigen::VectorXd VectorMap::operator()(const Eigen::VectorXd& x) const {
  if (x.size() != domain_dim_) throw PreconditionError("point has wrong dimension");
  std::span<const double> xs(x.data(), static_cast<std::size_t>(x.size()));
  Eigen::VectorXd out(range_dim());
  for (int a = 0; a < range_dim(); ++a) out(a) = evaluate(components_[a], xs);
  return out;
}

double evaluate(const Expr& e, std::span<const double> x) { return eval_double(e.node(), x); }

TaylorScalar evaluate_taylor(const Expr& e, std::span<const TaylorScalar> x) {
  const int dim = x.empty() ? 0 : static_cast<int>(x.front().grad.size());
  return eval_taylor(e.node(), x, dim);
}

Jet2 jet_eval(const VectorMap& f, const Eigen::VectorXd& x) {
  const int m = f.domain_dim();
  const int n = f.range_dim();
  if (x.size() != m) throw PreconditionError("jet_eval: point has wrong dimension");
  std::vector<TaylorScalar> vars;
  vars.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) vars.push_back(TaylorScalar::variable(x(i), i, m));

  Jet2 jet;
  jet.value.resize(n);
  jet.jacobian.resize(n, m);
  jet.hessian.resize(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    TaylorScalar t = eval_taylor(f.components()[a].node(), vars, m);
    jet.value(a) = t.value;
    jet.jacobian.row(a) = t.grad.transpose();
    jet.hessian[static_cast<std::size_t>(a)] = t.hess;
  }
  return jet;
}

bool Box::contains(const Eigen::VectorXd& x) const {
  if (x.size() != lower.size()) return false;
  for (int i = 0; i < x.size(); ++i) {
    if (x(i) < lower(i) || x(i) > upper(i)) return false;
  }
  return true;
}

Box Box::shrunk(double fraction) const {
  Box b = *this;
  Eigen::VectorXd pad = fraction * (upper - lower);
  b.lower += pad;
  b.upper -= pad;
  return b;
}

FiniteDifferenceJet finite_diff_second(const VectorMap& f, const Eigen::VectorXd& x, double h,
                                       const std::optional<Box>& domain) {
  const int m = f.domain_dim();
  const int n = f.range_dim();
  if (!(h > 0.0)) throw PreconditionError("finite difference step must be positive");
  if (x.size() != m) throw PreconditionError("finite_diff_second: point has wrong dimension");

  auto at = [&](const Eigen::VectorXd& p) {
    if (domain && !domain->contains(p)) {
      throw DomainError("finite_diff_second", "stencil leaves the domain box");
    }
    return f(p);
  };
  auto shifted = [&](int i, double si, int j, double sj) {
    Eigen::VectorXd p = x;
    if (i >= 0) p(i) += si * h;
    if (j >= 0) p(j) += sj * h;
    return at(p);
  };

  FiniteDifferenceJet out;
  out.jacobian.resize(n, m);
  out.hessian.assign(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(m, m));
  const Eigen::VectorXd f0 = at(x);
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd fp = shifted(i, 1, -1, 0), fm = shifted(i, -1, -1, 0);
    out.jacobian.col(i) = (fp - fm) / (2.0 * h);
    Eigen::VectorXd dii = (fp - 2.0 * f0 + fm) / (h * h);
    for (int a = 0; a < n; ++a) out.hessian[static_cast<std::size_t>(a)](i, i) = dii(a);
    for (int j = 0; j < i; ++j) {
      Eigen::VectorXd d = (shifted(i, 1, j, 1) - shifted(i, 1, j, -1) - shifted(i, -1, j, 1) +
                           shifted(i, -1, j, -1)) /
                          (4.0 * h * h);
      for (int a = 0; a < n; ++a) {
        out.hessian[static_cast<std::size_t>(a)](i, j) = d(a);
        out.hessian[static_cast<std::size_t>(a)](j, i) = d(a);
      }
    }
  }
  return out;
}

}  // namespace austere4::numerics
