#include "austere4/families/families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "austere4/geometry/holomorphy.hpp"
#include "austere4/geometry/ruling.hpp"
#include "austere4/numerics/errors.hpp"

namespace austere4::families {

using numerics::Box;
using numerics::ComplexExpr;
using numerics::Expr;

namespace {

Expr var(int i) { return Expr::variable(i); }

void check_curve(const HoloCurveSpec& spec, int min_components) {
  if (spec.n_complex() < min_components) {
    throw PreconditionError("holomorphic curve needs at least " + std::to_string(min_components) +
                            " components");
  }
  bool nonconstant = false;
  for (const auto& c : spec.coefficients) {
    if (c.empty()) throw PreconditionError("holomorphic curve component has no coefficients");
    if (static_cast<int>(c.size()) > kMaxCurveDegree + 1) {
      throw PreconditionError("holomorphic curve degree exceeds " + std::to_string(kMaxCurveDegree));
    }
    for (std::size_t j = 1; j < c.size(); ++j) nonconstant |= c[j] != 0.0;
  }
  if (!nonconstant) throw PreconditionError("holomorphic curve must have degree >= 1");
}

void check_nonvanishing(const HoloCurveSpec& spec, const Box& box) {
  constexpr int kGrid = 9;
  for (int a = 0; a < kGrid; ++a) {
    for (int b = 0; b < kGrid; ++b) {
      const double re = box.lower(2) + (box.upper(2) - box.lower(2)) * a / (kGrid - 1);
      const double im = box.lower(3) + (box.upper(3) - box.lower(3)) * b / (kGrid - 1);
      double norm = 0.0;
      for (const auto& v : spec.evaluate({re, im})) norm += std::norm(v);
      if (std::sqrt(norm) < 1e-12) throw PreconditionError("holomorphic curve vanishes on the domain");
    }
  }
}

ComplexExpr polynomial(const std::vector<std::complex<double>>& coeffs, const ComplexExpr& z) {
  ComplexExpr acc{coeffs.back().real(), coeffs.back().imag()};
  for (std::size_t j = coeffs.size() - 1; j-- > 0;) {
    acc = acc * z + ComplexExpr{coeffs[j].real(), coeffs[j].imag()};
  }
  return acc;
}

}  // namespace

Box default_helicoid_domain(int m) {
  Box b{Eigen::VectorXd::Constant(m, 0.2), Eigen::VectorXd::Constant(m, 2.0)};
  b.lower(0) = 0.0;
  b.upper(0) = 2.0 * std::numbers::pi;
  return b;
}

Immersion generalized_helicoid(const HelicoidSpec& spec) {
  if (spec.s < 1 || spec.s >= spec.m) throw PreconditionError("helicoid needs 1 <= s < m");
  if (static_cast<int>(spec.lambdas.size()) != spec.s + 1) {
    throw PreconditionError("helicoid needs lambdas l0..ls");
  }
  for (int i = 1; i <= spec.s; ++i) {
    if (spec.lambdas[static_cast<std::size_t>(i)] == 0.0) {
      throw PreconditionError("helicoid lambda" + std::to_string(i) + " must be nonzero");
    }
  }
  std::vector<Expr> f{spec.lambdas[0] * var(0)};
  for (int i = 1; i <= spec.s; ++i) {
    const Expr angle = spec.lambdas[static_cast<std::size_t>(i)] * var(0);
    f.push_back(var(i) * cos(angle));
    f.push_back(var(i) * sin(angle));
  }
  for (int i = spec.s + 1; i < spec.m; ++i) f.push_back(var(i));

  std::vector<int> ruling;
  const int last = spec.full_ruling ? spec.m - 1 : spec.s;
  for (int i = 1; i <= last; ++i) ruling.push_back(i);
  Box domain = spec.domain.value_or(default_helicoid_domain(spec.m));
  return Immersion("helicoid", numerics::VectorMap(spec.m, std::move(f)), std::move(domain),
                   std::move(ruling));
}

Immersion classical_helicoid(double pitch) {
  HelicoidSpec spec;
  spec.m = 2;
  spec.s = 1;
  spec.lambdas = {pitch, 1.0};
  return generalized_helicoid(spec).renamed("classical_helicoid");
}

Immersion product_immersion(const Immersion& a, const Immersion& b) {
  const int ma = a.domain_dim();
  const int mb = b.domain_dim();
  std::vector<Expr> shift;
  for (int i = 0; i < mb; ++i) shift.push_back(var(ma + i));
  std::vector<Expr> f = a.evaluator().components();
  for (const auto& c : b.evaluator().components()) f.push_back(c.substitute(shift));

  Box domain{Eigen::VectorXd(ma + mb), Eigen::VectorXd(ma + mb)};
  domain.lower << a.domain().lower, b.domain().lower;
  domain.upper << a.domain().upper, b.domain().upper;
  std::vector<int> ruling = a.ruling_coords();
  for (int c : b.ruling_coords()) ruling.push_back(ma + c);
  return Immersion(a.name() + "_x_" + b.name(), numerics::VectorMap(ma + mb, std::move(f)),
                   std::move(domain), std::move(ruling));
}

Immersion cylinder_over(const Immersion& a, int k) {
  if (k < 1) throw PreconditionError("cylinder_over: k must be positive");
  const int ma = a.domain_dim();
  std::vector<Expr> f = a.evaluator().components();
  for (int i = 0; i < k; ++i) f.push_back(var(ma + i));
  Box domain{Eigen::VectorXd(ma + k), Eigen::VectorXd(ma + k)};
  domain.lower << a.domain().lower, Eigen::VectorXd::Constant(k, -1.0);
  domain.upper << a.domain().upper, Eigen::VectorXd::Constant(k, 1.0);
  std::vector<int> ruling = a.ruling_coords();
  for (int i = 0; i < k; ++i) ruling.push_back(ma + i);
  return Immersion(a.name() + "_x_R" + std::to_string(k),
                   numerics::VectorMap(ma + k, std::move(f)), std::move(domain), std::move(ruling));
}

Immersion helicoid_cone(double lambda) {
  if (lambda == 0.0) throw PreconditionError("helicoid_cone: lambda must be nonzero");
  HelicoidSpec spec;
  spec.m = 4;
  spec.s = 3;
  spec.lambdas = {0.0, lambda, lambda, lambda};
  const Immersion full = generalized_helicoid(spec);
  std::vector<Expr> f(full.evaluator().components().begin() + 1, full.evaluator().components().end());
  return Immersion("helicoid_cone", numerics::VectorMap(4, std::move(f)), full.domain(), {1, 2, 3});
}

std::vector<std::complex<double>> HoloCurveSpec::evaluate(std::complex<double> z) const {
  std::vector<std::complex<double>> out;
  for (const auto& c : coefficients) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = c.size(); j-- > 0;) acc = acc * z + c[j];
    out.push_back(acc);
  }
  return out;
}

Box default_complex_domain() {
  Box b{Eigen::VectorXd(4), Eigen::VectorXd(4)};
  b.lower << 0.2, 0.2, -1.0, -1.0;
  b.upper << 2.0, 2.0, 1.0, 1.0;
  return b;
}

Immersion complex_cone(const HoloCurveSpec& spec) {
  check_curve(spec, 3);
  Box domain = spec.domain.value_or(default_complex_domain());
  check_nonvanishing(spec, domain);
  const ComplexExpr w{var(0), var(1)};
  const ComplexExpr z{var(2), var(3)};
  std::vector<Expr> f;
  for (const auto& c : spec.coefficients) {
    const ComplexExpr v = w * polynomial(c, z);
    f.push_back(v.re);
    f.push_back(v.im);
  }
  return Immersion("complex_cone", numerics::VectorMap(4, std::move(f)), std::move(domain), {0, 1},
                   geometry::standard_coordinate_complex_structure());
}

Immersion complex_cylinder(const HoloCurveSpec& spec) {
  check_curve(spec, 2);
  Box domain = spec.domain.value_or(default_complex_domain());
  const ComplexExpr z{var(2), var(3)};
  std::vector<Expr> f{var(0), var(1)};
  for (const auto& c : spec.coefficients) {
    const ComplexExpr v = polynomial(c, z);
    f.push_back(v.re);
    f.push_back(v.im);
  }
  return Immersion("complex_cylinder", numerics::VectorMap(4, std::move(f)), std::move(domain),
                   {0, 1}, geometry::standard_coordinate_complex_structure());
}

Immersion sphere(int n, double radius) {
  if (n < 3) throw PreconditionError("sphere: ambient dimension must be at least 3");
  if (!(radius > 0.0)) throw PreconditionError("sphere: radius must be positive");
  const int m = n - 1;
  std::vector<Expr> f;
  Expr prefix(radius);
  for (int k = 0; k < m - 1; ++k) {
    f.push_back(prefix * cos(var(k)));
    prefix = prefix * sin(var(k));
  }
  f.push_back(prefix * cos(var(m - 1)));
  f.push_back(prefix * sin(var(m - 1)));
  Box domain{Eigen::VectorXd::Constant(m, 0.3), Eigen::VectorXd::Constant(m, std::numbers::pi - 0.3)};
  domain.lower(m - 1) = 0.0;
  domain.upper(m - 1) = 2.0 * std::numbers::pi;
  return Immersion("sphere", numerics::VectorMap(m, std::move(f)), std::move(domain));
}

Immersion flat_plane(int m, int n) {
  if (m < 1 || m >= n) throw PreconditionError("flat_plane needs 1 <= m < n");
  std::vector<Expr> f;
  for (int i = 0; i < m; ++i) f.push_back(var(i));
  for (int i = m; i < n; ++i) f.emplace_back(0.0);
  std::vector<int> ruling;
  for (int i = 0; i < m; ++i) ruling.push_back(i);
  return Immersion("plane", numerics::VectorMap(m, std::move(f)),
                   Box{Eigen::VectorXd::Constant(m, -1.0), Eigen::VectorXd::Constant(m, 1.0)},
                   std::move(ruling));
}

AnnotationCheck check_annotations(const Immersion& imm, int samples, std::uint64_t seed) {
  AnnotationCheck out;
  for (const auto& x : geometry::sample_domain(imm.domain(), {}, samples, seed)) {
    if (imm.has_ruling()) {
      out.ruling_straightness =
          std::max(out.ruling_straightness, geometry::ruling_straightness_defect(imm, x, 4));
    }
    if (imm.has_complex_structure() && imm.ruling_coords().size() == 2) {
      out.j_invariance = std::max(out.j_invariance, geometry::ruling_j_invariance_defect(imm, x));
    }
  }
  return out;
}

}  // namespace austere4::families
