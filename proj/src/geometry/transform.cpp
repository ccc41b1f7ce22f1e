#include "austere4/geometry/transform.hpp"

#include <algorithm>

#include "austere4/numerics/errors.hpp"

namespace austere4::geometry {

using numerics::Expr;

Immersion rigidly_moved(const Immersion& imm, const Eigen::MatrixXd& rotation,
                        const Eigen::VectorXd& shift) {
  const int n = imm.ambient_dim();
  if (rotation.rows() != n || rotation.cols() != n || shift.size() != n) {
    throw PreconditionError("rigidly_moved: dimension mismatch");
  }
  const auto& f = imm.evaluator().components();
  std::vector<Expr> out;
  for (int i = 0; i < n; ++i) {
    Expr e(shift(i));
    for (int j = 0; j < n; ++j) e += rotation(i, j) * f[j];
    out.push_back(e);
  }
  return Immersion(imm.name() + "-moved", numerics::VectorMap(imm.domain_dim(), std::move(out)),
                   imm.domain(), imm.ruling_coords(),
                   imm.has_complex_structure()
                       ? std::optional<Eigen::Matrix4d>(imm.complex_structure())
                       : std::nullopt);
}

Immersion reparametrized(const Immersion& imm, const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  const int m = imm.domain_dim();
  if (a.rows() != m || a.cols() != m || b.size() != m) {
    throw PreconditionError("reparametrized: dimension mismatch");
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) throw PreconditionError("reparametrized: matrix is singular");

  std::vector<Expr> vars;
  for (int i = 0; i < m; ++i) {
    Expr e(b(i));
    for (int j = 0; j < m; ++j) e += a(i, j) * Expr::variable(j);
    vars.push_back(e);
  }
  std::vector<Expr> out;
  for (const auto& c : imm.evaluator().components()) out.push_back(c.substitute(vars));

  numerics::Box dom{Eigen::VectorXd::Constant(m, 1e300), Eigen::VectorXd::Constant(m, -1e300)};
  const numerics::Box& old = imm.domain();
  for (int corner = 0; corner < (1 << m); ++corner) {
    Eigen::VectorXd x(m);
    for (int i = 0; i < m; ++i) x(i) = (corner >> i) & 1 ? old.upper(i) : old.lower(i);
    Eigen::VectorXd y = lu.solve(x - b);
    dom.lower = dom.lower.cwiseMin(y);
    dom.upper = dom.upper.cwiseMax(y);
  }
  return Immersion(imm.name() + "-reparametrized", numerics::VectorMap(m, std::move(out)), dom);
}

}  // namespace austere4::geometry
