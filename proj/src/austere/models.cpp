#include "austere4/austere/models.hpp"

#include <cmath>

#include "austere4/numerics/errors.hpp"

namespace austere4::austere {

Eigen::Matrix4d qa_complex_structure() {
  Eigen::Matrix4d j;
  j << 0, -1, 0, 0,
       1, 0, 0, 0,
       0, 0, 0, -1,
       0, 0, 1, 0;
  return j;
}

SymSpan qa_basis() {
  // Linear operator S |-> SJ + JS on the flattened symmetric matrices.
  const Eigen::Matrix4d j = qa_complex_structure();
  constexpr int kSymDim = 10;
  Eigen::MatrixXd op(16, kSymDim);
  for (int k = 0; k < kSymDim; ++k) {
    const SymMatrix e = SymMatrix::unflatten(Eigen::VectorXd::Unit(kSymDim, k), 4);
    const Eigen::Matrix4d image = e.matrix() * j + j * e.matrix();
    op.col(k) = Eigen::Map<const Eigen::VectorXd>(image.data(), 16);
  }
  const Eigen::MatrixXd kernel = numerics::null_space(op, 1e-12);
  std::vector<SymMatrix> basis;
  for (int k = 0; k < kernel.cols(); ++k) basis.push_back(SymMatrix::unflatten(kernel.col(k), 4));
  return SymSpan(4, std::move(basis));
}

SymMatrix qb_matrix(double m, double b1, double b2, double b3, double b4) {
  Eigen::Matrix4d s;
  s << m, 0, b1, b2,
       0, m, b3, b4,
       b1, b3, -m, 0,
       b2, b4, 0, -m;
  return SymMatrix(Eigen::MatrixXd(s));
}

SymSpan qb_basis() {
  return SymSpan(4, {qb_matrix(1, 0, 0, 0, 0), qb_matrix(0, 1, 0, 0, 0), qb_matrix(0, 0, 1, 0, 0),
                     qb_matrix(0, 0, 0, 1, 0), qb_matrix(0, 0, 0, 0, 1)});
}

QCParams::QCParams(double lambda1, double lambda2, double lambda3) : l_(lambda1, lambda2, lambda3) {
  if (!valid()) {
    throw PreconditionError("QCParams: l1 l2 l3 + l1 + l2 + l3 = " +
                            std::to_string(relation_residual()) + " is not zero");
  }
}

QCParams QCParams::unchecked(double lambda1, double lambda2, double lambda3) {
  QCParams p;
  p.l_ = Eigen::Vector3d(lambda1, lambda2, lambda3);
  return p;
}

double QCParams::relation_residual() const {
  return l_[0] * l_[1] * l_[2] + l_[0] + l_[1] + l_[2];
}

bool QCParams::valid() const { return std::abs(relation_residual()) < kLambdaRelationTolerance; }

double lambda3_from(double lambda1, double lambda2) {
  const double den = 1.0 + lambda1 * lambda2;
  if (std::abs(den) <= 1e-10) {
    throw PreconditionError("lambda3_from: 1 + l1 l2 vanishes; l3 is undetermined");
  }
  return -(lambda1 + lambda2) / den;
}

SymMatrix qc_pattern(double x1, double x2, double x3, const Eigen::Vector3d& l) {
  Eigen::Matrix4d s;
  s << 0, x1, x2, x3,
       x1, 0, l[2] * x3, l[1] * x2,
       x2, l[2] * x3, 0, l[0] * x1,
       x3, l[1] * x2, l[0] * x1, 0;
  return SymMatrix(Eigen::MatrixXd(s));
}

SymMatrix qc_matrix(double x1, double x2, double x3, const QCParams& params) {
  if (!params.valid()) throw PreconditionError("qc_matrix: invalid QCParams");
  return qc_pattern(x1, x2, x3, params.lambdas());
}

SymSpan qc_basis(const QCParams& params) {
  return SymSpan(4, {qc_matrix(1, 0, 0, params), qc_matrix(0, 1, 0, params),
                     qc_matrix(0, 0, 1, params)});
}

SymSpan qc_basis_unchecked(const Eigen::Vector3d& lambdas) {
  return SymSpan(4, {qc_pattern(1, 0, 0, lambdas), qc_pattern(0, 1, 0, lambdas),
                     qc_pattern(0, 0, 1, lambdas)});
}

}  // namespace austere4::austere
