#include "austere4/geometry/frame.hpp"

#include <algorithm>
#include <cmath>

#include "austere4/numerics/errors.hpp"

namespace austere4::geometry {

using numerics::SymMatrix;

Eigen::MatrixXd PointFrame::frame_from_coords() const {
  return coord_to_frame.triangularView<Eigen::Upper>().solve(
      Eigen::MatrixXd::Identity(coord_to_frame.rows(), coord_to_frame.cols()));
}

PointFrame frame_from_jet(const numerics::Jet2& jet) {
  const int n = jet.range_dim();
  const int m = jet.domain_dim();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jet.jacobian);
  const auto& sv = svd.singularValues();
  if (!(sv(m - 1) > 1e-10 * sv(0))) {
    throw SingularImmersionError("immersion Jacobian is rank deficient at this point");
  }
  numerics::ThinQr qr = numerics::gram_schmidt(jet.jacobian);
  PointFrame f;
  f.point = jet.value;
  f.tangent_frame = qr.q;
  f.normal_frame = numerics::orthonormal_complement(qr.q);
  Eigen::MatrixXd full(n, n);
  full << f.tangent_frame, f.normal_frame;
  if (full.determinant() < 0.0) f.normal_frame.col(n - m - 1) *= -1.0;
  f.coord_to_frame = qr.r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(m, m));
  return f;
}

PointFrame frame_at(const Immersion& imm, const Eigen::VectorXd& x) {
  return frame_from_jet(imm.jet(x));
}

Eigen::VectorXd SecondFundamentalForm::ambient(int i, int j) const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(frame.normal_frame.rows());
  for (int a = 0; a < codim(); ++a) v += components[a](i, j) * frame.normal_frame.col(a);
  return v;
}

SecondFundamentalForm second_fundamental_form(const numerics::Jet2& jet) {
  SecondFundamentalForm sff;
  sff.frame = frame_from_jet(jet);
  const int n = jet.range_dim();
  const int m = jet.domain_dim();
  const Eigen::MatrixXd& v = sff.frame.coord_to_frame;
  for (int a = 0; a < n - m; ++a) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
    for (int c = 0; c < n; ++c) h += sff.frame.normal_frame(c, a) * jet.hessian[c];
    sff.components.emplace_back(Eigen::MatrixXd(v.transpose() * h * v));
  }
  return sff;
}

SecondFundamentalForm second_fundamental_form(const Immersion& imm, const Eigen::VectorXd& x) {
  return second_fundamental_form(imm.jet(x));
}

SymMatrix shape_operator(const SecondFundamentalForm& sff, const Eigen::VectorXd& xi) {
  if (xi.size() != sff.codim()) throw PreconditionError("shape_operator: wrong normal dimension");
  if (std::abs(xi.norm() - 1.0) > 1e-10) {
    throw PreconditionError("shape_operator: normal direction must be a unit vector");
  }
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(sff.domain_dim(), sff.domain_dim());
  for (int a = 0; a < sff.codim(); ++a) s += xi(a) * sff.components[a].matrix();
  return SymMatrix(s);
}

Eigen::VectorXd mean_curvature_vector(const SecondFundamentalForm& sff) {
  Eigen::VectorXd h(sff.codim());
  for (int a = 0; a < sff.codim(); ++a) h(a) = sff.components[a].trace();
  return h;
}

int normal_rank(const SecondFundamentalForm& sff, double tol) {
  std::vector<Eigen::VectorXd> flat;
  for (const auto& s : sff.components) flat.push_back(s.flatten());
  return numerics::numerical_rank(flat, tol, kCurvatureFloor);
}

RelativeNullity relative_nullity(const SecondFundamentalForm& sff, double tol) {
  const int m = sff.domain_dim();
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(m, m);
  for (const auto& s : sff.components) sum += s.matrix() * s.matrix();
  const numerics::SymEigen eig = numerics::sym_eig(SymMatrix(sum));
  const double cut = std::max(tol * eig.values(m - 1), kCurvatureFloor * kCurvatureFloor);
  RelativeNullity out;
  std::vector<int> cols;
  for (int i = 0; i < m; ++i) {
    if (eig.values(i) <= cut) cols.push_back(i);
  }
  out.dimension = static_cast<int>(cols.size());
  out.basis.resize(m, out.dimension);
  for (int k = 0; k < out.dimension; ++k) out.basis.col(k) = eig.vectors.col(cols[k]);
  return out;
}

int gauss_map_rank(const SecondFundamentalForm& sff, double tol) {
  return sff.domain_dim() - relative_nullity(sff, tol).dimension;
}

}  // namespace austere4::geometry
