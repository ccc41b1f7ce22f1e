#pragma once

#include <Eigen/Dense>

#include <random>
#include <vector>

#include "austere4/austere/subspace.hpp"
#include "austere4/numerics/linalg.hpp"
#include "austere4/numerics/random.hpp"

namespace testing_support {

using austere4::austere::SymSpan;
using austere4::numerics::SymMatrix;

inline Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

inline SymMatrix diag(std::initializer_list<double> v) { return SymMatrix::diagonal(vec(v)); }

/// k random combinations of the span's basis (generically the same span
/// when k >= span_dim).
inline SymSpan random_subspace(const SymSpan& span, int k, austere4::numerics::Rng& rng) {
  std::vector<SymMatrix> out;
  for (int i = 0; i < k; ++i) {
    Eigen::VectorXd c(static_cast<Eigen::Index>(span.basis().size()));
    for (Eigen::Index j = 0; j < c.size(); ++j) c(j) = austere4::numerics::gaussian(rng);
    out.push_back(span.element(c));
  }
  return SymSpan(span.dim_ambient(), out);
}

inline Eigen::MatrixXd random_orthogonal_with_det(int n, double det_sign,
                                                  austere4::numerics::Rng& rng) {
  Eigen::MatrixXd r = austere4::numerics::random_rotation(n, rng);
  if (det_sign < 0) r.col(0) *= -1.0;
  return r;
}

}  // namespace testing_support
