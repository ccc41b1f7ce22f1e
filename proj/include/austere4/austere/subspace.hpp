#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "austere4/numerics/linalg.hpp"

namespace austere4::austere {

using numerics::SymMatrix;

/// Linear span of symmetric matrices of a common size. The basis need not be
/// orthonormal or independent; the numerical span dimension is cached.
class SymSpan {
 public:
  SymSpan() = default;
  explicit SymSpan(int dim_ambient, std::vector<SymMatrix> basis = {},
                   double rank_tol = numerics::kDefaultRankTolerance);

  int dim_ambient() const { return dim_ambient_; }
  const std::vector<SymMatrix>& basis() const { return basis_; }
  int span_dim() const { return span_dim_; }

  /// Frobenius-orthonormal basis of the span (span_dim elements).
  std::vector<SymMatrix> orthonormal_basis() const;

  /// sum_k coeffs(k) basis[k].
  SymMatrix element(const Eigen::VectorXd& coeffs) const;

  /// {R B R^T}.
  SymSpan conjugated(const Eigen::MatrixXd& r) const;

  SymSpan scaled(double c) const;

 private:
  int dim_ambient_ = 0;
  std::vector<SymMatrix> basis_;
  int span_dim_ = 0;
  double rank_tol_ = numerics::kDefaultRankTolerance;
};

inline constexpr double kDefaultAusterityTolerance = 1e-9;

/// Odd power-trace test: |tr S^k| < tol |S|^k for every odd k <= dim.
/// The zero matrix is austere.
bool is_austere_matrix(const SymMatrix& s, double tol = kDefaultAusterityTolerance);

/// Brute-force definition: sorted eigenvalues satisfy l_i + l_{m+1-i} ~ 0.
bool eigen_symmetry_oracle(const SymMatrix& s, double tol = kDefaultAusterityTolerance);

/// Largest normalized violation of the exact subspace criterion (4x4 only):
/// traces of the unit-normalized basis elements and every symmetrized cubic
/// trace (tr(B_i B_j B_k) + tr(B_i B_k B_j)) / 2.
double austere_subspace_defect(const SymSpan& span);

bool is_austere_subspace(const SymSpan& span, double tol = kDefaultAusterityTolerance);

/// Any size up to 8: largest |symmetrized tr(B_i1 ... B_ik)| over odd k <= dim
/// and multisets of a Frobenius-orthonormal basis. Zero iff every element of
/// the span is austere.
double odd_trace_defect(const SymSpan& span);

inline constexpr int kSimpleRestarts = 32;
inline constexpr double kSimpleTolerance = 1e-8;

struct SimpleFit {
  double residual = 0.0;       // sqrt(min_u sum_i |P_u S_i P_u|^2 / dim) over orthonormal S_i
  Eigen::Vector4d factor{};    // unit covector u; the forms share the factor u
};

/// Best common linear factor for a 4x4 span by multi-start least squares on S^3.
SimpleFit fit_common_factor(const SymSpan& span, std::uint64_t seed = 0,
                            int restarts = kSimpleRestarts);

/// True iff all forms in the span share a common linear factor.
bool is_simple(const SymSpan& span, double tol = kSimpleTolerance, std::uint64_t seed = 0);

}  // namespace austere4::austere
