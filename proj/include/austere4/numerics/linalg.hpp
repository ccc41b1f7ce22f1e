#pragma once

#include <Eigen/Dense>

#include <vector>

namespace austere4::numerics {

/// Real symmetric matrix. Entries are stored exactly symmetric.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int dim);
  /// Throws PreconditionError if `m` is not square or is visibly asymmetric;
  /// otherwise stores (m + m^T) / 2.
  explicit SymMatrix(const Eigen::MatrixXd& m);

  static SymMatrix zero(int dim) { return SymMatrix(dim); }
  static SymMatrix diagonal(const Eigen::VectorXd& d);

  int dim() const { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }
  const Eigen::MatrixXd& matrix() const { return m_; }

  /// Sets both (i, j) and (j, i).
  void set(int i, int j, double v);

  double norm() const { return m_.norm(); }
  double trace() const { return m_.trace(); }

  /// Row-major upper triangle with off-diagonal entries weighted by sqrt(2),
  /// so the Euclidean norm of the result is the Frobenius norm.
  Eigen::VectorXd flatten() const;
  /// Inverse of flatten().
  static SymMatrix unflatten(const Eigen::VectorXd& v, int dim);

  /// R S R^T.
  SymMatrix conjugated(const Eigen::MatrixXd& r) const;

  SymMatrix operator+(const SymMatrix& o) const { return SymMatrix(m_ + o.m_); }
  SymMatrix operator-(const SymMatrix& o) const { return SymMatrix(m_ - o.m_); }
  SymMatrix operator*(double c) const;

 private:
  Eigen::MatrixXd m_;
};

inline SymMatrix operator*(double c, const SymMatrix& s) { return s * c; }

struct SymEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns
};

inline constexpr int kJacobiSweepCap = 100;

/// Cyclic Jacobi eigensolver. Throws NumericalFault if the sweep cap is hit.
SymEigen sym_eig(const SymMatrix& s);

/// Orthonormal basis of the orthogonal complement of col(b).
///
/// Columns are chosen by Gram-Schmidt against the standard basis, taking at
/// each step the coordinate vector with the largest residual. Throws
/// SingularImmersionError if sigma_min(b) <= 1e-10 sigma_max(b).
Eigen::MatrixXd orthonormal_complement(const Eigen::MatrixXd& b);

/// Q from the thin QR of `b` by twice-iterated modified Gram-Schmidt in column
/// order; the returned triangular factor has a positive diagonal.
struct ThinQr {
  Eigen::MatrixXd q;
  Eigen::MatrixXd r;
};
ThinQr gram_schmidt(const Eigen::MatrixXd& b);

inline constexpr double kDefaultRankTolerance = 1e-8;

/// Number of singular values above tol * sigma_max (and above `abs_floor`).
int numerical_rank(const std::vector<Eigen::VectorXd>& vectors,
                   double tol = kDefaultRankTolerance, double abs_floor = 0.0);

/// Orthonormal basis of the numerical null space of `a` (columns), using
/// singular values <= tol * max(sigma_max, 1).
Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double tol);

/// Smallest singular value of `a` (0 for a wide matrix).
double smallest_singular_value(const Eigen::MatrixXd& a);

}  // namespace austere4::numerics
