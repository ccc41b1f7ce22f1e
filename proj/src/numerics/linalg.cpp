#include "austere4/numerics/linalg.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "austere4/numerics/errors.hpp"

namespace austere4::numerics {

SymMatrix::SymMatrix(int dim) : m_(Eigen::MatrixXd::Zero(dim, dim)) {}

SymMatrix::SymMatrix(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw PreconditionError("SymMatrix: matrix is not square");
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (m.size() > 0 && asym > 1e-10 * scale) {
    throw PreconditionError("SymMatrix: matrix is not symmetric");
  }
  m_ = 0.5 * (m + m.transpose());
}

SymMatrix SymMatrix::diagonal(const Eigen::VectorXd& d) {
  return SymMatrix(Eigen::MatrixXd(d.asDiagonal()));
}

void SymMatrix::set(int i, int j, double v) {
  m_(i, j) = v;
  m_(j, i) = v;
}

Eigen::VectorXd SymMatrix::flatten() const {
  const int k = dim();
  Eigen::VectorXd out(k * (k + 1) / 2);
  int idx = 0;
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) out(idx++) = (i == j) ? m_(i, i) : std::sqrt(2.0) * m_(i, j);
  }
  return out;
}

SymMatrix SymMatrix::unflatten(const Eigen::VectorXd& v, int dim) {
  if (v.size() != dim * (dim + 1) / 2) throw PreconditionError("unflatten: wrong length");
  SymMatrix s(dim);
  int idx = 0;
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) {
      const double x = v(idx++);
      s.set(i, j, i == j ? x : x / std::sqrt(2.0));
    }
  }
  return s;
}

SymMatrix SymMatrix::conjugated(const Eigen::MatrixXd& r) const {
  Eigen::MatrixXd c = r * m_ * r.transpose();
  return SymMatrix(Eigen::MatrixXd(0.5 * (c + c.transpose())));
}

SymMatrix SymMatrix::operator*(double c) const { return SymMatrix(Eigen::MatrixXd(c * m_)); }

SymEigen sym_eig(const SymMatrix& s) {
  const int n = s.dim();
  Eigen::MatrixXd a = s.matrix();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double scale = a.norm();

  auto off_norm = [&] {
    double sum = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) sum += 2.0 * a(p, q) * a(p, q);
    return std::sqrt(sum);
  };

  bool converged = false;
  for (int sweep = 0; sweep < kJacobiSweepCap; ++sweep) {
    const double off = off_norm();
    if (off == 0.0 || off <= 1e-17 * scale) {
      converged = true;
      break;
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = a(p, k) = c * akp - sn * akq;
          a(k, q) = a(q, k) = sn * akp + c * akq;
        }
        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged && off_norm() > 1e-17 * scale) {
    throw NumericalFault("sym_eig: Jacobi sweep cap exceeded");
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });
  SymEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]);
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

ThinQr gram_schmidt(const Eigen::MatrixXd& b) {
  const int cols = static_cast<int>(b.cols());
  ThinQr out{b, Eigen::MatrixXd::Zero(cols, cols)};
  Eigen::MatrixXd& q = out.q;
  for (int j = 0; j < cols; ++j) {
    const double original = b.col(j).norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < j; ++i) {
        const double r = q.col(i).dot(q.col(j));
        q.col(j) -= r * q.col(i);
        out.r(i, j) += r;
      }
    }
    const double norm = q.col(j).norm();
    if (norm == 0.0 || norm <= 1e-13 * original) {
      throw SingularImmersionError("gram_schmidt: columns are linearly dependent");
    }
    q.col(j) /= norm;
    out.r(j, j) = norm;
  }
  return out;
}

Eigen::MatrixXd orthonormal_complement(const Eigen::MatrixXd& b) {
  const int n = static_cast<int>(b.rows());
  const int m = static_cast<int>(b.cols());
  if (m > n) throw SingularImmersionError("orthonormal_complement: more columns than rows");
  if (m > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(b);
    const auto& sv = svd.singularValues();
    if (!(sv(sv.size() - 1) > 1e-10 * sv(0))) {
      throw SingularImmersionError("orthonormal_complement: input is rank deficient");
    }
  }
  Eigen::MatrixXd basis(n, n);
  int filled = 0;
  if (m > 0) {
    basis.leftCols(m) = gram_schmidt(b).q;
    filled = m;
  }
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  while (filled < n) {
    int best = -1;
    double best_norm = -1.0;
    Eigen::VectorXd best_vec;
    for (int k = 0; k < n; ++k) {
      if (used[static_cast<std::size_t>(k)]) continue;
      Eigen::VectorXd v = Eigen::VectorXd::Unit(n, k);
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i < filled; ++i) v -= basis.col(i).dot(v) * basis.col(i);
      }
      const double norm = v.norm();
      if (norm > best_norm) {
        best_norm = norm;
        best = k;
        best_vec = v;
      }
    }
    used[static_cast<std::size_t>(best)] = true;
    basis.col(filled++) = best_vec / best_norm;
  }
  return basis.rightCols(n - m);
}

int numerical_rank(const std::vector<Eigen::VectorXd>& vectors, double tol, double abs_floor) {
  if (vectors.empty()) return 0;
  const auto dim = vectors.front().size();
  Eigen::MatrixXd stacked(static_cast<Eigen::Index>(vectors.size()), dim);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != dim) throw PreconditionError("numerical_rank: ragged input");
    stacked.row(static_cast<Eigen::Index>(i)) = vectors[i].transpose();
  }
  if (dim == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= abs_floor || sv(0) == 0.0) return 0;
  const double cut = std::max(tol * sv(0), abs_floor);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) rank += sv(i) > cut ? 1 : 0;
  return rank;
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double tol) {
  const int cols = static_cast<int>(a.cols());
  if (a.rows() == 0) return Eigen::MatrixXd::Identity(cols, cols);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = sv.size() > 0 ? tol * sv(0) : 0.0;
  std::vector<int> keep;
  for (int i = 0; i < cols; ++i) {
    if (i >= sv.size() || sv(i) <= cut) keep.push_back(i);
  }
  Eigen::MatrixXd out(cols, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    out.col(static_cast<Eigen::Index>(k)) = svd.matrixV().col(keep[k]);
  }
  return out;
}

double smallest_singular_value(const Eigen::MatrixXd& a) {
  if (a.rows() < a.cols() || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

}  // namespace austere4::numerics
