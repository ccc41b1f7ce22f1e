#include "austere4/austere/subspace.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

#include "austere4/numerics/errors.hpp"
#include "austere4/numerics/least_squares.hpp"
#include "austere4/numerics/random.hpp"

namespace austere4::austere {

SymSpan::SymSpan(int dim_ambient, std::vector<SymMatrix> basis, double rank_tol)
    : dim_ambient_(dim_ambient), basis_(std::move(basis)), rank_tol_(rank_tol) {
  std::vector<Eigen::VectorXd> flat;
  for (const auto& b : basis_) {
    if (b.dim() != dim_ambient_) throw PreconditionError("SymSpan: basis element has wrong size");
    flat.push_back(b.flatten());
  }
  span_dim_ = numerics::numerical_rank(flat, rank_tol_);
}

std::vector<SymMatrix> SymSpan::orthonormal_basis() const {
  std::vector<SymMatrix> out;
  if (span_dim_ == 0) return out;
  const int d = dim_ambient_ * (dim_ambient_ + 1) / 2;
  Eigen::MatrixXd cols(d, static_cast<Eigen::Index>(basis_.size()));
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    cols.col(static_cast<Eigen::Index>(k)) = basis_[k].flatten();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cols, Eigen::ComputeThinU);
  for (int k = 0; k < span_dim_; ++k) {
    out.push_back(SymMatrix::unflatten(svd.matrixU().col(k), dim_ambient_));
  }
  return out;
}

SymMatrix SymSpan::element(const Eigen::VectorXd& coeffs) const {
  if (coeffs.size() != static_cast<Eigen::Index>(basis_.size())) {
    throw PreconditionError("SymSpan::element: coefficient count mismatch");
  }
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(dim_ambient_, dim_ambient_);
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    s += coeffs(static_cast<Eigen::Index>(k)) * basis_[k].matrix();
  }
  return SymMatrix(s);
}

SymSpan SymSpan::conjugated(const Eigen::MatrixXd& r) const {
  std::vector<SymMatrix> out;
  for (const auto& b : basis_) out.push_back(b.conjugated(r));
  return SymSpan(dim_ambient_, std::move(out), rank_tol_);
}

SymSpan SymSpan::scaled(double c) const {
  std::vector<SymMatrix> out;
  for (const auto& b : basis_) out.push_back(c * b);
  return SymSpan(dim_ambient_, std::move(out), rank_tol_);
}

bool is_austere_matrix(const SymMatrix& s, double tol) {
  if (s.dim() > 8) throw PreconditionError("is_austere_matrix: dimension above 8");
  const double norm = s.norm();
  if (norm == 0.0) return true;
  const Eigen::MatrixXd unit = s.matrix() / norm;
  const Eigen::MatrixXd sq = unit * unit;
  Eigen::MatrixXd power = unit;
  for (int k = 1; k <= s.dim(); k += 2) {
    if (!(std::abs(power.trace()) < tol)) return false;
    power = power * sq;
  }
  return true;
}

bool eigen_symmetry_oracle(const SymMatrix& s, double tol) {
  const double norm = s.norm();
  if (norm == 0.0) return true;
  const Eigen::VectorXd l = numerics::sym_eig(s).values;
  const int m = static_cast<int>(l.size());
  for (int i = 0; i < m; ++i) {
    if (!(std::abs(l(i) + l(m - 1 - i)) < tol * norm)) return false;
  }
  return true;
}

double austere_subspace_defect(const SymSpan& span) {
  if (span.dim_ambient() != 4) throw PreconditionError("austere subspace test needs 4x4 matrices");
  std::vector<Eigen::Matrix4d> b;
  for (const auto& s : span.basis()) {
    const double norm = s.norm();
    if (norm > 0.0) b.push_back(s.matrix() / norm);
  }
  double worst = 0.0;
  const std::size_t k = b.size();
  for (std::size_t i = 0; i < k; ++i) worst = std::max(worst, std::abs(b[i].trace()));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      const Eigen::Matrix4d bij = b[i] * b[j];
      const Eigen::Matrix4d bji = b[j] * b[i];
      for (std::size_t l = j; l < k; ++l) {
        const double t = 0.5 * ((bij * b[l]).trace() + (bji * b[l]).trace());
        worst = std::max(worst, std::abs(t));
      }
    }
  }
  return worst;
}

bool is_austere_subspace(const SymSpan& span, double tol) {
  return austere_subspace_defect(span) < tol;
}

namespace {

// Symmetrized trace of the product of forms[idx[0]] ... forms[idx[k-1]].
double symmetrized_trace(const std::vector<Eigen::MatrixXd>& forms, std::vector<int> idx) {
  std::sort(idx.begin(), idx.end());
  double sum = 0.0;
  long count = 0;
  do {
    Eigen::MatrixXd prod = forms[static_cast<std::size_t>(idx[0])];
    for (std::size_t t = 1; t < idx.size(); ++t) prod = prod * forms[static_cast<std::size_t>(idx[t])];
    sum += prod.trace();
    ++count;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return sum / static_cast<double>(count);
}

// Visits every nondecreasing index tuple of length k over [0, d).
template <class F>
void for_each_multiset(int d, int k, F&& f) {
  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  while (true) {
    f(idx);
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == d - 1) --pos;
    if (pos < 0) return;
    const int v = idx[static_cast<std::size_t>(pos)] + 1;
    for (int t = pos; t < k; ++t) idx[static_cast<std::size_t>(t)] = v;
  }
}

}  // namespace

double odd_trace_defect(const SymSpan& span) {
  if (span.dim_ambient() > 8) throw PreconditionError("odd_trace_defect: dimension above 8");
  std::vector<Eigen::MatrixXd> forms;
  for (const auto& s : span.orthonormal_basis()) forms.push_back(s.matrix());
  const int d = static_cast<int>(forms.size());
  double worst = 0.0;
  if (d == 0) return worst;
  for (int k = 1; k <= span.dim_ambient(); k += 2) {
    for_each_multiset(d, k, [&](const std::vector<int>& idx) {
      worst = std::max(worst, std::abs(symmetrized_trace(forms, idx)));
    });
  }
  return worst;
}

namespace {

// Residual vec(P_u S_i P_u) for unit u.
Eigen::VectorXd compressed(const std::vector<SymMatrix>& forms, const Eigen::Vector4d& u) {
  const Eigen::Matrix4d p = Eigen::Matrix4d::Identity() - u * u.transpose();
  Eigen::VectorXd r(16 * static_cast<Eigen::Index>(forms.size()));
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const Eigen::Matrix4d c = p * forms[i].matrix() * p;
    r.segment<16>(16 * static_cast<Eigen::Index>(i)) = Eigen::Map<const Eigen::VectorXd>(c.data(), 16);
  }
  return r;
}

Eigen::Vector4d sphere_retract(const Eigen::Vector4d& u, const Eigen::VectorXd& delta) {
  // Orthonormal basis of the tangent space at u.
  Eigen::Matrix4d full = Eigen::Matrix4d::Identity();
  full.col(0) = u;
  Eigen::HouseholderQR<Eigen::Matrix4d> qr(full);
  Eigen::Matrix4d q = qr.householderQ();
  Eigen::Vector4d v = u + q.rightCols<3>() * delta;
  return v.normalized();
}

}  // namespace

SimpleFit fit_common_factor(const SymSpan& span, std::uint64_t seed, int restarts) {
  if (span.dim_ambient() != 4) throw PreconditionError("is_simple needs 4x4 matrices");
  const std::vector<SymMatrix> forms = span.orthonormal_basis();
  SimpleFit best;
  best.factor = Eigen::Vector4d::UnitX();
  if (forms.empty()) return best;
  best.residual = std::numeric_limits<double>::infinity();

  const std::function<Eigen::VectorXd(const Eigen::Vector4d&)> residual =
      [&](const Eigen::Vector4d& u) { return compressed(forms, u); };
  const std::function<Eigen::Vector4d(const Eigen::Vector4d&, const Eigen::VectorXd&)> retract =
      sphere_retract;
  numerics::LmOptions opts;
  opts.jacobian_step = 1e-7;
  for (int r = 0; r < restarts; ++r) {
    numerics::Rng rng(numerics::stream_seed(seed, static_cast<std::uint64_t>(r)));
    const Eigen::Vector4d start = numerics::random_unit_vector(4, rng);
    auto fit = numerics::minimize_least_squares<Eigen::Vector4d>(3, residual, retract, start, opts);
    const double res = std::sqrt(2.0 * fit.cost / static_cast<double>(forms.size()));
    if (res < best.residual) {
      best.residual = res;
      best.factor = fit.state;
    }
    if (best.residual < 1e-14) break;
  }
  return best;
}

bool is_simple(const SymSpan& span, double tol, std::uint64_t seed) {
  return fit_common_factor(span, seed).residual < tol;
}

}  // namespace austere4::austere
