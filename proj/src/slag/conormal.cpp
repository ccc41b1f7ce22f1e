#include "austere4/slag/conormal.hpp"

#include <Eigen/LU>

#include <cmath>
#include <numbers>

#include "austere4/geometry/frame.hpp"
#include "austere4/numerics/errors.hpp"
#include "austere4/numerics/linalg.hpp"
#include "austere4/numerics/random.hpp"

namespace austere4::slag {

namespace {

double sign_of(Convention c) { return c == Convention::kPlus ? 1.0 : -1.0; }

// Normal frame at x carried over from `base_normal`.
Eigen::MatrixXd transported_normal(const geometry::Immersion& imm, const Eigen::VectorXd& x,
                                   const Eigen::MatrixXd& base_normal) {
  const geometry::PointFrame f = geometry::frame_at(imm, x);
  const Eigen::MatrixXd projected = f.normal_frame * (f.normal_frame.transpose() * base_normal);
  if (numerics::smallest_singular_value(projected) < kTransportFloor) {
    throw StencilTooCoarseError("normal frame turns too far across the stencil; reduce h");
  }
  return numerics::gram_schmidt(projected).q;
}

Eigen::MatrixXd orthonormalized(const Eigen::MatrixXd& basis) {
  if (basis.rows() != 2 * basis.cols()) {
    throw PreconditionError("a Lagrangian basis needs n vectors in R^{2n}");
  }
  return numerics::gram_schmidt(basis).q;
}

}  // namespace

ConormalSample make_conormal_sample(const geometry::Immersion& imm, const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& xi_coords, Convention convention) {
  const geometry::PointFrame f = geometry::frame_at(imm, x);
  if (xi_coords.size() != f.codim()) throw PreconditionError("xi needs one coordinate per normal direction");
  const Eigen::VectorXd xi = f.normal_frame * xi_coords;
  ConormalSample s;
  s.base_x = x;
  s.xi_coords = xi_coords;
  s.complex_point = f.point.cast<std::complex<double>>() +
                    std::complex<double>(0.0, sign_of(convention)) * xi.cast<std::complex<double>>();
  return s;
}

std::vector<ConormalSample> random_conormal_samples(const geometry::Immersion& imm, int count,
                                                    std::uint64_t seed, Convention convention) {
  return conormal_samples_at(imm, geometry::sample_domain(imm.domain(), {}, count, seed), seed,
                             convention);
}

std::vector<ConormalSample> conormal_samples_at(const geometry::Immersion& imm,
                                                const std::vector<Eigen::VectorXd>& xs,
                                                std::uint64_t seed, Convention convention) {
  const int codim = imm.ambient_dim() - imm.domain_dim();
  const std::uint64_t fibre_seed = numerics::stream_seed(seed, 0x636f6e6fULL);
  std::vector<ConormalSample> out;
  out.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    numerics::Rng rng(numerics::stream_seed(fibre_seed, i));
    const Eigen::VectorXd dir = numerics::random_unit_vector(codim, rng);
    const double len = numerics::uniform(rng, 0.5, 2.0);
    out.push_back(make_conormal_sample(imm, xs[i], len * dir, convention));
  }
  return out;
}

Eigen::MatrixXd conormal_tangent_basis(const geometry::Immersion& imm,
                                       const ConormalSample& sample, double h,
                                       Convention convention) {
  const int m = imm.domain_dim();
  const int n = imm.ambient_dim();
  const numerics::Jet2 jet = imm.jet(sample.base_x);
  const geometry::PointFrame base = geometry::frame_from_jet(jet);
  const double s = sign_of(convention);

  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * n, n);
  for (int k = 0; k < m; ++k) {
    Eigen::VectorXd step = Eigen::VectorXd::Zero(m);
    step(k) = h;
    const Eigen::VectorXd up = sample.base_x + step;
    const Eigen::VectorXd down = sample.base_x - step;
    if (!imm.domain().contains(up) || !imm.domain().contains(down)) {
      throw DomainError("conormal_tangent_basis", "stencil leaves the parameter domain");
    }
    const Eigen::VectorXd xi_up = transported_normal(imm, up, base.normal_frame) * sample.xi_coords;
    const Eigen::VectorXd xi_down =
        transported_normal(imm, down, base.normal_frame) * sample.xi_coords;
    out.col(k).head(n) = jet.jacobian.col(k);
    out.col(k).tail(n) = s * (xi_up - xi_down) / (2.0 * h);
  }
  for (int a = 0; a < n - m; ++a) out.col(m + a).tail(n) = s * base.normal_frame.col(a);
  return out;
}

double symplectic_pairing(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::Index n = a.size() / 2;
  return a.head(n).dot(b.tail(n)) - a.tail(n).dot(b.head(n));
}

double lagrangian_defect(const Eigen::MatrixXd& basis) {
  const Eigen::MatrixXd q = orthonormalized(basis);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < q.cols(); ++i) {
    for (Eigen::Index j = i + 1; j < q.cols(); ++j) {
      worst = std::max(worst, std::abs(symplectic_pairing(q.col(i), q.col(j))));
    }
  }
  return worst;
}

double calibration_phase(const Eigen::MatrixXd& basis) {
  const Eigen::MatrixXd q = orthonormalized(basis);
  const Eigen::Index n = q.cols();
  Eigen::MatrixXcd z(n, n);
  z.real() = q.topRows(n);
  z.imag() = q.bottomRows(n);
  return std::arg(z.partialPivLu().determinant());
}

double circle_distance(double a, double b) {
  const double d = std::remainder(a - b, 2.0 * std::numbers::pi);
  return std::abs(d);
}

double special_phase_defect(const geometry::Immersion& imm,
                            const std::vector<ConormalSample>& samples, double h,
                            Convention convention) {
  if (samples.size() < 2) throw PreconditionError("phase constancy needs at least two samples");
  std::vector<double> phases;
  phases.reserve(samples.size());
  for (const ConormalSample& s : samples) {
    phases.push_back(calibration_phase(conormal_tangent_basis(imm, s, h, convention)));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < phases.size(); ++i) {
    for (std::size_t j = i + 1; j < phases.size(); ++j) {
      worst = std::max(worst, circle_distance(phases[i], phases[j]));
    }
  }
  return worst;
}

}  // namespace austere4::slag
