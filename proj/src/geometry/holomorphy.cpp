#include "austere4/geometry/holomorphy.hpp"

#include <algorithm>
#include <complex>

#include "austere4/geometry/frame.hpp"
#include "austere4/geometry/ruling.hpp"
#include "austere4/numerics/errors.hpp"

namespace austere4::geometry {
namespace {

void require_two_ruled_complex(const Immersion& imm) {
  if (!imm.has_complex_structure()) {
    throw PreconditionError("immersion '" + imm.name() + "' carries no complex structure");
  }
  if (imm.ruling_coords().size() != 2) {
    throw PreconditionError("holomorphy check needs a 2-dimensional ruling");
  }
}

}  // namespace

const char* to_string(PlaneOrientation o) {
  return o == PlaneOrientation::kPositive ? "positive" : "negative";
}

double ruling_j_invariance_defect(const Immersion& imm, const Eigen::VectorXd& x) {
  require_two_ruled_complex(imm);
  const PointFrame frame = frame_at(imm, x);
  const Eigen::MatrixXd to_frame = frame.frame_from_coords();
  const Eigen::MatrixXd j = to_frame * imm.complex_structure() * frame.coord_to_frame;
  const Eigen::MatrixXd e = numerics::gram_schmidt(ruling_frame_basis(frame, imm.ruling_coords())).q;
  const Eigen::MatrixXd p = e * e.transpose();
  return (p * j - j * p).norm();
}

Eigen::VectorXcd ruling_plane_point(const Immersion& imm, const Eigen::VectorXd& x,
                                    PlaneOrientation orientation) {
  require_two_ruled_complex(imm);
  const numerics::Jet2 jet = imm.jet(x);
  const int r1 = imm.ruling_coords().front();
  const Eigen::VectorXd coord_v1 = Eigen::VectorXd::Unit(4, r1);
  const Eigen::VectorXd coord_v2 = imm.complex_structure() * coord_v1;
  const Eigen::VectorXd v1 = jet.jacobian * coord_v1;
  Eigen::VectorXd v2 = jet.jacobian * coord_v2;
  if (orientation == PlaneOrientation::kNegative) v2 = -v2;
  Eigen::VectorXcd c(v1.size());
  for (int k = 0; k < v1.size(); ++k) c(k) = {v1(k), v2(k)};
  const double norm = c.norm();
  if (norm == 0.0) throw SingularImmersionError("ruling direction vanishes");
  return c / norm;
}

double ruling_map_holomorphy_defect(const Immersion& imm, const Eigen::VectorXd& x, double h,
                                    PlaneOrientation orientation) {
  require_two_ruled_complex(imm);
  if (!(h > 0.0)) throw PreconditionError("holomorphy step must be positive");
  const double inv = ruling_j_invariance_defect(imm, x);
  if (inv > kJInvarianceTolerance) {
    throw PreconditionError("ruling is not J-invariant at this point");
  }
  const Eigen::VectorXcd c = ruling_plane_point(imm, x, orientation);
  const int m = imm.domain_dim();

  // Derivatives along coordinate directions, projected orthogonally to c.
  std::vector<Eigen::VectorXcd> d(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    Eigen::VectorXd xp = x, xm = x;
    xp(k) += h;
    xm(k) -= h;
    if (!imm.domain().contains(xp) || !imm.domain().contains(xm)) {
      throw DomainError("ruling_map_holomorphy_defect", "step leaves the domain box");
    }
    Eigen::VectorXcd dk =
        (ruling_plane_point(imm, xp, orientation) - ruling_plane_point(imm, xm, orientation)) /
        (2.0 * h);
    dk -= c * c.dot(dk);
    d[static_cast<std::size_t>(k)] = dk;
  }

  const Eigen::Matrix4d& j = imm.complex_structure();
  const std::complex<double> i_unit(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < m; ++k) {
    Eigen::VectorXcd dj = Eigen::VectorXcd::Zero(c.size());
    for (int l = 0; l < m; ++l) dj += j(l, k) * d[static_cast<std::size_t>(l)];
    worst = std::max(worst, (dj - i_unit * d[static_cast<std::size_t>(k)]).norm());
  }
  return worst;
}

}  // namespace austere4::geometry
