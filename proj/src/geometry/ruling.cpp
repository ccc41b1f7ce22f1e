#include "austere4/geometry/ruling.hpp"

#include <algorithm>
#include <cmath>

#include "austere4/numerics/errors.hpp"

namespace austere4::geometry {

double ruling_straightness_defect(const Immersion& imm, const Eigen::VectorXd& x, int samples) {
  if (!imm.has_ruling()) {
    throw PreconditionError("immersion '" + imm.name() + "' has no ruling coordinates");
  }
  if (samples < 0) throw PreconditionError("sample count must be nonnegative");
  const auto& coords = imm.ruling_coords();
  const numerics::Box& box = imm.domain();

  std::vector<Eigen::VectorXd> points{x};
  for (int k = 0; k < samples; ++k) {
    const double t = (k + 0.5) / samples;
    Eigen::VectorXd p = x;
    for (int c : coords) p(c) = box.lower(c) + t * (box.upper(c) - box.lower(c));
    points.push_back(p);
  }

  double worst = 0.0;
  for (const auto& p : points) {
    const numerics::Jet2 jet = imm.jet(p);
    for (int c1 : coords) {
      for (int c2 : coords) {
        Eigen::VectorXd d(jet.range_dim());
        for (int a = 0; a < jet.range_dim(); ++a) d(a) = jet.hessian[a](c1, c2);
        worst = std::max(worst, d.norm());
      }
    }
  }
  return worst;
}

double ruled_condition_check(const SecondFundamentalForm& sff, const Eigen::MatrixXd& ruling) {
  if (ruling.rows() != sff.domain_dim() || ruling.cols() < 1) {
    throw PreconditionError("ruled_condition_check: ruling basis has the wrong shape");
  }
  numerics::ThinQr qr;
  try {
    qr = numerics::gram_schmidt(ruling);
  } catch (const SingularImmersionError&) {
    throw PreconditionError("ruled_condition_check: ruling basis is rank deficient");
  }
  double worst = 0.0;
  for (const auto& s : sff.components) {
    const Eigen::MatrixXd block = qr.q.transpose() * s.matrix() * qr.q;
    worst = std::max(worst, block.cwiseAbs().maxCoeff());
  }
  return worst;
}

Eigen::MatrixXd ruling_frame_basis(const PointFrame& frame, std::span<const int> coords) {
  const Eigen::MatrixXd r = frame.frame_from_coords();
  Eigen::MatrixXd out(r.rows(), static_cast<Eigen::Index>(coords.size()));
  for (std::size_t k = 0; k < coords.size(); ++k) {
    out.col(static_cast<Eigen::Index>(k)) = r.col(coords[k]);
  }
  return out;
}

}  // namespace austere4::geometry
