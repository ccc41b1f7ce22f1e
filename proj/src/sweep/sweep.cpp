#include "austere4/sweep/sweep.hpp"

#include <algorithm>

#include "austere4/austere/subspace.hpp"
#include "austere4/geometry/frame.hpp"
#include "austere4/geometry/ruling.hpp"
#include "austere4/numerics/errors.hpp"
#include "austere4/numerics/random.hpp"

namespace austere4::sweep {

PointRecord evaluate_point(const geometry::Immersion& imm, const Eigen::VectorXd& x,
                           std::size_t index, const PointOptions& options) {
  PointRecord rec;
  rec.index = index;
  rec.domain = x;
  rec.ambient = imm.point(x);

  geometry::SecondFundamentalForm sff;
  try {
    sff = geometry::second_fundamental_form(imm, x);
  } catch (const SingularImmersionError&) {
    rec.singular = true;
    return rec;
  }
  const int m = imm.domain_dim();
  const austere::SymSpan span(m, sff.components, options.tol.rank);

  rec.delta = geometry::normal_rank(sff, options.tol.rank);
  rec.austere_defect = austere::odd_trace_defect(span);
  rec.austere = rec.austere_defect < options.tol.austere;
  rec.minimal_defect = geometry::mean_curvature_vector(sff).norm();
  rec.nullity_dim = geometry::relative_nullity(sff, options.tol.rank).dimension;

  std::vector<int> coords = imm.ruling_coords();
  if (options.check_ruling) {
    const int k = *options.check_ruling;
    if (k < 1 || k > static_cast<int>(coords.size())) {
      throw PreconditionError(imm.name() + " carries no " + std::to_string(k) + "-dimensional ruling");
    }
    coords.resize(static_cast<std::size_t>(k));
  }
  if (!coords.empty()) {
    const geometry::Immersion ruled = imm.with_ruling(coords);
    rec.ruling_straightness = geometry::ruling_straightness_defect(ruled, x);
    rec.ruling_condition =
        geometry::ruled_condition_check(sff, geometry::ruling_frame_basis(sff.frame, coords));
  }

  if (options.classify && m == 4) {
    const classify::TypeReport rep = classify::classify_span(
        span, options.tol.classify, numerics::stream_seed(options.seed, index));
    Classification c;
    c.residual_a = rep.residual_a;
    c.residual_b = rep.residual_b;
    c.residual_c = rep.residual_c;
    c.verdict = rep.verdict;
    c.rank_one = rec.delta <= 1;
    if (rep.qc_params) c.lambdas = rep.qc_params->lambdas();
    rec.classification = c;
  }
  return rec;
}

std::vector<PointRecord> sweep_points(const geometry::Immersion& imm,
                                      const std::vector<Eigen::VectorXd>& points,
                                      const PointOptions& options, Execution exec) {
  return map_indexed(
      points.size(), [&](std::size_t i) { return evaluate_point(imm, points[i], i, options); },
      exec);
}

std::vector<ConormalRecord> sweep_conormal(const geometry::Immersion& imm,
                                           const std::vector<slag::ConormalSample>& samples,
                                           slag::Convention convention, Execution exec) {
  return map_indexed(
      samples.size(),
      [&](std::size_t i) {
        const Eigen::MatrixXd basis =
            slag::conormal_tangent_basis(imm, samples[i], slag::kConormalStep, convention);
        return ConormalRecord{i, samples[i], slag::lagrangian_defect(basis),
                              slag::calibration_phase(basis)};
      },
      exec);
}

std::vector<HolomorphyRecord> sweep_holomorphy(const geometry::Immersion& imm,
                                               const std::vector<Eigen::VectorXd>& points,
                                               geometry::PlaneOrientation orientation,
                                               double h, Execution exec) {
  return map_indexed(
      points.size(),
      [&](std::size_t i) {
        HolomorphyRecord r;
        r.index = i;
        r.domain = points[i];
        r.j_invariance = geometry::ruling_j_invariance_defect(imm, points[i]);
        r.defect = geometry::ruling_map_holomorphy_defect(imm, points[i], h, orientation);
        return r;
      },
      exec);
}

}  // namespace austere4::sweep
