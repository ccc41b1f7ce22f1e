#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "austere4/classify/classify.hpp"
#include "austere4/geometry/holomorphy.hpp"
#include "austere4/geometry/immersion.hpp"
#include "austere4/slag/conormal.hpp"
#include "austere4/sweep/parallel.hpp"

namespace austere4::sweep {

struct Tolerances {
  double austere = 1e-8;
  double ruling = 1e-10;
  double rank = numerics::kDefaultRankTolerance;
  double classify = classify::kDefaultVerdictThreshold;
  double lagrangian = 1e-6;
  double phase = 1e-4;
  double holomorphy = 1e-4;
};

struct PointOptions {
  Tolerances tol;
  std::uint64_t seed = 0;
  bool classify = false;
  /// Ruling dimension to verify; the immersion must carry a ruling of that size.
  std::optional<int> check_ruling;
};

struct Classification {
  double residual_a = 0.0;
  double residual_b = 0.0;
  double residual_c = 0.0;
  classify::Verdict verdict;
  bool rank_one = false;
  std::optional<Eigen::Vector3d> lambdas;
};

struct PointRecord {
  std::size_t index = 0;
  Eigen::VectorXd domain;
  Eigen::VectorXd ambient;
  /// Set when the immersion is singular at this point; the remaining
  /// geometric fields are then unset.
  bool singular = false;
  int delta = 0;
  double austere_defect = 0.0;
  bool austere = false;
  double minimal_defect = 0.0;
  std::optional<double> ruling_straightness;
  std::optional<double> ruling_condition;
  int nullity_dim = 0;
  std::optional<Classification> classification;
};

/// Per-point verification; pure given options (the classification seed is
/// derived from options.seed and the index).
PointRecord evaluate_point(const geometry::Immersion& imm, const Eigen::VectorXd& x,
                           std::size_t index, const PointOptions& options);

std::vector<PointRecord> sweep_points(const geometry::Immersion& imm,
                                      const std::vector<Eigen::VectorXd>& points,
                                      const PointOptions& options, Execution exec);

struct ConormalRecord {
  std::size_t index = 0;
  slag::ConormalSample sample;
  double lagrangian_defect = 0.0;
  double phase = 0.0;
};

std::vector<ConormalRecord> sweep_conormal(const geometry::Immersion& imm,
                                           const std::vector<slag::ConormalSample>& samples,
                                           slag::Convention convention, Execution exec);

struct HolomorphyRecord {
  std::size_t index = 0;
  Eigen::VectorXd domain;
  double j_invariance = 0.0;
  double defect = 0.0;
};

std::vector<HolomorphyRecord> sweep_holomorphy(const geometry::Immersion& imm,
                                               const std::vector<Eigen::VectorXd>& points,
                                               geometry::PlaneOrientation orientation,
                                               double h, Execution exec);

}  // namespace austere4::sweep
