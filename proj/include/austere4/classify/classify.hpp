#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "austere4/austere/models.hpp"
#include "austere4/austere/subspace.hpp"
#include "austere4/geometry/immersion.hpp"

namespace austere4::classify {

using austere::QCParams;
using austere::SymSpan;

inline constexpr int kFitRestarts = 32;
inline constexpr double kDefaultVerdictThreshold = 1e-6;

/// Residuals below are RMS over a Frobenius-orthonormal basis of the span, so
/// they lie in [0, 1] and are invariant under scaling and conjugation of the
/// span. A span too large for a model reports residual 1.

struct FitA {
  double residual = 0.0;
  Eigen::Matrix4d j = Eigen::Matrix4d::Zero();  // best candidate, J^2 = -I
};

/// Solves the linear problem {K skew : S K + K S = 0 for all S in span}
/// restricted to the self-dual and anti-self-dual parts of so(4), whose unit
/// elements are exactly the orthogonal complex structures.
FitA fit_type_A(const SymSpan& span);

struct FitB {
  double residual = 0.0;
  Eigen::Matrix4d frame = Eigen::Matrix4d::Identity();  // R with R S R^T ~ in the B model
  bool dimension_ok = true;
};

FitB fit_type_B(const SymSpan& span, std::uint64_t seed = 0, int restarts = kFitRestarts);

struct FitC {
  double residual = 0.0;
  Eigen::Matrix4d frame = Eigen::Matrix4d::Identity();
  /// Canonical lambdas: the model is unchanged by permuting the frame vectors
  /// (which permutes lambdas or inverts two of them) and by a reflection (which
  /// negates them); the smallest-norm sorted representative is reported.
  std::optional<QCParams> params;
  bool dimension_ok = true;
};

FitC fit_type_C(const SymSpan& span, std::uint64_t seed = 0, int restarts = kFitRestarts);

enum class ModelType { kA = 0, kB = 1, kC = 2 };

/// Subset of {A, B, C}.
struct Verdict {
  std::array<bool, 3> has{};

  bool contains(ModelType t) const { return has[static_cast<int>(t)]; }
  bool empty() const { return !has[0] && !has[1] && !has[2]; }
  std::string to_string() const;  // e.g. "AB", "-" when empty
  bool operator==(const Verdict&) const = default;
};

struct TypeReport {
  double residual_a = 0.0;
  double residual_b = 0.0;
  double residual_c = 0.0;
  Eigen::Matrix4d frame_b = Eigen::Matrix4d::Identity();
  Eigen::Matrix4d frame_c = Eigen::Matrix4d::Identity();
  std::optional<Eigen::Matrix4d> j_found;
  std::optional<QCParams> qc_params;
  Verdict verdict;
  int normal_rank = 0;
  /// dim |II| <= 1: the type notion degenerates; the verdict lists every model
  /// that fits but is not a type claim.
  bool rank_one = false;
};

TypeReport classify_span(const SymSpan& span, double threshold = kDefaultVerdictThreshold,
                         std::uint64_t seed = 0);

/// Classifies |II_p| for a 4-dimensional immersion. Propagates
/// SingularImmersionError.
TypeReport classify_point(const geometry::Immersion& imm, const Eigen::VectorXd& x,
                          double threshold = kDefaultVerdictThreshold, std::uint64_t seed = 0);

/// |II_p| as a span of 4x4 symmetric matrices.
SymSpan second_fundamental_span(const geometry::Immersion& imm, const Eigen::VectorXd& x);

}  // namespace austere4::classify
