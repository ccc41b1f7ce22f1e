#pragma once

#include <Eigen/Dense>

#include "austere4/austere/subspace.hpp"

namespace austere4::austere {

/// Complex structure of the Type A model (J e1 = e2, J e3 = e4).
Eigen::Matrix4d qa_complex_structure();

/// Basis of the symmetric 4x4 matrices anticommuting with qa_complex_structure(),
/// obtained as the null space of S |-> SJ + JS on symmetric matrices.
SymSpan qa_basis();

/// Element of the Type B model:
///   [ m  0  b1 b2 ]
///   [ 0  m  b3 b4 ]
///   [ b1 b3 -m 0  ]
///   [ b2 b4 0  -m ]
SymMatrix qb_matrix(double m, double b1, double b2, double b3, double b4);

/// The five coordinate elements of the Type B model.
SymSpan qb_basis();

/// Parameters of the Type C model; valid iff
/// l1 l2 l3 + l1 + l2 + l3 = 0 to within kLambdaRelationTolerance.
class QCParams {
 public:
  /// Throws PreconditionError unless the relation holds.
  QCParams(double lambda1, double lambda2, double lambda3);
  /// Skips validation; used to build deliberately broken models.
  static QCParams unchecked(double lambda1, double lambda2, double lambda3);

  double lambda1() const { return l_[0]; }
  double lambda2() const { return l_[1]; }
  double lambda3() const { return l_[2]; }
  const Eigen::Vector3d& lambdas() const { return l_; }

  double relation_residual() const;
  bool valid() const;

 private:
  QCParams() = default;
  Eigen::Vector3d l_ = Eigen::Vector3d::Zero();
};

inline constexpr double kLambdaRelationTolerance = 1e-10;

/// l3 = -(l1 + l2) / (1 + l1 l2). Throws PreconditionError when |1 + l1 l2| <= 1e-10.
double lambda3_from(double lambda1, double lambda2);

/// Element of the Type C model:
///   [ 0   x1     x2     x3    ]
///   [ x1  0      l3 x3  l2 x2 ]
///   [ x2  l3 x3  0      l1 x1 ]
///   [ x3  l2 x2  l1 x1  0     ]
/// Throws PreconditionError for invalid params.
SymMatrix qc_matrix(double x1, double x2, double x3, const QCParams& params);

/// Same pattern without validating the parameters.
SymMatrix qc_pattern(double x1, double x2, double x3, const Eigen::Vector3d& lambdas);

/// The three coordinate elements of the Type C model (validated params).
SymSpan qc_basis(const QCParams& params);

/// Coordinate elements for arbitrary lambdas (no validation).
SymSpan qc_basis_unchecked(const Eigen::Vector3d& lambdas);

}  // namespace austere4::austere
