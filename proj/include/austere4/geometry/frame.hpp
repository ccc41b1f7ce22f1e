#pragma once

#include <Eigen/Dense>

#include <vector>

#include "austere4/geometry/immersion.hpp"
#include "austere4/numerics/linalg.hpp"

namespace austere4::geometry {

/// Adapted orthonormal frame at a point of an immersion.
struct PointFrame {
  Eigen::VectorXd point;
  Eigen::MatrixXd tangent_frame;  // n x m, e_1..e_m
  Eigen::MatrixXd normal_frame;   // n x (n-m), e_a; det[tangent normal] > 0
  /// Column i holds the coordinate expression of e_i, i.e.
  /// e_i = jacobian * coord_to_frame.col(i). Upper triangular.
  Eigen::MatrixXd coord_to_frame;

  int domain_dim() const { return static_cast<int>(tangent_frame.cols()); }
  int codim() const { return static_cast<int>(normal_frame.cols()); }
  /// Inverse of coord_to_frame: maps coordinate vectors to tangent-frame coordinates.
  Eigen::MatrixXd frame_from_coords() const;
};

/// Tangent frame by Gram-Schmidt of the Jacobian in coordinate order.
/// Throws SingularImmersionError where the Jacobian is rank deficient.
PointFrame frame_at(const Immersion& imm, const Eigen::VectorXd& x);
PointFrame frame_from_jet(const numerics::Jet2& jet);

/// Components S^a_ij = e_a . II(e_i, e_j).
struct SecondFundamentalForm {
  std::vector<numerics::SymMatrix> components;
  PointFrame frame;

  int domain_dim() const { return frame.domain_dim(); }
  int codim() const { return static_cast<int>(components.size()); }
  /// II(e_i, e_j) as an ambient vector.
  Eigen::VectorXd ambient(int i, int j) const;
};

SecondFundamentalForm second_fundamental_form(const Immersion& imm, const Eigen::VectorXd& x);
SecondFundamentalForm second_fundamental_form(const numerics::Jet2& jet);

/// sum_a xi_a S^a for a unit vector xi in normal-frame coordinates.
numerics::SymMatrix shape_operator(const SecondFundamentalForm& sff, const Eigen::VectorXd& xi);

/// Traces of the S^a.
Eigen::VectorXd mean_curvature_vector(const SecondFundamentalForm& sff);

/// Singular values below this are treated as roundoff when computing the
/// normal rank of O(1)-scaled immersions.
inline constexpr double kCurvatureFloor = 1e-12;

/// dim |II_p|.
int normal_rank(const SecondFundamentalForm& sff,
                double tol = numerics::kDefaultRankTolerance);

struct RelativeNullity {
  int dimension = 0;
  Eigen::MatrixXd basis;  // m x dimension, tangent-frame coordinates
};

/// Common kernel of the S^a, from the kernel of sum_a (S^a)^2.
RelativeNullity relative_nullity(const SecondFundamentalForm& sff,
                                 double tol = numerics::kDefaultRankTolerance);

int gauss_map_rank(const SecondFundamentalForm& sff,
                   double tol = numerics::kDefaultRankTolerance);

}  // namespace austere4::geometry
