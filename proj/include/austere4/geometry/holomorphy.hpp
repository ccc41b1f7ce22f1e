#pragma once

#include <Eigen/Dense>

#include "austere4/geometry/immersion.hpp"

namespace austere4::geometry {

/// Orientation of the ruling plane in the quadric chart: the plane E is sent
/// to [v1 + i v2] with v1 in E a unit vector and v2 = +J v1 or -J v1.
enum class PlaneOrientation { kPositive, kNegative };

const char* to_string(PlaneOrientation o);

/// ||P_E J - J P_E|| in tangent-frame coordinates, with P_E the orthogonal
/// projector onto the 2-dimensional ruling.
double ruling_j_invariance_defect(const Immersion& imm, const Eigen::VectorXd& x);

/// Unit representative of the ruling plane in C^n.
Eigen::VectorXcd ruling_plane_point(const Immersion& imm, const Eigen::VectorXd& x,
                                    PlaneOrientation orientation);

inline constexpr double kJInvarianceTolerance = 1e-8;

/// Cauchy-Riemann defect of the ruling map M -> CP^{n-1} at x:
/// max over coordinate directions u of |Pi D_{Ju} c - i Pi D_u c|, where c is
/// the unit representative and Pi projects orthogonally to c. Derivatives are
/// central differences with step h.
double ruling_map_holomorphy_defect(const Immersion& imm, const Eigen::VectorXd& x, double h,
                                    PlaneOrientation orientation);

}  // namespace austere4::geometry
