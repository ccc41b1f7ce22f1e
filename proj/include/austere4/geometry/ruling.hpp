#pragma once

#include <Eigen/Dense>

#include <span>

#include "austere4/geometry/frame.hpp"

namespace austere4::geometry {

/// Largest ambient norm of a second partial derivative taken in the ruling
/// coordinates, over the point x and `samples` points of the ruling fibre
/// through x. Zero iff the fibres are straight (affine) planes.
double ruling_straightness_defect(const Immersion& imm, const Eigen::VectorXd& x,
                                  int samples = 8);

/// max_{a,i,j} |v_i^T S^a v_j| over an orthonormalized basis v of col(E).
/// E holds ruling directions in tangent-frame coordinates (m x k).
double ruled_condition_check(const SecondFundamentalForm& sff, const Eigen::MatrixXd& ruling);

/// Tangent-frame coordinates of the coordinate vectors d/du_c, c in coords.
Eigen::MatrixXd ruling_frame_basis(const PointFrame& frame, std::span<const int> coords);

}  // namespace austere4::geometry
