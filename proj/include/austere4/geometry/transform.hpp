#pragma once

#include <Eigen/Dense>

#include "austere4/geometry/immersion.hpp"

namespace austere4::geometry {

/// x |-> rotation * F(x) + shift.
Immersion rigidly_moved(const Immersion& imm, const Eigen::MatrixXd& rotation,
                        const Eigen::VectorXd& shift);

/// y |-> F(a y + b). The new domain is the bounding box of the preimage of
/// the old one; ruling and complex-structure annotations are dropped unless
/// `a` preserves them (callers re-annotate as needed).
Immersion reparametrized(const Immersion& imm, const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

}  // namespace austere4::geometry
