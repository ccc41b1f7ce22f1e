#pragma once

#include <Eigen/Dense>

namespace austere4::classify {

/// Six coordinates on so(4) in the basis E_01, E_02, E_03, E_12, E_13, E_23
/// (E_ij = e_i e_j^T - e_j e_i^T).
struct RotationParam {
  Eigen::Matrix<double, 6, 1> coords = Eigen::Matrix<double, 6, 1>::Zero();

  Eigen::Matrix4d skew() const;
  /// exp(skew()) in SO(4).
  Eigen::Matrix4d exp() const;
};

/// Basis element k of so(4) in the order above.
Eigen::Matrix4d so4_generator(int k);

/// Self-dual (sign = +1) or anti-self-dual (sign = -1) skew matrices; each
/// basis element squares to -I.
Eigen::Matrix4d twistor_generator(int sign, int k);

}  // namespace austere4::classify
