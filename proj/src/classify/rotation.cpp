#include "austere4/classify/rotation.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <array>
#include <stdexcept>
#include <utility>

namespace austere4::classify {

namespace {

constexpr std::array<std::pair<int, int>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

Eigen::Matrix4d elementary(int i, int j) {
  Eigen::Matrix4d e = Eigen::Matrix4d::Zero();
  e(i, j) = 1.0;
  e(j, i) = -1.0;
  return e;
}

}  // namespace

Eigen::Matrix4d so4_generator(int k) {
  if (k < 0 || k >= 6) throw std::out_of_range("so4_generator index");
  return elementary(kPairs[k].first, kPairs[k].second);
}

Eigen::Matrix4d twistor_generator(int sign, int k) {
  const double s = sign > 0 ? 1.0 : -1.0;
  switch (k) {
    case 0: return elementary(0, 1) + s * elementary(2, 3);
    case 1: return elementary(0, 2) - s * elementary(1, 3);
    case 2: return elementary(0, 3) + s * elementary(1, 2);
    default: throw std::out_of_range("twistor_generator index");
  }
}

Eigen::Matrix4d RotationParam::skew() const {
  Eigen::Matrix4d k = Eigen::Matrix4d::Zero();
  for (int i = 0; i < 6; ++i) k += coords(i) * so4_generator(i);
  return k;
}

Eigen::Matrix4d RotationParam::exp() const { return skew().exp(); }

}  // namespace austere4::classify
