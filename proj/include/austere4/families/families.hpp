#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "austere4/geometry/immersion.hpp"

namespace austere4::families {

using geometry::Immersion;

/// Generalized helicoid: an m-fold swept out by s-planes rotating about an
/// axis, in R^{m+s}:
///   (x0..x_{m-1}) |-> (l0 x0, x1 cos(l1 x0), x1 sin(l1 x0), ...,
///                       xs cos(ls x0), xs sin(ls x0), x_{s+1}, ..., x_{m-1}).
struct HelicoidSpec {
  int m = 2;
  int s = 1;
  std::vector<double> lambdas{1.0, 1.0};  // l0..ls, l1..ls nonzero
  std::optional<numerics::Box> domain;    // default: x0 in [0, 2pi], xi in [0.2, 2]
  /// Annotate every x1..x_{m-1} as ruling (the map is affine in all of them),
  /// instead of only x1..xs.
  bool full_ruling = false;

  int ambient_dim() const { return m + s; }
};

numerics::Box default_helicoid_domain(int m);

Immersion generalized_helicoid(const HelicoidSpec& spec);

/// (b x0, x1 cos x0, x1 sin x0); principal curvatures +-b / (x1^2 + b^2).
Immersion classical_helicoid(double pitch);

/// Cartesian product A x B in R^{nA + nB}; second fundamental form is block diagonal.
Immersion product_immersion(const Immersion& a, const Immersion& b);

/// A x R^k, appending k Euclidean coordinates (each also a ruling direction).
Immersion cylinder_over(const Immersion& a, int k);

/// Generalized helicoid with m=4, s=3, l0=0, l1=l2=l3=lambda with the
/// identically zero first coordinate dropped: a cone in R^6 ruled by 3-planes.
Immersion helicoid_cone(double lambda);

/// Polynomial curve gamma: C -> C^N, coefficients[k][j] the z^j coefficient
/// of component k.
struct HoloCurveSpec {
  std::vector<std::vector<std::complex<double>>> coefficients;
  std::optional<numerics::Box> domain;  // default u1,u2 in [0.2, 2], u3,u4 in [-1, 1]

  int n_complex() const { return static_cast<int>(coefficients.size()); }
  std::vector<std::complex<double>> evaluate(std::complex<double> z) const;
};

inline constexpr int kMaxCurveDegree = 6;

numerics::Box default_complex_domain();

/// (u1..u4) |-> w gamma(z), w = u1 + i u2, z = u3 + i u4, written into
/// R^{2N} as (Re, Im) pairs. Ruled by the complex lines C gamma(z) (ruling
/// coordinates u1, u2) and carrying the standard complex structure.
Immersion complex_cone(const HoloCurveSpec& spec);

/// C x gamma: (u1..u4) |-> (u1, u2, gamma(u3 + i u4)). Its ruling map is constant.
Immersion complex_cylinder(const HoloCurveSpec& spec);

/// Round sphere S^{n-1} of radius r in R^n, hyperspherical chart
/// (polar angles in [0.3, pi - 0.3], azimuth in [0, 2pi]).
Immersion sphere(int n, double radius);

/// u |-> (u, 0) in R^n, domain [-1, 1]^m.
Immersion flat_plane(int m, int n);

/// Largest annotation defects over sampled points: straightness of the
/// declared ruling and J-invariance of the ruling where a complex structure is
/// declared (0 when not applicable).
struct AnnotationCheck {
  double ruling_straightness = 0.0;
  double j_invariance = 0.0;
};

AnnotationCheck check_annotations(const Immersion& imm, int samples, std::uint64_t seed);

}  // namespace austere4::families
