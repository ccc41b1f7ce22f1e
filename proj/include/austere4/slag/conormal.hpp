#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

#include "austere4/geometry/immersion.hpp"

namespace austere4::slag {

/// z = p + s i xi with s = +1 (default) or -1.
enum class Convention { kPlus = 1, kMinus = -1 };

/// A point (p, xi) of the conormal bundle.
struct ConormalSample {
  Eigen::VectorXd base_x;
  Eigen::VectorXd xi_coords;  // in the oriented normal frame at base_x
  Eigen::VectorXcd complex_point;
};

ConormalSample make_conormal_sample(const geometry::Immersion& imm, const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& xi_coords,
                                    Convention convention = Convention::kPlus);

/// Conormal coordinates of random direction and length in [0.5, 2] at the
/// given base points; sample i draws from stream i of `seed`.
std::vector<ConormalSample> conormal_samples_at(const geometry::Immersion& imm,
                                                const std::vector<Eigen::VectorXd>& points,
                                                std::uint64_t seed,
                                                Convention convention = Convention::kPlus);

/// Base points from sample_domain with conormal coordinates of random
/// direction and length in [0.5, 2].
std::vector<ConormalSample> random_conormal_samples(const geometry::Immersion& imm, int count,
                                                    std::uint64_t seed,
                                                    Convention convention = Convention::kPlus);

inline constexpr double kConormalStep = 1e-4;
/// Smallest singular value of the projected base normal frame accepted when
/// transporting it across the stencil.
inline constexpr double kTransportFloor = 0.5;

/// Columns are n real 2n-vectors (top half p, bottom half the fibre part):
/// m horizontal vectors d(p, xi)/du_k and n - m vertical vectors (0, e_a).
/// xi is extended off base_x by transporting the base normal frame (projection
/// onto the nearby normal space followed by Gram-Schmidt) with its
/// coefficients held fixed. Throws StencilTooCoarseError when the transported
/// frame degenerates and DomainError when the stencil leaves the domain.
Eigen::MatrixXd conormal_tangent_basis(const geometry::Immersion& imm,
                                       const ConormalSample& sample,
                                       double h = kConormalStep,
                                       Convention convention = Convention::kPlus);

/// omega(a, b) = a_x . b_y - a_y . b_x on R^{2n} = C^n.
double symplectic_pairing(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// max |omega(t_i, t_j)| over an orthonormalized basis. Throws
/// PreconditionError unless the basis has n columns in R^{2n}.
double lagrangian_defect(const Eigen::MatrixXd& basis);

/// arg det_C of the orthonormalized basis read as a complex n x n matrix.
double calibration_phase(const Eigen::MatrixXd& basis);

/// Shortest arc between two angles, in [0, pi].
double circle_distance(double a, double b);

/// Largest pairwise circle distance between sample phases. Throws
/// PreconditionError for fewer than two samples.
double special_phase_defect(const geometry::Immersion& imm,
                            const std::vector<ConormalSample>& samples,
                            double h = kConormalStep,
                            Convention convention = Convention::kPlus);

}  // namespace austere4::slag
