#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>

#include "austere4/numerics/linalg.hpp"

namespace austere4::numerics {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of stream `index` under `root`. Streams for different indices are
/// independent of evaluation order, so parallel sweeps reproduce serial ones.
constexpr std::uint64_t stream_seed(std::uint64_t root, std::uint64_t index) {
  return splitmix64(splitmix64(root) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

double uniform(Rng& rng, double lo, double hi);
double gaussian(Rng& rng);

/// Haar-distributed rotation in SO(dim).
Eigen::MatrixXd random_rotation(int dim, Rng& rng);

/// Symmetric matrix with independent N(0,1) entries on and above the diagonal.
SymMatrix random_symmetric(int dim, Rng& rng);

Eigen::VectorXd random_unit_vector(int dim, Rng& rng);

}  // namespace austere4::numerics
