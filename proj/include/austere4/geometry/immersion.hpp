#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "austere4/numerics/jet.hpp"

namespace austere4::geometry {

/// A parametrized map from an m-dimensional box into R^n.
///
/// Optional annotations:
///  - ruling coordinates: domain indices whose coordinate lines sweep the
///    ruling planes (the evaluator must be affine in them);
///  - complex structure: a 4x4 matrix acting on coordinate vectors. The
///    standard one pairs (u1,u2),(u3,u4) with J d/du1 = d/du2, J d/du3 = d/du4.
class Immersion {
 public:
  Immersion(std::string name, numerics::VectorMap evaluator, numerics::Box domain,
            std::vector<int> ruling_coords = {},
            std::optional<Eigen::Matrix4d> complex_structure = std::nullopt);

  const std::string& name() const { return name_; }
  int domain_dim() const { return evaluator_.domain_dim(); }
  int ambient_dim() const { return evaluator_.range_dim(); }
  const numerics::VectorMap& evaluator() const { return evaluator_; }
  const numerics::Box& domain() const { return domain_; }

  bool has_ruling() const { return !ruling_coords_.empty(); }
  const std::vector<int>& ruling_coords() const { return ruling_coords_; }

  bool has_complex_structure() const { return complex_structure_.has_value(); }
  /// Coordinate matrix of J_M; throws PreconditionError if absent.
  const Eigen::Matrix4d& complex_structure() const;

  Eigen::VectorXd point(const Eigen::VectorXd& x) const { return evaluator_(x); }
  numerics::Jet2 jet(const Eigen::VectorXd& x) const { return numerics::jet_eval(evaluator_, x); }

  Immersion with_ruling(std::vector<int> coords) const;
  Immersion with_complex_structure(std::optional<Eigen::Matrix4d> j) const;
  Immersion renamed(std::string name) const;

 private:
  std::string name_;
  numerics::VectorMap evaluator_;
  numerics::Box domain_;
  std::vector<int> ruling_coords_;
  std::optional<Eigen::Matrix4d> complex_structure_;
};

/// J d/du1 = d/du2, J d/du3 = d/du4.
Eigen::Matrix4d standard_coordinate_complex_structure();

inline constexpr double kDefaultDomainMargin = 0.05;

/// Grid points (per-axis counts; a single count is broadcast to every axis)
/// followed by `random_count` uniform points. Sampling happens in the domain
/// shrunk by `margin` of each interval. Point i of the random block uses
/// stream i of `seed`, so the list does not depend on evaluation order.
std::vector<Eigen::VectorXd> sample_domain(const numerics::Box& domain,
                                           const std::vector<int>& grid, int random_count,
                                           std::uint64_t seed,
                                           double margin = kDefaultDomainMargin);

}  // namespace austere4::geometry
