#include "austere4/geometry/immersion.hpp"

#include <algorithm>
#include <set>

#include "austere4/numerics/errors.hpp"
#include "austere4/numerics/random.hpp"

namespace austere4::geometry {

Immersion::Immersion(std::string name, numerics::VectorMap evaluator, numerics::Box domain,
                     std::vector<int> ruling_coords,
                     std::optional<Eigen::Matrix4d> complex_structure)
    : name_(std::move(name)),
      evaluator_(std::move(evaluator)),
      domain_(std::move(domain)),
      ruling_coords_(std::move(ruling_coords)),
      complex_structure_(std::move(complex_structure)) {
  const int m = domain_dim();
  if (m >= ambient_dim()) {
    throw PreconditionError("immersion '" + name_ + "': domain dimension must be below ambient");
  }
  if (domain_.dim() != m) throw PreconditionError("immersion '" + name_ + "': domain box mismatch");
  for (int i = 0; i < m; ++i) {
    if (!(domain_.lower(i) < domain_.upper(i))) {
      throw PreconditionError("immersion '" + name_ + "': empty domain interval");
    }
  }
  std::set<int> seen;
  for (int c : ruling_coords_) {
    if (c < 0 || c >= m || !seen.insert(c).second) {
      throw PreconditionError("immersion '" + name_ + "': invalid ruling coordinate");
    }
  }
  if (complex_structure_) {
    if (m != 4) throw PreconditionError("complex structure requires a 4-dimensional domain");
    const Eigen::Matrix4d sq = (*complex_structure_) * (*complex_structure_);
    if ((sq + Eigen::Matrix4d::Identity()).norm() > 1e-12) {
      throw PreconditionError("complex structure must satisfy J^2 = -I");
    }
  }
}

const Eigen::Matrix4d& Immersion::complex_structure() const {
  if (!complex_structure_) {
    throw PreconditionError("immersion '" + name_ + "' carries no complex structure");
  }
  return *complex_structure_;
}

Immersion Immersion::with_ruling(std::vector<int> coords) const {
  return Immersion(name_, evaluator_, domain_, std::move(coords), complex_structure_);
}

Immersion Immersion::with_complex_structure(std::optional<Eigen::Matrix4d> j) const {
  return Immersion(name_, evaluator_, domain_, ruling_coords_, std::move(j));
}

Immersion Immersion::renamed(std::string name) const {
  return Immersion(std::move(name), evaluator_, domain_, ruling_coords_, complex_structure_);
}

Eigen::Matrix4d standard_coordinate_complex_structure() {
  Eigen::Matrix4d j = Eigen::Matrix4d::Zero();
  j(1, 0) = 1.0;
  j(0, 1) = -1.0;
  j(3, 2) = 1.0;
  j(2, 3) = -1.0;
  return j;
}

std::vector<Eigen::VectorXd> sample_domain(const numerics::Box& domain,
                                           const std::vector<int>& grid, int random_count,
                                           std::uint64_t seed, double margin) {
  const int m = domain.dim();
  const numerics::Box box = domain.shrunk(margin);
  std::vector<Eigen::VectorXd> out;

  if (!grid.empty()) {
    std::vector<int> counts(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      counts[static_cast<std::size_t>(i)] =
          grid.size() == 1 ? grid.front() : grid.at(static_cast<std::size_t>(i));
      if (counts[static_cast<std::size_t>(i)] < 1) {
        throw PreconditionError("grid counts must be positive");
      }
    }
    if (grid.size() != 1 && static_cast<int>(grid.size()) != m) {
      throw PreconditionError("grid needs one count per domain axis");
    }
    std::vector<int> idx(static_cast<std::size_t>(m), 0);
    while (true) {
      Eigen::VectorXd p(m);
      for (int i = 0; i < m; ++i) {
        const int k = counts[static_cast<std::size_t>(i)];
        const double t = k == 1 ? 0.5 : static_cast<double>(idx[static_cast<std::size_t>(i)]) / (k - 1);
        p(i) = box.lower(i) + t * (box.upper(i) - box.lower(i));
      }
      out.push_back(p);
      int axis = m - 1;
      while (axis >= 0 && ++idx[static_cast<std::size_t>(axis)] == counts[static_cast<std::size_t>(axis)]) {
        idx[static_cast<std::size_t>(axis)] = 0;
        --axis;
      }
      if (axis < 0) break;
    }
  }

  for (int r = 0; r < random_count; ++r) {
    numerics::Rng rng(numerics::stream_seed(seed, static_cast<std::uint64_t>(r)));
    Eigen::VectorXd p(m);
    for (int i = 0; i < m; ++i) p(i) = numerics::uniform(rng, box.lower(i), box.upper(i));
    out.push_back(p);
  }
  return out;
}

}  // namespace austere4::geometry
