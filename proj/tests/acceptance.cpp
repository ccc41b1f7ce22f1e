// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "austere4/austere/models.hpp"
#include "austere4/austere/subspace.hpp"
#include "austere4/classify/classify.hpp"
#include "austere4/families/families.hpp"
#include "austere4/geometry/frame.hpp"
#include "austere4/geometry/holomorphy.hpp"
#include "austere4/geometry/ruling.hpp"
#include "austere4/numerics/random.hpp"
#include "austere4/slag/conormal.hpp"
#include "austere4/sweep/sweep.hpp"

using namespace austere4;
using austere::QCParams;
using austere::SymMatrix;
using austere::SymSpan;
using geometry::Immersion;
using numerics::Rng;
using numerics::uniform;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

// Pinned tolerances.
constexpr double kOracleTol = 1e-9;
constexpr double kFamilyTol = 1e-8;
constexpr double kStraightTol = 1e-12;
constexpr double kConditionTol = 1e-10;
constexpr double kRecoveryTol = 1e-6;
constexpr double kRecoveryRate = 0.95;
constexpr double kHoloGood = 1e-4;
constexpr double kHoloBad = 0.1;
constexpr double kLagrangianTol = 1e-6;
constexpr double kPhaseTol = 1e-4;
constexpr double kPhaseControl = 0.01;
constexpr double kJetTol = 1e-5;

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

SymMatrix diag(const Eigen::VectorXd& d) { return SymMatrix::diagonal(d); }

families::HoloCurveSpec curve(std::vector<std::vector<std::complex<double>>> c) {
  families::HoloCurveSpec spec;
  spec.coefficients = std::move(c);
  return spec;
}

families::HelicoidSpec random_helicoid_spec(Rng& rng) {
  families::HelicoidSpec spec;
  spec.m = 2 + static_cast<int>(rng() % 3);
  spec.s = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(spec.m - 1));
  spec.lambdas.assign(static_cast<std::size_t>(spec.s + 1), 0.0);
  spec.lambdas[0] = uniform(rng, -2.0, 2.0);
  for (int i = 1; i <= spec.s; ++i) {
    const double mag = uniform(rng, 0.3, 2.5);
    spec.lambdas[static_cast<std::size_t>(i)] = rng() % 2 ? mag : -mag;
  }
  return spec;
}

// Eigenvalue symmetry of a shape operator, read off Eigen's solver.
double spectrum_asymmetry(const SymMatrix& s) {
  const Eigen::MatrixXd m = s.matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const Eigen::VectorXd ev = es.eigenvalues();
  const Eigen::Index n = ev.size();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) worst = std::max(worst, std::abs(ev(i) + ev(n - 1 - i)));
  return worst / std::max(1.0, ev.cwiseAbs().maxCoeff());
}

Eigen::Vector3d random_valid_lambdas(Rng& rng) {
  for (;;) {
    const double a = uniform(rng, -3.0, 3.0);
    const double b = uniform(rng, -3.0, 3.0);
    if (std::abs(1.0 + a * b) < 0.2) continue;
    return {a, b, austere::lambda3_from(a, b)};
  }
}

SymSpan random_subspace(const SymSpan& span, int k, Rng& rng) {
  std::vector<SymMatrix> out;
  for (int i = 0; i < k; ++i) {
    Eigen::VectorXd c(static_cast<Eigen::Index>(span.basis().size()));
    for (Eigen::Index j = 0; j < c.size(); ++j) c(j) = numerics::gaussian(rng);
    out.push_back(span.element(c));
  }
  return SymSpan(span.dim_ambient(), out);
}

// 1. The odd-trace test against the eigenvalue definition.
Outcome oracle_equivalence() {
  Rng rng(101);
  int disagreements = 0;
  int constructed_rejected = 0;
  for (int k = 0; k < 1000; ++k) {
    const SymMatrix s = numerics::random_symmetric(4, rng);
    if (austere::is_austere_matrix(s, kOracleTol) != austere::eigen_symmetry_oracle(s, kOracleTol)) {
      ++disagreements;
    }
  }
  for (int k = 0; k < 1000; ++k) {
    const double a = numerics::gaussian(rng);
    const double b = numerics::gaussian(rng);
    const SymMatrix t = diag(vec({a, -a, b, -b})).conjugated(numerics::random_rotation(4, rng));
    const bool fast = austere::is_austere_matrix(t, kOracleTol);
    if (fast != austere::eigen_symmetry_oracle(t, kOracleTol)) ++disagreements;
    if (!fast) ++constructed_rejected;
  }
  return {disagreements == 0 && constructed_rejected == 0,
          fmt("disagreements=%g constructed_rejected=%g of 2000", disagreements, constructed_rejected)};
}

// 2. Random generalized helicoids are austere and minimal.
Outcome family_austerity() {
  Rng rng(202);
  double worst_defect = 0.0, worst_spectrum = 0.0, worst_h = 0.0;
  int singular = 0;
  for (int f = 0; f < 20; ++f) {
    const Immersion imm = families::generalized_helicoid(random_helicoid_spec(rng));
    const auto points = geometry::sample_domain(imm.domain(), {}, 100, numerics::stream_seed(202, f));
    sweep::PointOptions options;
    const auto records = sweep::sweep_points(imm, points, options, sweep::Execution::kParallel);
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (records[i].singular) {
        ++singular;
        continue;
      }
      worst_defect = std::max(worst_defect, records[i].austere_defect);
      worst_h = std::max(worst_h, records[i].minimal_defect);
      // Independent route: eigenvalue symmetry of a random shape operator.
      const auto sff = geometry::second_fundamental_form(imm, points[i]);
      const Eigen::VectorXd xi = numerics::random_unit_vector(sff.codim(), rng);
      worst_spectrum = std::max(worst_spectrum, spectrum_asymmetry(geometry::shape_operator(sff, xi)));
    }
  }
  return {singular == 0 && worst_defect < kFamilyTol && worst_spectrum < kFamilyTol && worst_h < kFamilyTol,
          fmt("max_austere_defect=%.3g max_spectrum_asymmetry=%.3g max_|H|=%.3g", worst_defect, worst_spectrum,
              worst_h) +
              (singular ? " singular=" + std::to_string(singular) : "")};
}

// 3. Maximal models are austere; breaking the lambda relation breaks Q_C.
Outcome model_validity() {
  const bool qa = austere::is_austere_subspace(austere::qa_basis());
  const bool qb = austere::is_austere_subspace(austere::qb_basis());
  Rng rng(303);
  int qc_pass = 0, broken_fail = 0;
  double weakest_broken = 1e300;
  for (int k = 0; k < 50; ++k) {
    const Eigen::Vector3d l = random_valid_lambdas(rng);
    if (austere::is_austere_subspace(austere::qc_basis(QCParams(l(0), l(1), l(2))))) ++qc_pass;
    Eigen::Vector3d broken = l;
    broken(2) += rng() % 2 ? 0.1 : -0.1;
    const SymSpan span = austere::qc_basis_unchecked(broken);
    if (!austere::is_austere_subspace(span)) ++broken_fail;
    // Independent route: some element of the broken span has asymmetric spectrum.
    double asym = 0.0;
    for (int t = 0; t < 20; ++t) {
      const Eigen::Vector3d c = numerics::random_unit_vector(3, rng);
      asym = std::max(asym, spectrum_asymmetry(span.element(c)));
    }
    weakest_broken = std::min(weakest_broken, asym);
  }
  return {qa && qb && qc_pass == 50 && broken_fail == 50 && weakest_broken > kOracleTol,
          fmt("qa=%g qb=%g qc_pass=%g/50", qa, qb, qc_pass) +
              fmt(" broken_fail=%g/50 min_broken_asymmetry=%.3g", broken_fail, weakest_broken)};
}

// 4. Ruling straightness and the ruled condition on helicoids; 3-planes on the cone.
Outcome ruling_verification() {
  Rng rng(404);
  double straight = 0.0, condition = 0.0;
  for (int f = 0; f < 20; ++f) {
    const families::HelicoidSpec spec = random_helicoid_spec(rng);
    const Immersion imm = families::generalized_helicoid(spec);
    const auto points = geometry::sample_domain(imm.domain(), {}, 20, numerics::stream_seed(404, f));
    sweep::PointOptions options;
    options.check_ruling = spec.s;
    for (const auto& rec : sweep::sweep_points(imm, points, options, sweep::Execution::kParallel)) {
      straight = std::max(straight, rec.ruling_straightness.value_or(1.0));
      condition = std::max(condition, rec.ruling_condition.value_or(1.0));
    }
  }
  const Immersion cone = families::helicoid_cone(1.0);
  sweep::PointOptions options;
  options.check_ruling = 3;
  double cone_straight = 0.0, cone_condition = 0.0;
  const auto points = geometry::sample_domain(cone.domain(), {}, 50, 405);
  for (const auto& rec : sweep::sweep_points(cone, points, options, sweep::Execution::kParallel)) {
    cone_straight = std::max(cone_straight, rec.ruling_straightness.value_or(1.0));
    cone_condition = std::max(cone_condition, rec.ruling_condition.value_or(1.0));
  }
  return {straight < kStraightTol && condition < kConditionTol && cone_straight < kStraightTol &&
              cone_condition < kConditionTol,
          fmt("helicoids straightness=%.3g condition=%.3g", straight, condition) +
              fmt(" cone3 straightness=%.3g condition=%.3g", cone_straight, cone_condition)};
}

// 5. Recovery of spans inside each model after a random rotation.
Outcome type_recovery() {
  Rng rng(505);
  int recovered[3] = {0, 0, 0};
  int invariant = 0;
  constexpr int kTrials = 200;
  for (int type = 0; type < 3; ++type) {
    for (int t = 0; t < kTrials; ++t) {
      SymSpan model;
      int full = 0;
      if (type == 0) {
        model = austere::qa_basis();
        full = 6;
      } else if (type == 1) {
        model = austere::qb_basis();
        full = 5;
      } else {
        const Eigen::Vector3d l = random_valid_lambdas(rng);
        model = austere::qc_basis(QCParams(l(0), l(1), l(2)));
        full = 3;
      }
      const int k = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(full - 1));
      const SymSpan span = random_subspace(model, k, rng);
      const SymSpan moved = span.conjugated(numerics::random_rotation(4, rng));
      const std::uint64_t seed = numerics::stream_seed(505, static_cast<std::uint64_t>(type * kTrials + t));
      const classify::TypeReport a = classify::classify_span(moved, kRecoveryTol, seed);
      const double residual = type == 0 ? a.residual_a : type == 1 ? a.residual_b : a.residual_c;
      if (residual < kRecoveryTol) ++recovered[type];
      const classify::TypeReport b =
          classify::classify_span(moved.conjugated(numerics::random_rotation(4, rng)), kRecoveryTol, seed + 1);
      if (a.verdict == b.verdict) ++invariant;
    }
  }
  const bool ok = recovered[0] >= kRecoveryRate * kTrials && recovered[1] >= kRecoveryRate * kTrials &&
                  recovered[2] >= kRecoveryRate * kTrials && invariant == 3 * kTrials;
  return {ok, fmt("recovered A=%g B=%g C=%g of 200", recovered[0], recovered[1], recovered[2]) +
                  fmt(" verdict_invariant=%g/600", invariant)};
}

// 6. Taxonomy spot-checks.
Outcome taxonomy() {
  std::vector<std::string> failures;
  const auto check = [&](bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  };

  const Immersion product = families::product_immersion(families::classical_helicoid(1.0),
                                                        families::classical_helicoid(0.6));
  const Eigen::VectorXd xp = vec({1.0, 0.7, 2.0, 1.1});
  const auto rp = classify::classify_point(product, xp);
  check(rp.verdict.contains(classify::ModelType::kB), "product B");
  check(geometry::normal_rank(geometry::second_fundamental_form(product, xp)) == 2, "product delta");

  families::HelicoidSpec spec;
  spec.m = 4;
  spec.s = 3;
  spec.lambdas = {1.0, 0.7, 1.3, 2.1};
  const Immersion h43 = families::generalized_helicoid(spec);
  const Eigen::VectorXd xh = vec({1.0, 0.6, 1.5, 1.3});
  const auto rh = classify::classify_point(h43, xh);
  check(geometry::normal_rank(geometry::second_fundamental_form(h43, xh)) == 3, "helicoid43 delta");
  check(rh.verdict.contains(classify::ModelType::kC), "helicoid43 C");
  check(rh.qc_params && rh.qc_params->lambdas().cwiseAbs().maxCoeff() < 1e-5, "helicoid43 lambda ~ 0");

  const Immersion cone = families::complex_cone(curve({{1.0}, {0.0, 1.0}, {0.0, 0.0, 0.5}}));
  const Eigen::VectorXd xc = vec({1.0, 0.5, 0.3, -0.2});
  const auto rc = classify::classify_point(cone, xc);
  check(rc.verdict.contains(classify::ModelType::kA), "cone A");
  check(geometry::ruling_j_invariance_defect(cone, xc) < geometry::kJInvarianceTolerance, "cone J-invariant ruling");

  const Immersion hr2 = families::cylinder_over(families::classical_helicoid(1.0), 2);
  const auto sff = geometry::second_fundamental_form(hr2, vec({1.0, 0.6, 0.1, 0.2}));
  check(hr2.ambient_dim() == 5, "helicoid x R2 in R5");
  check(geometry::normal_rank(sff) == 1, "helicoid x R2 delta");
  check(geometry::relative_nullity(sff).dimension == 2, "helicoid x R2 nullity");
  check(geometry::gauss_map_rank(sff) == 2, "helicoid x R2 gauss rank");

  std::string detail = failures.empty() ? "all 12 checks" : "failed:";
  for (const auto& f : failures) detail += " [" + f + "]";
  return {failures.empty(), detail};
}

// 7. Ruling map of the complex cone is holomorphic for one orientation only.
Outcome holomorphy() {
  const Immersion cone = families::complex_cone(curve({{1.0}, {0.0, 1.0}, {0.0, 0.0, 1.0}}));
  const auto points = geometry::sample_domain(cone.domain(), {}, 50, 707);
  const auto good = sweep::sweep_holomorphy(cone, points, geometry::PlaneOrientation::kNegative, 1e-4,
                                            sweep::Execution::kParallel);
  const auto bad = sweep::sweep_holomorphy(cone, points, geometry::PlaneOrientation::kPositive, 1e-4,
                                           sweep::Execution::kParallel);
  double worst_good = 0.0, best_bad = 1e300;
  for (const auto& r : good) worst_good = std::max(worst_good, r.defect);
  for (const auto& r : bad) best_bad = std::min(best_bad, r.defect);
  return {worst_good < kHoloGood && best_bad > kHoloBad,
          fmt("max_defect_correct=%.3g min_defect_flipped=%.3g", worst_good, best_bad)};
}

// 8. Conormal bundles are Lagrangian; special only over austere bases.
Outcome harvey_lawson() {
  families::HelicoidSpec h42;
  h42.m = 4;
  h42.s = 2;
  h42.lambdas = {1.0, 1.0, -2.0};
  const std::vector<Immersion> families_all = {
      families::classical_helicoid(1.0),
      families::generalized_helicoid(h42),
      families::product_immersion(families::classical_helicoid(1.0), families::classical_helicoid(0.5)),
      families::cylinder_over(families::classical_helicoid(1.0), 2),
      families::helicoid_cone(1.0),
      families::complex_cone(curve({{1.0}, {0.0, 1.0}, {0.0, 0.0, 1.0}})),
      families::complex_cylinder(curve({{0.0, 1.0}, {1.0, 0.0, 1.0}})),
      families::sphere(3, 1.0)};
  double worst_lag = 0.0;
  for (std::size_t f = 0; f < families_all.size(); ++f) {
    const auto samples = slag::random_conormal_samples(families_all[f], 20, numerics::stream_seed(808, f));
    for (const auto& r :
         sweep::sweep_conormal(families_all[f], samples, slag::Convention::kPlus, sweep::Execution::kParallel)) {
      worst_lag = std::max(worst_lag, r.lagrangian_defect);
    }
  }
  double worst_phase = 0.0;
  for (std::size_t f = 0; f + 1 < families_all.size(); ++f) {
    const Immersion& imm = families_all[f];
    worst_phase = std::max(worst_phase,
                           slag::special_phase_defect(imm, slag::random_conormal_samples(imm, 50, 809 + f)));
  }
  const Immersion& s2 = families_all.back();
  const double sphere_phase = slag::special_phase_defect(s2, slag::random_conormal_samples(s2, 50, 899));
  return {worst_lag < kLagrangianTol && worst_phase < kPhaseTol && sphere_phase > kPhaseControl,
          fmt("max_lagrangian=%.3g max_phase_austere=%.3g sphere_phase=%.3g", worst_lag, worst_phase,
              sphere_phase)};
}

// 9. Taylor-arithmetic jets against central differences.
Outcome differentiation() {
  families::HelicoidSpec h32;
  h32.m = 3;
  h32.s = 2;
  h32.lambdas = {0.5, 1.0, 2.0};
  families::HelicoidSpec h43;
  h43.m = 4;
  h43.s = 3;
  h43.lambdas = {1.0, 0.7, 1.3, 2.1};
  const std::vector<Immersion> all = {
      families::classical_helicoid(1.0),
      families::generalized_helicoid(h32),
      families::generalized_helicoid(h43),
      families::product_immersion(families::classical_helicoid(1.0), families::classical_helicoid(0.5)),
      families::cylinder_over(families::classical_helicoid(1.0), 2),
      families::helicoid_cone(1.0),
      families::complex_cone(curve({{1.0}, {0.0, 1.0}, {0.0, 0.0, 1.0}})),
      families::complex_cylinder(curve({{0.0, 1.0}, {1.0, 0.0, 1.0}})),
      families::sphere(3, 1.0),
      families::sphere(4, 2.0),
      families::flat_plane(2, 4)};
  double worst = 0.0;
  std::string worst_name;
  for (std::size_t f = 0; f < all.size(); ++f) {
    const Immersion& imm = all[f];
    for (const Eigen::VectorXd& x : geometry::sample_domain(imm.domain(), {}, 100, numerics::stream_seed(909, f))) {
      const numerics::Jet2 jet = imm.jet(x);
      const numerics::FiniteDifferenceJet fd = numerics::finite_diff_second(imm.evaluator(), x, 1e-4);
      double diff = (jet.jacobian - fd.jacobian).cwiseAbs().maxCoeff();
      double ref = jet.jacobian.cwiseAbs().maxCoeff();
      for (std::size_t a = 0; a < jet.hessian.size(); ++a) {
        diff = std::max(diff, (jet.hessian[a] - fd.hessian[a]).cwiseAbs().maxCoeff());
        ref = std::max(ref, jet.hessian[a].cwiseAbs().maxCoeff());
      }
      const double err = diff / std::max(1.0, ref);
      if (err > worst) {
        worst = err;
        worst_name = imm.name();
      }
    }
  }
  return {worst < kJetTol, fmt("max_relative_error=%.3g over %g families", worst, static_cast<double>(all.size())) +
                               (worst_name.empty() ? "" : " (worst " + worst_name + ")")};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

// 10. The CLI pipeline is byte-for-byte reproducible.
Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path();
  int identical = 0, runs = 0;
  std::string problems;
  for (const char* cmd : {"verify", "classify"}) {
    std::string reports[2];
    for (int r = 0; r < 2; ++r) {
      const auto path = dir / ("austere4_acceptance_" + std::string(cmd) + std::to_string(r) + ".json");
      const std::string line = std::string(AUSTERE4_CLI_PATH) + " " + cmd +
                               " --family helicoid_cone --random 40 --grid 2 --seed 1234 --check-ruling 3"
                               " --format structured --out " + path.string() + " > /dev/null 2>&1";
      const int status = std::system(line.c_str());
      if (status != 0) problems += std::string(" ") + cmd + " exit status " + std::to_string(status);
      reports[r] = slurp(path);
      std::filesystem::remove(path);
    }
    ++runs;
    if (!reports[0].empty() && reports[0] == reports[1]) ++identical;
  }
  return {identical == runs && problems.empty(),
          fmt("identical=%g/%g", identical, runs) + problems};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle_equivalence", oracle_equivalence},
      {"family_austerity", family_austerity},
      {"model_validity", model_validity},
      {"ruling_verification", ruling_verification},
      {"type_recovery", type_recovery},
      {"taxonomy", taxonomy},
      {"holomorphy", holomorphy},
      {"harvey_lawson", harvey_lawson},
      {"differentiation", differentiation},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.passed) ++failed;
    std::printf("%s %2zu %-20s %s (%.1fs)\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
