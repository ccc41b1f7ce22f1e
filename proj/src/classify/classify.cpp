#include "austere4/classify/classify.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "austere4/classify/rotation.hpp"
#include "austere4/geometry/frame.hpp"
#include "austere4/numerics/errors.hpp"
#include "austere4/numerics/least_squares.hpp"
#include "austere4/numerics/random.hpp"

namespace austere4::classify {

namespace {

using numerics::SymMatrix;
using Forms = std::vector<Eigen::Matrix4d>;

constexpr double kSqrt2 = 1.4142135623730951;
// Restart loop stops once a fit this good is found. Agreement between restarts
// is no signal: a spurious basin can attract many of them.
constexpr double kCleanFit = 1e-10;

Forms orthonormal_forms(const SymSpan& span) {
  if (span.dim_ambient() != 4) throw PreconditionError("type fits need 4x4 matrices");
  Forms out;
  for (const SymMatrix& s : span.orthonormal_basis()) out.emplace_back(s.matrix());
  return out;
}

// Q_B^perp component of T, Frobenius-isometric.
void b_residual(const Eigen::Matrix4d& t, double* out) {
  const double m = (t(0, 0) + t(1, 1) - t(2, 2) - t(3, 3)) / 4.0;
  out[0] = kSqrt2 * t(0, 1);
  out[1] = kSqrt2 * t(2, 3);
  out[2] = t(0, 0) - m;
  out[3] = t(1, 1) - m;
  out[4] = t(2, 2) + m;
  out[5] = t(3, 3) + m;
}

// Pair j couples T(0, j) with the complementary entry.
constexpr int kPairOther[3][2] = {{2, 3}, {1, 3}, {1, 2}};

// Direction (d0, d1) of the pair (T(0,j), T(p,q)) for each j given the chart
// parameters. `eliminated` is the index of the lambda written as a function of
// the other two; its direction is homogeneous so lambda = infinity is fine.
std::array<Eigen::Vector2d, 3> pair_directions(int eliminated, double a, double b) {
  std::array<Eigen::Vector2d, 3> d;
  int free_slot = 0;
  for (int j = 0; j < 3; ++j) {
    if (j == eliminated) {
      d[j] = Eigen::Vector2d(1.0 + a * b, -(a + b));
    } else {
      d[j] = Eigen::Vector2d(1.0, free_slot == 0 ? a : b);
      ++free_slot;
    }
  }
  return d;
}

void c_residual(const Eigen::Matrix4d& t, const std::array<Eigen::Vector2d, 3>& dirs,
                double* out) {
  for (int i = 0; i < 4; ++i) out[i] = t(i, i);
  for (int j = 0; j < 3; ++j) {
    const double ta = t(0, j + 1);
    const double tb = t(kPairOther[j][0], kPairOther[j][1]);
    const double n = dirs[j].norm();
    // Both homogeneous coordinates vanish only where the relation leaves the
    // parameter undetermined; count the whole pair as misfit there.
    out[4 + j] = n < 1e-12 ? kSqrt2 * std::hypot(ta, tb)
                           : kSqrt2 * (dirs[j](0) * tb - dirs[j](1) * ta) / n;
  }
}

Eigen::Matrix4d reorthonormalize(const Eigen::Matrix4d& r) {
  return 1.5 * r - 0.5 * r * r.transpose() * r;
}

struct RotState {
  Eigen::Matrix4d rot = Eigen::Matrix4d::Identity();
  Eigen::VectorXd extra;
};

// Residual rows per form for a model whose misfit is linear in T once the
// extra parameters are fixed.
using ModelResidual = std::function<void(const Eigen::Matrix4d& t, const Eigen::VectorXd& extra,
                                         double* out)>;

struct RotFit {
  double residual = std::numeric_limits<double>::infinity();
  RotState state;
};

RotFit fit_over_rotations(const Forms& forms, int rows_per_form, int extra_dim,
                          const ModelResidual& model, std::uint64_t seed, int restarts,
                          const std::function<Eigen::VectorXd(numerics::Rng&)>& extra_start) {
  const int k = static_cast<int>(forms.size());
  const int rows = rows_per_form * k;
  std::array<Eigen::Matrix4d, 6> gens;
  for (int g = 0; g < 6; ++g) gens[g] = so4_generator(g);

  auto eval = [&](const Eigen::Matrix4d& rot, const Eigen::VectorXd& extra) {
    Eigen::VectorXd r(rows);
    for (int i = 0; i < k; ++i) {
      model(rot * forms[i] * rot.transpose(), extra, r.data() + i * rows_per_form);
    }
    return r;
  };
  const numerics::ResidualFn<RotState> residual = [&](const RotState& s) {
    return eval(s.rot, s.extra);
  };
  const numerics::RetractFn<RotState> retract = [&](const RotState& s, const Eigen::VectorXd& d) {
    Eigen::Matrix4d w = Eigen::Matrix4d::Zero();
    for (int g = 0; g < 6; ++g) w += d(g) * gens[g];
    RotState out{reorthonormalize(w.exp() * s.rot), s.extra + d.tail(extra_dim)};
    return out;
  };
  // Left translation by exp(w) changes T by [w, T] to first order, and the
  // model residual is linear in T.
  const numerics::JacobianFn<RotState> jacobian = [&](const RotState& s) {
    Eigen::MatrixXd jac(rows, 6 + extra_dim);
    std::vector<Eigen::Matrix4d> ts(k);
    for (int i = 0; i < k; ++i) ts[i] = s.rot * forms[i] * s.rot.transpose();
    for (int g = 0; g < 6; ++g) {
      for (int i = 0; i < k; ++i) {
        const Eigen::Matrix4d c = gens[g] * ts[i] - ts[i] * gens[g];
        model(c, s.extra, jac.col(g).data() + i * rows_per_form);
      }
    }
    constexpr double h = 1e-7;
    for (int e = 0; e < extra_dim; ++e) {
      Eigen::VectorXd up = s.extra, down = s.extra;
      up(e) += h;
      down(e) -= h;
      jac.col(6 + e) = (eval(s.rot, up) - eval(s.rot, down)) / (2.0 * h);
    }
    return jac;
  };

  RotFit best;
  for (int r = 0; r < restarts; ++r) {
    numerics::Rng rng(numerics::stream_seed(seed, static_cast<std::uint64_t>(r)));
    RotState start{numerics::random_rotation(4, rng), extra_start(rng)};
    auto fit = numerics::minimize_least_squares<RotState>(6 + extra_dim, residual, retract,
                                                          std::move(start), {}, jacobian);
    const double res = std::sqrt(2.0 * fit.cost / static_cast<double>(k));
    if (res < best.residual) {
      best.residual = res;
      best.state = std::move(fit.state);
    }
    if (best.residual < kCleanFit) break;
  }
  best.residual = std::min(best.residual, 1.0);
  return best;
}

// The Q_C pattern is preserved by relabelling all four frame vectors:
// permuting e2..e4 permutes the lambdas, swapping e1 with e_{j+1} inverts the
// two lambdas other than lambda_j, and a reflection negates all three. The
// canonical representative is the finite orbit element of smallest norm,
// sorted, ties broken lexicographically.
Eigen::Vector3d canonical_lambdas(const Eigen::Vector3d& l) {
  constexpr double kTie = 1e-9;
  std::vector<Eigen::Vector3d> orbit;
  for (int kept = -1; kept < 3; ++kept) {
    Eigen::Vector3d v = l;
    bool finite = true;
    for (int j = 0; j < 3; ++j) {
      if (kept < 0 || j == kept) continue;
      if (std::abs(l(j)) < 1e-12) finite = false;
      else v(j) = 1.0 / l(j);
    }
    if (!finite) continue;
    for (double sign : {1.0, -1.0}) {
      Eigen::Vector3d w = sign * v;
      std::sort(w.data(), w.data() + 3);
      orbit.push_back(w);
    }
  }
  Eigen::Vector3d best = orbit.front();
  for (const Eigen::Vector3d& w : orbit) {
    const double dn = w.squaredNorm() - best.squaredNorm();
    if (dn < -kTie) {
      best = w;
      continue;
    }
    if (dn > kTie) continue;
    for (int j = 0; j < 3; ++j) {
      if (w(j) < best(j) - kTie) {
        best = w;
        break;
      }
      if (w(j) > best(j) + kTie) break;
    }
  }
  return best;
}

// Lambdas read off a fitted frame: lambda_j is the ratio of the paired entries
// over the conjugated span, when the span exercises that coordinate.
std::array<std::optional<double>, 3> frame_lambdas(const Forms& forms, const Eigen::Matrix4d& rot) {
  constexpr int kPairs[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
  std::array<std::optional<double>, 3> out;
  for (int j = 0; j < 3; ++j) {
    double num = 0.0;
    double den = 0.0;
    for (const Eigen::Matrix4d& f : forms) {
      const Eigen::Matrix4d t = rot * f * rot.transpose();
      const double x = t(kPairs[j][0], kPairs[j][1]);
      num += x * t(kPairs[j][2], kPairs[j][3]);
      den += x * x;
    }
    if (den > 1e-12) out[j] = num / den;
  }
  return out;
}

}  // namespace

FitA fit_type_A(const SymSpan& span) {
  const Forms forms = orthonormal_forms(span);
  FitA out;
  out.j = twistor_generator(+1, 0);
  if (forms.empty()) return out;
  const int k = static_cast<int>(forms.size());
  out.residual = std::numeric_limits<double>::infinity();
  for (int sign : {+1, -1}) {
    Eigen::MatrixXd op(16 * k, 3);
    for (int g = 0; g < 3; ++g) {
      const Eigen::Matrix4d gen = twistor_generator(sign, g);
      for (int i = 0; i < k; ++i) {
        const Eigen::Matrix4d ac = forms[i] * gen + gen * forms[i];
        op.col(g).segment(16 * i, 16) = Eigen::Map<const Eigen::VectorXd>(ac.data(), 16);
      }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(op, Eigen::ComputeFullV);
    // |S J + J S| <= 2 for unit S and orthogonal J.
    const double res = svd.singularValues()(2) / (2.0 * std::sqrt(static_cast<double>(k)));
    if (res < out.residual) {
      out.residual = res;
      const Eigen::Vector3d c = svd.matrixV().col(2);
      Eigen::Matrix4d j = Eigen::Matrix4d::Zero();
      for (int g = 0; g < 3; ++g) j += c(g) * twistor_generator(sign, g);
      out.j = j;
    }
  }
  return out;
}

FitB fit_type_B(const SymSpan& span, std::uint64_t seed, int restarts) {
  const Forms forms = orthonormal_forms(span);
  FitB out;
  if (forms.empty()) return out;
  if (forms.size() > 5) {
    out.residual = 1.0;
    out.dimension_ok = false;
    return out;
  }
  const ModelResidual model = [](const Eigen::Matrix4d& t, const Eigen::VectorXd&, double* r) {
    b_residual(t, r);
  };
  const RotFit fit = fit_over_rotations(forms, 6, 0, model, seed, restarts,
                                        [](numerics::Rng&) { return Eigen::VectorXd(); });
  out.residual = fit.residual;
  out.frame = fit.state.rot;
  return out;
}

FitC fit_type_C(const SymSpan& span, std::uint64_t seed, int restarts) {
  const Forms forms = orthonormal_forms(span);
  FitC out;
  if (forms.empty()) {
    out.params = QCParams(0.0, 0.0, 0.0);
    return out;
  }
  if (forms.size() > 3) {
    out.residual = 1.0;
    out.dimension_ok = false;
    return out;
  }
  // Restarts alternate between eliminating lambda3 and lambda1. Each chart
  // alone covers all of Q_C up to relabelling the frame; alternating keeps
  // both singular loci reachable from fresh starts.
  RotFit best;
  int best_chart = 2;
  for (int chart : {2, 0}) {
    const ModelResidual model = [chart](const Eigen::Matrix4d& t, const Eigen::VectorXd& e,
                                        double* r) {
      c_residual(t, pair_directions(chart, e(0), e(1)), r);
    };
    const int share = (restarts + (chart == 2 ? 1 : 0)) / 2;
    if (share == 0) continue;
    const std::uint64_t chart_seed = numerics::stream_seed(seed, static_cast<std::uint64_t>(chart));
    RotFit fit = fit_over_rotations(forms, 7, 2, model, chart_seed, share, [](numerics::Rng& rng) {
      Eigen::VectorXd e(2);
      e << numerics::gaussian(rng), numerics::gaussian(rng);
      return e;
    });
    if (fit.residual < best.residual) {
      best = std::move(fit);
      best_chart = chart;
    }
    if (best.residual < kCleanFit) break;
  }
  out.residual = best.residual;
  out.frame = best.state.rot;

  std::array<std::optional<double>, 3> l = frame_lambdas(forms, best.state.rot);
  const int known = static_cast<int>(std::count_if(l.begin(), l.end(), [](const auto& v) { return v.has_value(); }));
  if (known < 2) {
    // Too few coordinates in the span to read the frame; fall back to the chart.
    const double a = best.state.extra(0);
    const double b = best.state.extra(1);
    int slot = 0;
    for (int j = 0; j < 3; ++j) {
      if (j != best_chart) l[j] = slot++ == 0 ? a : b;
    }
  }
  for (int j = 0; j < 3; ++j) {
    if (l[j]) continue;
    const double a = *l[(j + 1) % 3];
    const double b = *l[(j + 2) % 3];
    // When 1 + ab vanishes the relation leaves lambda_j free.
    l[j] = std::abs(1.0 + a * b) > 1e-10 ? -(a + b) / (1.0 + a * b) : 0.0;
  }
  const Eigen::Vector3d c = canonical_lambdas(Eigen::Vector3d(*l[0], *l[1], *l[2]));
  out.params = QCParams::unchecked(c(0), c(1), c(2));
  return out;
}

std::string Verdict::to_string() const {
  std::string s;
  if (has[0]) s += 'A';
  if (has[1]) s += 'B';
  if (has[2]) s += 'C';
  return s.empty() ? "-" : s;
}

TypeReport classify_span(const SymSpan& span, double threshold, std::uint64_t seed) {
  TypeReport rep;
  rep.normal_rank = span.span_dim();
  rep.rank_one = rep.normal_rank <= 1;

  const FitA a = fit_type_A(span);
  const FitB b = fit_type_B(span, numerics::stream_seed(seed, 1));
  const FitC c = fit_type_C(span, numerics::stream_seed(seed, 2));
  rep.residual_a = a.residual;
  rep.residual_b = b.residual;
  rep.residual_c = c.residual;
  rep.frame_b = b.frame;
  rep.frame_c = c.frame;
  rep.verdict.has = {a.residual < threshold, b.residual < threshold, c.residual < threshold};
  if (rep.verdict.has[0]) rep.j_found = a.j;
  if (rep.verdict.has[2]) rep.qc_params = c.params;
  return rep;
}

SymSpan second_fundamental_span(const geometry::Immersion& imm, const Eigen::VectorXd& x) {
  if (imm.domain_dim() != 4) throw PreconditionError("classification needs a 4-dimensional immersion");
  const geometry::SecondFundamentalForm sff = geometry::second_fundamental_form(imm, x);
  return SymSpan(4, sff.components);
}

TypeReport classify_point(const geometry::Immersion& imm, const Eigen::VectorXd& x,
                          double threshold, std::uint64_t seed) {
  if (imm.domain_dim() != 4) throw PreconditionError("classification needs a 4-dimensional immersion");
  const geometry::SecondFundamentalForm sff = geometry::second_fundamental_form(imm, x);
  TypeReport rep = classify_span(SymSpan(4, sff.components), threshold, seed);
  rep.normal_rank = geometry::normal_rank(sff);
  rep.rank_one = rep.normal_rank <= 1;
  return rep;
}

}  // namespace austere4::classify
