#include "austere4/cli/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "austere4/numerics/random.hpp"
#include "austere4/slag/conormal.hpp"
#include "austere4/sweep/sweep.hpp"

namespace austere4::cli {

namespace {

using Json = nlohmann::ordered_json;

// Independent streams carved from the run seed.
constexpr std::uint64_t kSampleStream = 1;
constexpr std::uint64_t kClassifyStream = 2;
constexpr std::uint64_t kConormalStream = 3;

constexpr double kHolomorphyStep = 1e-4;

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string fmt_vec(const Eigen::VectorXd& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v(i));
  return s + ")";
}

Json to_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

sweep::Execution execution(const RunConfig& c) {
  return c.serial ? sweep::Execution::kSerial : sweep::Execution::kParallel;
}

Json header(const char* command, const RunConfig& c, const geometry::Immersion& imm) {
  Json h;
  h["command"] = command;
  h["family"] = c.family;
  h["immersion"] = imm.name();
  h["domain_dim"] = imm.domain_dim();
  h["ambient_dim"] = imm.ambient_dim();
  h["seed"] = c.seed;
  return h;
}

struct Assertion {
  std::string name;
  std::vector<std::size_t> failures;
};

Json assertions_json(const std::vector<Assertion>& as) {
  Json a = Json::array();
  for (const auto& x : as) {
    Json j;
    j["name"] = x.name;
    j["passed"] = x.failures.empty();
    j["failing_indices"] = x.failures;
    a.push_back(j);
  }
  return a;
}

void assertions_text(std::ostringstream& o, const std::vector<Assertion>& as) {
  for (const auto& x : as) {
    o << "assert " << x.name << ": " << (x.failures.empty() ? "PASS" : "FAIL");
    if (!x.failures.empty()) {
      o << " at indices";
      for (std::size_t i : x.failures) o << ' ' << i;
    }
    o << '\n';
  }
}

int exit_for(const std::vector<Assertion>& as) {
  for (const auto& x : as) {
    if (!x.failures.empty()) return kExitAssertion;
  }
  return kExitPass;
}

Json record_json(const sweep::PointRecord& r) {
  Json j;
  j["index"] = r.index;
  j["domain"] = to_json(r.domain);
  j["ambient"] = to_json(r.ambient);
  j["singular"] = r.singular;
  if (r.singular) return j;
  j["delta"] = r.delta;
  j["austere"] = r.austere;
  j["austere_defect"] = r.austere_defect;
  j["minimal_defect"] = r.minimal_defect;
  Json ruling;
  ruling["straightness"] = optional_json(r.ruling_straightness);
  ruling["condition"] = optional_json(r.ruling_condition);
  j["ruling_defects"] = ruling;
  j["nullity_dim"] = r.nullity_dim;
  if (r.classification) {
    const auto& c = *r.classification;
    j["verdict"] = c.verdict.to_string();
    j["residuals"] = Json{{"A", c.residual_a}, {"B", c.residual_b}, {"C", c.residual_c}};
    j["rank_one"] = c.rank_one;
    j["lambdas"] = c.lambdas ? to_json(*c.lambdas) : Json(nullptr);
  }
  return j;
}

std::string record_text(const sweep::PointRecord& r) {
  std::string s = std::to_string(r.index) + " u=" + fmt_vec(r.domain);
  if (r.singular) return s + " singular";
  s += " delta=" + std::to_string(r.delta) + " austere=" + (r.austere ? "yes" : "no") +
       " austere_defect=" + fmt(r.austere_defect) + " minimal_defect=" + fmt(r.minimal_defect) +
       " nullity=" + std::to_string(r.nullity_dim);
  if (r.ruling_straightness) {
    s += " ruling=" + fmt(*r.ruling_straightness) + "/" + fmt(*r.ruling_condition);
  }
  if (r.classification) {
    const auto& c = *r.classification;
    s += " verdict=" + c.verdict.to_string() + " res=" + fmt(c.residual_a) + "," +
         fmt(c.residual_b) + "," + fmt(c.residual_c);
    if (c.rank_one) s += " rank_one";
  }
  return s;
}

struct SweepSummary {
  std::size_t points = 0;
  std::size_t singular = 0;
  std::size_t austere = 0;
  double max_austere = 0.0;
  double max_minimal = 0.0;
  std::optional<double> max_straightness;
  std::optional<double> max_condition;
  std::map<int, std::size_t> delta_hist;
  std::map<std::string, std::size_t> verdict_hist;
};

SweepSummary summarize(const std::vector<sweep::PointRecord>& recs) {
  SweepSummary s;
  s.points = recs.size();
  for (const auto& r : recs) {
    if (r.singular) {
      ++s.singular;
      continue;
    }
    if (r.austere) ++s.austere;
    s.max_austere = std::max(s.max_austere, r.austere_defect);
    s.max_minimal = std::max(s.max_minimal, r.minimal_defect);
    if (r.ruling_straightness) {
      s.max_straightness = std::max(s.max_straightness.value_or(0.0), *r.ruling_straightness);
      s.max_condition = std::max(s.max_condition.value_or(0.0), *r.ruling_condition);
    }
    ++s.delta_hist[r.delta];
    if (r.classification) ++s.verdict_hist[r.classification->verdict.to_string()];
  }
  return s;
}

std::vector<Assertion> point_assertions(const RunConfig& c,
                                        const std::vector<sweep::PointRecord>& recs) {
  std::vector<Assertion> as;
  if (c.assert_austere) {
    Assertion a{"austere", {}};
    for (const auto& r : recs) {
      if (!r.singular && !r.austere) a.failures.push_back(r.index);
    }
    as.push_back(a);
  }
  if (c.check_ruling) {
    Assertion a{"ruling" + std::to_string(*c.check_ruling), {}};
    for (const auto& r : recs) {
      if (r.singular) continue;
      if (!(*r.ruling_straightness < c.tol.ruling) || !(*r.ruling_condition < c.tol.ruling)) {
        a.failures.push_back(r.index);
      }
    }
    as.push_back(a);
  }
  if (c.expect_type) {
    Assertion a{std::string("type") + *c.expect_type, {}};
    const auto t = static_cast<classify::ModelType>(*c.expect_type - 'A');
    for (const auto& r : recs) {
      if (r.singular || !r.classification) continue;
      if (!r.classification->verdict.contains(t)) a.failures.push_back(r.index);
    }
    as.push_back(a);
  }
  return as;
}

CommandOutput point_sweep(const char* command, const RunConfig& c, bool classify) {
  const geometry::Immersion imm = build_family(c);
  if (c.check_ruling && *c.check_ruling > static_cast<int>(imm.ruling_coords().size())) {
    throw ConfigError("check_ruling: " + c.family + " carries no " +
                      std::to_string(*c.check_ruling) + "-dimensional ruling");
  }
  if (classify && imm.domain_dim() != 4) {
    throw ConfigError("family: classify needs a 4-dimensional family");
  }
  if (c.expect_type && !classify) throw ConfigError("expect_type: only valid for classify");

  sweep::PointOptions opts;
  opts.tol = c.tol;
  opts.seed = numerics::stream_seed(c.seed, kClassifyStream);
  opts.classify = classify;
  opts.check_ruling = c.check_ruling;
  const auto points = sample_points(c, imm);
  const auto recs = sweep::sweep_points(imm, points, opts, execution(c));
  const SweepSummary s = summarize(recs);
  const auto as = point_assertions(c, recs);
  const std::size_t regular = s.points - s.singular;
  const double fraction = regular ? static_cast<double>(s.austere) / static_cast<double>(regular) : 0.0;

  CommandOutput out;
  out.exit_code = exit_for(as);
  if (c.format == Format::kStructured) {
    Json j = header(command, c, imm);
    Json rs = Json::array();
    for (const auto& r : recs) rs.push_back(record_json(r));
    j["records"] = rs;
    Json sum;
    sum["points"] = s.points;
    sum["singular"] = s.singular;
    sum["fraction_austere"] = fraction;
    sum["max_austere_defect"] = s.max_austere;
    sum["max_minimal_defect"] = s.max_minimal;
    sum["max_ruling_straightness"] = optional_json(s.max_straightness);
    sum["max_ruling_condition"] = optional_json(s.max_condition);
    Json dh = Json::object();
    for (const auto& [d, n] : s.delta_hist) dh[std::to_string(d)] = n;
    sum["delta_histogram"] = dh;
    if (classify) {
      Json vh = Json::object();
      for (const auto& [v, n] : s.verdict_hist) vh[v] = n;
      sum["verdict_histogram"] = vh;
    }
    sum["assertions"] = assertions_json(as);
    sum["passed"] = out.exit_code == kExitPass;
    j["summary"] = sum;
    out.report = j.dump(2) + "\n";
  } else {
    std::ostringstream o;
    o << command << ' ' << imm.name() << " seed=" << c.seed << '\n';
    for (const auto& r : recs) o << record_text(r) << '\n';
    o << "points " << s.points << " singular " << s.singular << '\n';
    o << "fraction austere " << fmt(fraction) << '\n';
    o << "max austere defect " << fmt(s.max_austere) << '\n';
    o << "max minimal defect " << fmt(s.max_minimal) << '\n';
    if (s.max_straightness) {
      o << "max ruling defects " << fmt(*s.max_straightness) << " straightness, "
        << fmt(*s.max_condition) << " condition\n";
    }
    o << "delta histogram";
    for (const auto& [d, n] : s.delta_hist) o << ' ' << d << ':' << n;
    o << '\n';
    if (classify) {
      o << "verdict histogram";
      for (const auto& [v, n] : s.verdict_hist) o << ' ' << v << ':' << n;
      o << '\n';
    }
    assertions_text(o, as);
    out.report = o.str();
  }
  return out;
}

}  // namespace

std::vector<Eigen::VectorXd> sample_points(const RunConfig& c, const geometry::Immersion& imm) {
  if (!c.grid.empty() && c.grid.size() != 1 &&
      static_cast<int>(c.grid.size()) != imm.domain_dim()) {
    throw ConfigError("samples.grid: need 1 or " + std::to_string(imm.domain_dim()) + " counts");
  }
  return geometry::sample_domain(imm.domain(), c.grid, c.random,
                                 numerics::stream_seed(c.seed, kSampleStream));
}

std::string samples_csv(const geometry::Immersion& imm, const std::vector<Eigen::VectorXd>& points) {
  std::string s;
  for (int i = 0; i < imm.domain_dim(); ++i) s += (i ? ",u" : "u") + std::to_string(i + 1);
  for (int i = 0; i < imm.ambient_dim(); ++i) s += ",x" + std::to_string(i + 1);
  s += '\n';
  for (const auto& x : points) {
    const Eigen::VectorXd p = imm.point(x);
    for (Eigen::Index i = 0; i < x.size(); ++i) s += (i ? "," : "") + fmt(x(i), 17);
    for (Eigen::Index i = 0; i < p.size(); ++i) s += "," + fmt(p(i), 17);
    s += '\n';
  }
  return s;
}

CommandOutput cmd_family(const RunConfig& c) {
  const geometry::Immersion imm = build_family(c);
  return {kExitPass, samples_csv(imm, sample_points(c, imm))};
}

CommandOutput cmd_verify(const RunConfig& c) { return point_sweep("verify", c, false); }

CommandOutput cmd_classify(const RunConfig& c) { return point_sweep("classify", c, true); }

CommandOutput cmd_slag(const RunConfig& c) {
  const geometry::Immersion imm = build_family(c);
  const auto points = sample_points(c, imm);
  if (points.size() < 2) throw ConfigError("samples: slag needs at least two samples");
  const auto samples =
      slag::conormal_samples_at(imm, points, numerics::stream_seed(c.seed, kConormalStream));
  const auto recs = sweep::sweep_conormal(imm, samples, slag::Convention::kPlus, execution(c));

  double max_lag = 0.0;
  double phase_defect = 0.0;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    max_lag = std::max(max_lag, recs[i].lagrangian_defect);
    for (std::size_t j = i + 1; j < recs.size(); ++j) {
      phase_defect = std::max(phase_defect, slag::circle_distance(recs[i].phase, recs[j].phase));
    }
  }
  std::vector<Assertion> as{{"lagrangian", {}}, {"special_phase", {}}};
  for (const auto& r : recs) {
    if (!(r.lagrangian_defect < c.tol.lagrangian)) as[0].failures.push_back(r.index);
  }
  if (!(phase_defect < c.tol.phase)) {
    // Report the samples farthest from the first sample's phase.
    double worst = -1.0;
    std::size_t at = 0;
    for (const auto& r : recs) {
      const double d = slag::circle_distance(r.phase, recs.front().phase);
      if (d > worst) {
        worst = d;
        at = r.index;
      }
    }
    as[1].failures = {0, at};
  }

  CommandOutput out;
  out.exit_code = exit_for(as);
  if (c.format == Format::kStructured) {
    Json j = header("slag", c, imm);
    Json rs = Json::array();
    for (const auto& r : recs) {
      Json x;
      x["index"] = r.index;
      x["domain"] = to_json(r.sample.base_x);
      x["xi"] = to_json(r.sample.xi_coords);
      x["lagrangian_defect"] = r.lagrangian_defect;
      x["phase"] = r.phase;
      rs.push_back(x);
    }
    j["records"] = rs;
    Json sum;
    sum["samples"] = recs.size();
    sum["max_lagrangian_defect"] = max_lag;
    sum["phase_defect"] = phase_defect;
    sum["assertions"] = assertions_json(as);
    sum["passed"] = out.exit_code == kExitPass;
    j["summary"] = sum;
    out.report = j.dump(2) + "\n";
  } else {
    std::ostringstream o;
    o << "slag " << imm.name() << " seed=" << c.seed << '\n';
    for (const auto& r : recs) {
      o << r.index << " u=" << fmt_vec(r.sample.base_x) << " xi=" << fmt_vec(r.sample.xi_coords)
        << " lagrangian_defect=" << fmt(r.lagrangian_defect) << " phase=" << fmt(r.phase, 12)
        << '\n';
    }
    o << "samples " << recs.size() << '\n';
    o << "max lagrangian defect " << fmt(max_lag) << '\n';
    o << "phase defect " << fmt(phase_defect) << '\n';
    assertions_text(o, as);
    out.report = o.str();
  }
  return out;
}

CommandOutput cmd_holomorphy(const RunConfig& c) {
  const geometry::Immersion imm = build_family(c);
  if (!imm.has_complex_structure() || imm.ruling_coords().size() != 2) {
    throw ConfigError("family: holomorphy needs a complex structure and a 2-dimensional ruling");
  }
  const auto points = sample_points(c, imm);
  auto run = [&](geometry::PlaneOrientation o) {
    return sweep::sweep_holomorphy(imm, points, o, kHolomorphyStep, execution(c));
  };
  auto worst = [](const std::vector<sweep::HolomorphyRecord>& rs) {
    double w = 0.0;
    for (const auto& r : rs) w = std::max(w, r.defect);
    return w;
  };

  geometry::PlaneOrientation orientation = geometry::PlaneOrientation::kPositive;
  std::vector<sweep::HolomorphyRecord> recs;
  if (c.orientation == OrientationChoice::kAuto) {
    auto pos = run(geometry::PlaneOrientation::kPositive);
    auto neg = run(geometry::PlaneOrientation::kNegative);
    if (worst(neg) < worst(pos)) {
      orientation = geometry::PlaneOrientation::kNegative;
      recs = std::move(neg);
    } else {
      recs = std::move(pos);
    }
  } else {
    orientation = c.orientation == OrientationChoice::kPositive
                      ? geometry::PlaneOrientation::kPositive
                      : geometry::PlaneOrientation::kNegative;
    recs = run(orientation);
  }

  std::vector<Assertion> as{{"holomorphic", {}}};
  double max_j = 0.0;
  for (const auto& r : recs) {
    max_j = std::max(max_j, r.j_invariance);
    if (!(r.defect < c.tol.holomorphy)) as[0].failures.push_back(r.index);
  }
  const double max_defect = worst(recs);

  CommandOutput out;
  out.exit_code = exit_for(as);
  if (c.format == Format::kStructured) {
    Json j = header("holomorphy", c, imm);
    j["orientation"] = geometry::to_string(orientation);
    j["orientation_selection"] = c.orientation == OrientationChoice::kAuto ? "auto" : "fixed";
    Json rs = Json::array();
    for (const auto& r : recs) {
      Json x;
      x["index"] = r.index;
      x["domain"] = to_json(r.domain);
      x["j_invariance"] = r.j_invariance;
      x["defect"] = r.defect;
      rs.push_back(x);
    }
    j["records"] = rs;
    Json sum;
    sum["points"] = recs.size();
    sum["max_j_invariance"] = max_j;
    sum["max_defect"] = max_defect;
    sum["assertions"] = assertions_json(as);
    sum["passed"] = out.exit_code == kExitPass;
    j["summary"] = sum;
    out.report = j.dump(2) + "\n";
  } else {
    std::ostringstream o;
    o << "holomorphy " << imm.name() << " seed=" << c.seed << '\n';
    o << "orientation " << geometry::to_string(orientation)
      << (c.orientation == OrientationChoice::kAuto ? " (auto)" : " (fixed)") << '\n';
    for (const auto& r : recs) {
      o << r.index << " u=" << fmt_vec(r.domain) << " j_invariance=" << fmt(r.j_invariance)
        << " defect=" << fmt(r.defect) << '\n';
    }
    o << "points " << recs.size() << '\n';
    o << "max j-invariance defect " << fmt(max_j) << '\n';
    o << "max holomorphy defect " << fmt(max_defect) << '\n';
    assertions_text(o, as);
    out.report = o.str();
  }
  return out;
}

namespace {

// Flag values as given on the command line; unset ones leave the config alone.
struct Flags {
  std::string config_path;
  std::optional<std::string> family;
  std::vector<std::string> params;
  std::optional<std::string> seed;
  std::optional<std::string> grid;
  std::optional<std::string> random;
  std::optional<std::string> tol_austere, tol_ruling, tol_classify;
  std::optional<std::string> check_ruling, out, format, expect_type, orientation;
  bool assert_austere = false;
  bool serial = false;
};

void add_flags(CLI::App& app, Flags& f) {
  app.add_option("--config", f.config_path, "flat key = value config file");
  app.add_option("--family", f.family, "family name");
  app.add_option("--param", f.params, "family parameter NAME=VALUE (repeatable)");
  app.add_option("--seed", f.seed, "64-bit root seed");
  app.add_option("--grid", f.grid, "grid counts k1,k2,... (one count is broadcast)");
  app.add_option("--random", f.random, "number of random sample points");
  app.add_option("--tol-austere", f.tol_austere, "austerity tolerance");
  app.add_option("--tol-ruling", f.tol_ruling, "ruling defect tolerance");
  app.add_option("--classify-threshold", f.tol_classify, "type verdict threshold");
  app.add_flag("--assert-austere", f.assert_austere, "fail unless every point is austere");
  app.add_option("--check-ruling", f.check_ruling, "verify a K-dimensional ruling");
  app.add_option("--expect-type", f.expect_type, "fail unless every verdict contains A, B or C");
  app.add_option("--orientation", f.orientation, "auto, positive or negative");
  app.add_option("--out", f.out, "output path (default stdout)");
  app.add_option("--format", f.format, "text or structured");
  app.add_flag("--serial", f.serial, "run the serial reference sweep");
}

RunConfig resolve(const Flags& f) {
  RunConfig c;
  if (!f.config_path.empty()) apply_config_file(c, f.config_path);
  auto set = [&](const char* key, const std::optional<std::string>& v) {
    if (v) apply_setting(c, key, *v);
  };
  set("family", f.family);
  for (const auto& p : f.params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--param: expected NAME=VALUE, got '" + p + "'");
    apply_setting(c, "params." + p.substr(0, eq), p.substr(eq + 1));
  }
  set("seed", f.seed);
  if (f.grid) {
    apply_setting(c, "samples.grid", *f.grid);
    // An explicit grid replaces the default random sample unless --random is given.
    if (!f.random) c.random = 0;
  }
  set("samples.random", f.random);
  set("tol.austere", f.tol_austere);
  set("tol.ruling", f.tol_ruling);
  set("tol.classify", f.tol_classify);
  set("check_ruling", f.check_ruling);
  set("out", f.out);
  set("format", f.format);
  set("expect_type", f.expect_type);
  set("orientation", f.orientation);
  if (f.assert_austere) c.assert_austere = true;
  if (f.serial) c.serial = true;
  validate(c);
  return c;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constructs and verifies ruled austere 4-folds and related families"};
  app.require_subcommand(1, 1);
  Flags flags;
  using Cmd = CommandOutput (*)(const RunConfig&);
  const std::pair<const char*, Cmd> commands[] = {
      {"family", cmd_family},      {"verify", cmd_verify},         {"classify", cmd_classify},
      {"slag", cmd_slag},          {"holomorphy", cmd_holomorphy}};
  const char* help[] = {"export sample coordinates as CSV", "verify austerity, minimality and rulings",
                        "classify |II| into types A, B, C", "check the conormal bundle is special Lagrangian",
                        "check the ruling map is holomorphic"};
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i].first, help[i]);
    add_flags(*sub, flags);
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitPass;
    }
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    const RunConfig config = resolve(flags);
    CommandOutput result;
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (subs[i]->parsed()) result = commands[i].second(config);
    }
    if (config.out.empty()) {
      out << result.report;
    } else {
      std::ofstream f(config.out, std::ios::binary);
      if (!f) throw ConfigError("out: cannot write " + config.out);
      f << result.report;
    }
    return result.exit_code;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "numerical fault: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace austere4::cli
