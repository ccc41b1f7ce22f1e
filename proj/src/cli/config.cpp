#include "austere4/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <complex>
#include <fstream>
#include <set>
#include <sstream>

#include "austere4/families/families.hpp"

namespace austere4::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(field + ": expected a number, got '" + text + "'");
  }
  return v;
}

long long parse_integer(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(field + ": expected an integer, got '" + text + "'");
  }
  return v;
}

bool parse_bool(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
  if (t == "0" || t == "false" || t == "no" || t == "off") return false;
  throw ConfigError(field + ": expected a boolean, got '" + text + "'");
}

std::vector<double> parse_double_list(const std::string& text, const std::string& field) {
  std::vector<double> out;
  for (const auto& tok : split(text, ',')) out.push_back(parse_double(tok, field));
  return out;
}

// "re" or "re:im".
std::complex<double> parse_complex(const std::string& text, const std::string& field) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return {parse_double(text, field), 0.0};
  return {parse_double(text.substr(0, colon), field), parse_double(text.substr(colon + 1), field)};
}

// Components separated by ';', coefficients of z^0, z^1, ... by ','.
std::vector<std::vector<std::complex<double>>> parse_curve(const std::string& text,
                                                           const std::string& field) {
  std::vector<std::vector<std::complex<double>>> out;
  for (const auto& comp : split(text, ';')) {
    std::vector<std::complex<double>> coeffs;
    for (const auto& tok : split(comp, ',')) coeffs.push_back(parse_complex(tok, field));
    out.push_back(std::move(coeffs));
  }
  return out;
}

// Typed access to params.* that remembers which keys were consumed.
class Params {
 public:
  explicit Params(const std::map<std::string, std::string>& raw) : raw_(raw) {}

  double real(const std::string& key, double fallback) {
    used_.insert(key);
    const auto it = raw_.find(key);
    return it == raw_.end() ? fallback : parse_double(it->second, "params." + key);
  }
  int integer(const std::string& key, int fallback) {
    used_.insert(key);
    const auto it = raw_.find(key);
    return it == raw_.end() ? fallback
                            : static_cast<int>(parse_integer(it->second, "params." + key));
  }
  bool boolean(const std::string& key, bool fallback) {
    used_.insert(key);
    const auto it = raw_.find(key);
    return it == raw_.end() ? fallback : parse_bool(it->second, "params." + key);
  }
  std::optional<std::string> text(const std::string& key) {
    used_.insert(key);
    const auto it = raw_.find(key);
    if (it == raw_.end()) return std::nullopt;
    return it->second;
  }
  void reject_unused(const std::string& family) const {
    for (const auto& [k, v] : raw_) {
      if (!used_.count(k)) throw ConfigError("params." + k + ": not a parameter of family " + family);
    }
  }

 private:
  const std::map<std::string, std::string>& raw_;
  std::set<std::string> used_;
};

const char* kDefaultCurve = "1;0,1;0,0,0.5";

geometry::Immersion build_unchecked(const std::string& family, Params& p) {
  if (family == "helicoid") {
    families::HelicoidSpec spec;
    spec.m = p.integer("m", 2);
    spec.s = p.integer("s", 1);
    if (spec.s < 0) throw ConfigError("params.s: must be nonnegative");
    if (const auto l = p.text("lambdas")) {
      spec.lambdas = parse_double_list(*l, "params.lambdas");
    } else {
      spec.lambdas.assign(static_cast<std::size_t>(spec.s + 1), 1.0);
    }
    spec.full_ruling = p.boolean("full_ruling", false);
    return families::generalized_helicoid(spec);
  }
  if (family == "classical_helicoid") return families::classical_helicoid(p.real("pitch", 1.0));
  if (family == "helicoid_product") {
    return families::product_immersion(families::classical_helicoid(p.real("pitch1", 1.0)),
                                       families::classical_helicoid(p.real("pitch2", 1.0)));
  }
  if (family == "helicoid_cone") return families::helicoid_cone(p.real("lambda", 1.0));
  if (family == "helicoid_x_r2") {
    return families::cylinder_over(families::classical_helicoid(p.real("pitch", 1.0)), 2);
  }
  if (family == "complex_cone" || family == "complex_cylinder") {
    families::HoloCurveSpec spec;
    spec.coefficients = parse_curve(p.text("curve").value_or(kDefaultCurve), "params.curve");
    return family == "complex_cone" ? families::complex_cone(spec)
                                    : families::complex_cylinder(spec);
  }
  if (family == "sphere") return families::sphere(p.integer("n", 3), p.real("radius", 1.0));
  if (family == "flat_plane") return families::flat_plane(p.integer("m", 2), p.integer("n", 3));
  throw ConfigError("family: unknown family '" + family + "'");
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text, const std::string& field) {
  std::vector<int> out;
  for (const auto& tok : split(text, ',')) out.push_back(static_cast<int>(parse_integer(tok, field)));
  return out;
}

std::size_t RunConfig::sample_count() const {
  std::size_t g = 0;
  if (!grid.empty()) {
    g = 1;
    for (int k : grid) g *= static_cast<std::size_t>(std::max(k, 0));
  }
  return g + static_cast<std::size_t>(std::max(random, 0));
}

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{
      "helicoid",     "classical_helicoid", "helicoid_product", "helicoid_cone", "helicoid_x_r2",
      "complex_cone", "complex_cylinder",   "sphere",           "flat_plane"};
  return names;
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key == "family") {
    c.family = v;
  } else if (key.rfind("params.", 0) == 0 && key.size() > 7) {
    c.params[key.substr(7)] = v;
  } else if (key == "samples.grid") {
    c.grid = v.empty() ? std::vector<int>{} : parse_int_list(v, key);
  } else if (key == "samples.random") {
    c.random = static_cast<int>(parse_integer(v, key));
  } else if (key == "seed") {
    if (!v.empty() && v.front() == '-') throw ConfigError("seed: must be nonnegative");
    std::uint64_t s = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), s);
    if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
      throw ConfigError("seed: expected a 64-bit unsigned integer, got '" + v + "'");
    }
    c.seed = s;
  } else if (key == "tol.austere") {
    c.tol.austere = parse_double(v, key);
  } else if (key == "tol.ruling") {
    c.tol.ruling = parse_double(v, key);
  } else if (key == "tol.rank") {
    c.tol.rank = parse_double(v, key);
  } else if (key == "tol.classify") {
    c.tol.classify = parse_double(v, key);
  } else if (key == "tol.lagrangian") {
    c.tol.lagrangian = parse_double(v, key);
  } else if (key == "tol.phase") {
    c.tol.phase = parse_double(v, key);
  } else if (key == "tol.holomorphy") {
    c.tol.holomorphy = parse_double(v, key);
  } else if (key == "out") {
    c.out = v;
  } else if (key == "format") {
    if (v == "text") {
      c.format = Format::kText;
    } else if (v == "structured") {
      c.format = Format::kStructured;
    } else {
      throw ConfigError("format: expected text or structured, got '" + v + "'");
    }
  } else if (key == "assert_austere") {
    c.assert_austere = parse_bool(v, key);
  } else if (key == "check_ruling") {
    c.check_ruling = static_cast<int>(parse_integer(v, key));
  } else if (key == "expect_type") {
    if (v.size() != 1 || v[0] < 'A' || v[0] > 'C') {
      throw ConfigError("expect_type: expected A, B or C, got '" + v + "'");
    }
    c.expect_type = v[0];
  } else if (key == "orientation") {
    if (v == "auto") {
      c.orientation = OrientationChoice::kAuto;
    } else if (v == "positive") {
      c.orientation = OrientationChoice::kPositive;
    } else if (v == "negative") {
      c.orientation = OrientationChoice::kNegative;
    } else {
      throw ConfigError("orientation: expected auto, positive or negative, got '" + v + "'");
    }
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

void apply_config_text(RunConfig& config, const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    }
    apply_setting(config, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  apply_config_text(config, buf.str(), path);
}

void validate(const RunConfig& c) {
  if (c.family.empty()) throw ConfigError("family: not set");
  const auto& names = family_names();
  if (std::find(names.begin(), names.end(), c.family) == names.end()) {
    throw ConfigError("family: unknown family '" + c.family + "'");
  }
  for (int k : c.grid) {
    if (k < 1) throw ConfigError("samples.grid: counts must be at least 1");
  }
  if (c.random < 0) throw ConfigError("samples.random: must be nonnegative");
  if (c.sample_count() < 1) throw ConfigError("samples: at least one sample point is needed");
  const std::pair<const char*, double> tols[] = {
      {"tol.austere", c.tol.austere},       {"tol.ruling", c.tol.ruling},
      {"tol.rank", c.tol.rank},             {"tol.classify", c.tol.classify},
      {"tol.lagrangian", c.tol.lagrangian}, {"tol.phase", c.tol.phase},
      {"tol.holomorphy", c.tol.holomorphy}};
  for (const auto& [name, v] : tols) {
    if (!(v > 0.0)) throw ConfigError(std::string(name) + ": must be positive");
  }
  if (c.check_ruling && *c.check_ruling < 1) throw ConfigError("check_ruling: must be at least 1");
}

geometry::Immersion build_family(const RunConfig& config) {
  Params p(config.params);
  try {
    geometry::Immersion imm = build_unchecked(config.family, p);
    p.reject_unused(config.family);
    return imm;
  } catch (const ConfigError&) {
    throw;
  } catch (const PreconditionError& e) {
    throw ConfigError("params: " + std::string(e.what()));
  }
}

}  // namespace austere4::cli
