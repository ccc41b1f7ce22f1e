#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "austere4/geometry/holomorphy.hpp"
#include "austere4/geometry/immersion.hpp"
#include "austere4/numerics/errors.hpp"
#include "austere4/sweep/sweep.hpp"

namespace austere4::cli {

/// Bad flags, config files or family parameters (exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Format { kText, kStructured };
enum class OrientationChoice { kAuto, kPositive, kNegative };

struct RunConfig {
  std::string family;
  std::map<std::string, std::string> params;
  std::vector<int> grid;
  int random = 20;
  std::uint64_t seed = 0;
  sweep::Tolerances tol;
  std::string out;
  Format format = Format::kText;

  bool assert_austere = false;
  std::optional<int> check_ruling;
  std::optional<char> expect_type;
  OrientationChoice orientation = OrientationChoice::kAuto;
  bool serial = false;

  std::size_t sample_count() const;
};

/// Applies `key = value` lines ('#' starts a comment). Keys: family,
/// params.<name>, samples.grid, samples.random, tol.<name>, seed, out, format,
/// assert_austere, check_ruling, expect_type, orientation.
void apply_config_text(RunConfig& config, const std::string& text, const std::string& origin);
void apply_config_file(RunConfig& config, const std::string& path);

/// Sets one key; throws ConfigError naming the key on bad values.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Throws ConfigError unless counts and tolerances are in range and the
/// family is known.
void validate(const RunConfig& config);

const std::vector<std::string>& family_names();

/// Builds the configured family. Unknown parameters or invalid values raise
/// ConfigError naming the offending field.
geometry::Immersion build_family(const RunConfig& config);

/// Parses "a,b,c" into integers.
std::vector<int> parse_int_list(const std::string& text, const std::string& field);

}  // namespace austere4::cli
