#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "austere4/cli/config.hpp"

namespace austere4::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

struct CommandOutput {
  int exit_code = kExitPass;
  std::string report;
};

/// Sample points for the configured family: the grid first (last axis
/// fastest), then the random points.
std::vector<Eigen::VectorXd> sample_points(const RunConfig& config,
                                           const geometry::Immersion& imm);

/// CSV with header u1..um,x1..xn and 17 significant digits.
std::string samples_csv(const geometry::Immersion& imm, const std::vector<Eigen::VectorXd>& points);

CommandOutput cmd_family(const RunConfig& config);
CommandOutput cmd_verify(const RunConfig& config);
CommandOutput cmd_classify(const RunConfig& config);
CommandOutput cmd_slag(const RunConfig& config);
CommandOutput cmd_holomorphy(const RunConfig& config);

/// Full command line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace austere4::cli
