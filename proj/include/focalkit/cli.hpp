#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace focalkit::cli {

enum class Command { analyze, focal, slant, verify, synthesize };

enum ExitStatus : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kInputError = 2,
  kNumericFailure = 3,
};

struct RunConfig {
  Command command = Command::analyze;
  std::string input_path;
  std::string output_path;  // prefix; commands append .csv / .json
  int grid_points = 256;
  std::optional<double> tolerance;        // slant detection on the input curve
  std::optional<double> focal_tolerance;  // slant detection on the focal curve
  double axis_tolerance = 1e-3;           // rad
  double classify_tolerance = 1e-6;
  std::optional<int> k;
  std::optional<int> dim;
  std::uint64_t seed = 42;
  double step = 0.0;  // synthesize: <= 0 means domain length / 4096
  bool serial = false;
};

std::optional<Command> parse_command(const std::string& name);

/// Runs one command; diagnostics go to `log`. Returns an ExitStatus.
int run(const RunConfig& config, std::ostream& log);

}  // namespace focalkit::cli
