#pragma once

#include "tflab/io.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace tflab::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2 };

/// Everything a subcommand reads. Precedence: built-in defaults, then the
/// TFLAB_SEED environment variable, then --config, then flags.
struct RunConfig {
  std::string subcommand;
  std::string group;
  std::string theorem;
  IndexTuple indices;
  std::string tau;       // integer scalar or JSON matrix; empty when unset
  std::string sampling;  // empty cycles through every kind
  std::string input;
  std::string window;
  std::string symbol;
  std::string omega;
  std::string output;
  std::string format = "json";
  std::string eta = "stft";
  std::string method = "auto";
  std::string baseline_file;
  std::optional<double> t;
  std::optional<double> epsilon;
  std::uint64_t seed = 42;
  std::uint64_t trials = 200;
  std::uint64_t budget = 1000;
  int restarts = 20;
  double tolerance = 1e-9;
  bool timing = false;
  bool write = false;
  bool operator==(const RunConfig&) const = default;
};

Json config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const Json& j);

/// Parses `args` (without the program name) and runs one subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tflab::cli
