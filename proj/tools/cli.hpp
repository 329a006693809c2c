#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "metaschwarz/schwarz.hpp"

namespace metaschwarz::cli {

enum class Command { solve, verify, transform, poisson, decompose };

Command command_from_string(const std::string& name);

struct RunConfig {
  Command command = Command::solve;
  std::filesystem::path input;
  std::filesystem::path out_dir = ".";
  int grid_radii = 32;
  int grid_angles = 64;
  /// truncation degree N (decompose fit degree)
  int degree = 16;
  /// radial depth J of r_j = 1 - 2^{-j-1}
  int radial_depth = 16;
  std::map<std::string, double> tolerances;
  /// decompose: number of poly-analytic parts
  int order = 1;
  /// transform: "teodorescu" or "schwarz_pompeiu"
  std::string kind = "teodorescu";
};

enum ExitCode : int { ok = 0, schema = 1, verification = 2, nonconvergence = 3 };

struct RunResult {
  int exit_code = ok;
  std::string message;
  std::vector<std::filesystem::path> files;
};

/// Overlays the fields present in a JSON config file onto cfg.
void load_config(const std::filesystem::path& path, RunConfig& cfg);

/// Parses "name=value"; throws Error(Schema) on malformed input.
std::pair<std::string, double> parse_tolerance(const std::string& spec);

/// Parses "NRxNT".
std::pair<int, int> parse_grid(const std::string& spec);

/// Solver options with the configured grid, depth and tolerances applied.
SolverOptions solver_options(const RunConfig& cfg);

/// Runs one command; library errors are mapped to exit codes, never thrown.
RunResult run(const RunConfig& cfg);

}  // namespace metaschwarz::cli
