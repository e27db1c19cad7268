#pragma once

// External solver invocation: configuration, single runs, and portfolios.

#include <atomic>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hyperfol/emit.hpp"

namespace hyperfol {

struct SolverConfig {
  std::string name;
  std::string command;  // placeholders {file} {timeout} {timeout_ms} {tools}
  OutputFormat format = OutputFormat::Smtlib2;
  std::string sat_regex;
  std::string unsat_regex;
  double timeout_sec = 60;
};

inline constexpr double kDefaultTimeoutSec = 60;
inline constexpr const char* kConfigEnvVar = "HYPERFOL_SOLVERS";

/// Parses the `[name]` / `key = value` config format. Throws ConfigError.
std::vector<SolverConfig> parse_solver_config(const std::string& text);
/// The configuration compiled into the binary.
const std::string& default_solver_config_text();
/// `path` if given, else $HYPERFOL_SOLVERS, else the built-in defaults.
std::vector<SolverConfig> load_solver_configs(const std::optional<std::filesystem::path>& path = std::nullopt);

enum class Result { Sat, Unsat, Unknown };
std::string to_string(Result r);

struct Verdict {
  Result result = Result::Unknown;
  std::string solver;
  double elapsed = 0;
  std::string detail;  // "timeout", "cancelled", "exit 3", ...
};

/// The command line with placeholders substituted, split into argv.
std::vector<std::string> solver_argv(const SolverConfig& cfg, const std::filesystem::path& file);
/// True if argv[0] of the config resolves to an executable.
bool solver_available(const SolverConfig& cfg);

/// Runs one solver; kills its whole process group at the timeout or when
/// `cancel` becomes true. A timeout is always Unknown; a cancelled run keeps
/// any answer it printed before the kill. Throws SolverNotFound.
Verdict run_solver(const SolverConfig& cfg, const std::filesystem::path& problem_file,
                   const std::atomic<bool>* cancel = nullptr);

/// Runs every member concurrently; the first Sat/Unsat wins and cancels the
/// rest. Members whose binary is missing count as Unknown; if every member is
/// missing, SolverNotFound is thrown. Sat and Unsat from different members
/// raise SoundnessConflict. Individual verdicts go to `members` if given.
Verdict run_portfolio(const std::vector<SolverConfig>& cfgs, const std::filesystem::path& problem_file,
                      std::vector<Verdict>* members = nullptr);

/// Same, with a separate problem file per member (e.g. one per format).
Verdict run_portfolio(const std::vector<std::pair<SolverConfig, std::filesystem::path>>& jobs,
                      std::vector<Verdict>* members = nullptr);

}  // namespace hyperfol
