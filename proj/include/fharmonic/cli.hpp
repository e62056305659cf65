#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fharmonic/profiles.hpp"

namespace fharmonic {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,     ///< unusable config / flags / spec
  kExitSolverEvent = 2,///< blow-up, degeneracy, step failure, no bracket,
                       ///< non-convergence: the run ended on an event
  kExitInconsistent = 3,  ///< a verification verdict came back Inconsistent
};

/// Fully resolved run configuration (defaults < config file < flags).
struct RunConfig {
  int schema_version = 1;

  // problem selection
  int n = 2;
  std::string profile = "harmonic";   ///< "harmonic" | "p:<value>" | "exp"
  std::string warp_f = "euclidean";   ///< "euclidean" | "hyperbolic" | "tanh"
  std::string warp_g = "euclidean";
  double c = 1.0;
  double r_max = 10.0;
  SolverConfig tolerances;

  // sweep
  double c_min = 0.1;
  double c_max = 2.0;
  int c_count = 20;

  // shooting
  double r_target = 2.0;
  double alpha_target = 1.0;
  double match_tol = 1e-10;

  // variational
  double r_a = 0.5;
  double r_b = 2.0;
  int grid_n = 128;
  double grad_tol = 1e-8;

  // verify
  std::vector<std::string> checkers;  ///< theorem ids; empty = all

  // execution
  std::string out_dir = ".";
  int workers = 0;  ///< 0 = resolve from FHARMONIC_WORKERS, then hardware
};

/// Parse a JSON config file into `cfg` (fields absent from the file keep
/// their current values).  Returns an error message on failure, or nullopt.
std::optional<std::string> load_config(const std::string& path, RunConfig& cfg);

/// Materialize the ProblemSpec selected by a RunConfig.
/// Throws std::invalid_argument for unknown profile / warp names.
ProblemSpec spec_from_config(const RunConfig& cfg);

/// Resolve the worker count: explicit value if > 0, else FHARMONIC_WORKERS,
/// else hardware concurrency (at least 1).
int resolve_workers(int requested);

/// Locale-independent shortest-exact formatting plus fixed 17-significant-
/// digit formatting used for all numeric file output.
std::string format_double(double v);

// Subcommands.  Each writes its artifacts under cfg.out_dir and returns an
// ExitCode; diagnostics go to stderr, a one-line summary to stdout.
int cmd_solve(const RunConfig& cfg);
int cmd_sweep(const RunConfig& cfg);
int cmd_shoot(const RunConfig& cfg);
int cmd_minimize(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);

}  // namespace fharmonic
