#pragma once

#include <cstdint>

namespace fharmonic {

/// Tolerances and event thresholds for the initial value solver.
///
/// The defaults are the reference configuration used throughout the test
/// suite; individual catalog families override `blowup_threshold` (families
/// that provoke finite-radius blow-up use a low threshold so the event fires
/// while steps are still healthy) and `max_step` (dense output accuracy is
/// bounded by the interpolation error over a single step).
struct SolverConfig {
  double eps_start = 1e-6;         ///< offset of the regularized start r = eps
  double rel_tol = 1e-9;           ///< relative tolerance of the step controller
  double abs_tol = 1e-12;          ///< absolute tolerance of the step controller
  std::int64_t max_steps = 1000000;///< hard cap on accepted + rejected steps
  double blowup_threshold = 1e6;   ///< |alpha| above this is a blow-up event
  double tol_residual = 1e-7;      ///< per-node scaled residual guard
  double max_step = 0.05;          ///< largest step the controller may take
};

}  // namespace fharmonic
