#pragma once

#include <utility>
#include <vector>

#include "fharmonic/solver.hpp"

namespace fharmonic {

/// Options of the bisection shooter.
struct ShootingOptions {
  double match_tol = 1e-10;  ///< stop when |alpha(r_target; c) - target| is below
  double c_cap = 1e3;        ///< bracket expansion gives up past this slope
  int max_iterations = 200;  ///< bisection iteration cap
  /// Optional explicit initial bracket.  When c_hi <= c_lo the shooter
  /// expands its own bracket by doubling from c_hi = 1.
  double c_lo = 0.0;
  double c_hi = 0.0;
};

/// Result of a shooting solve for the slope c with a(r_target; c) = target.
struct ShootingResult {
  double c_star = 0.0;          ///< matched slope
  Trajectory trajectory;        ///< solution at c_star
  int iterations = 0;           ///< bisection iterations used
  std::vector<std::pair<double, double>> bracket_history;  ///< (c_lo, c_hi)
  double residual_at_target = 0.0;  ///< alpha(r_target; c_star) - target
  bool monotone_basis = true;   ///< g'' >= 0 sampled on [0, target]; when
                                ///< false the target map may be non-monotone
                                ///< and bisection finds only *a* root
};

/// Find the slope c whose trajectory hits `alpha_target` at `r_target` by
/// bisection on c.  The boundary map c -> alpha(r_target; c) is strictly
/// increasing whenever g'' >= 0, which is sampled and reported (warn, not
/// refuse).  Trajectories that blow up before r_target count as overshoot.
/// Throws NoBracket when no admissible bracket exists below opts.c_cap.
ShootingResult shoot(const ProblemSpec& spec, double r_target,
                     double alpha_target, const ShootingOptions& opts = {});

/// Evaluate the boundary map on a grid of slopes: (c, alpha(r_target; c)).
/// Blow-up before r_target reports +infinity for that entry.
std::vector<std::pair<double, double>> monotonicity_scan(
    const ProblemSpec& spec, double r_target, const std::vector<double>& c_grid);

}  // namespace fharmonic
