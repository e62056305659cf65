#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "fharmonic/field.hpp"
#include "fharmonic/profiles.hpp"

namespace fharmonic {

/// Why an integration stopped.  Blow-up, degeneracy and step failure are
/// normal terminations carrying information, not errors.
enum class Termination {
  ReachedHorizon,         ///< integrated to r_max
  BlowUp,                 ///< |alpha| crossed the blow-up threshold (or the
                          ///< state left the representable range while large)
  DegenerateCoefficient,  ///< principal coefficient A collapsed to zero
  StepFailure,            ///< controller could not advance (step underflow)
};

const char* to_string(Termination t);

/// One accepted step of the integration.  `residual` is the equation
/// residual at the node scaled by the magnitude of the equation's terms, so
/// it stays meaningful on trajectories whose raw scale is enormous.
struct TrajectoryNode {
  double r = 0.0;
  double alpha = 0.0;
  double alpha_prime = 0.0;
  double theta = 0.0;
  double g_theta = 0.0;
  double residual = 0.0;
};

/// Adaptively sampled solution record.
struct Trajectory {
  ProblemSpec spec;
  std::vector<TrajectoryNode> nodes;
  Termination termination = Termination::ReachedHorizon;
  std::int64_t accepted_steps = 0;
  std::int64_t rejected_steps = 0;
};

/// Regularized initial state: a(eps) = c * eps, a'(eps) = c at
/// eps = cfg.eps_start.  The induced O(eps^2) seed error is validated by the
/// eps-halving (Richardson) tests.
State singular_start(const ProblemSpec& spec);

/// Integrate the profile equation from the regularized start to r_max with
/// an embedded Runge-Kutta 4(5) pair and a PI step controller acting on
/// (alpha, alpha').  c = 0 short-circuits to the exact zero trajectory and
/// n = 1 delegates to the closed linear form (solve_n1).
Trajectory solve(const ProblemSpec& spec, const SolverConfig& cfg);
Trajectory solve(const ProblemSpec& spec);  ///< uses spec.tolerances

/// n = 1 closed form: every solution with the regularized start is the
/// linear map a = c r (the equation reduces to (G(theta) a')' = 0).
/// Returns a uniform-grid trajectory; rejects n != 1.
Trajectory solve_n1(const ProblemSpec& spec);

/// Cubic Hermite evaluation of (alpha, alpha') between stored nodes.
/// Throws std::out_of_range outside [first node, last node].
std::pair<double, double> dense_eval(const Trajectory& traj, double r);

namespace detail {

/// One Dormand-Prince 5(4) step attempt from (r, y) with step h.
/// y = (alpha, alpha'); y_new is 5th order, err is the embedded local error
/// estimate.  Exposed for the fixed-step order measurements in the tests.
struct StepAttempt {
  std::array<double, 2> y_new{};
  std::array<double, 2> err{};
};
StepAttempt dopri5_step(const ProblemSpec& spec, double r,
                        const std::array<double, 2>& y, double h);

}  // namespace detail

}  // namespace fharmonic
