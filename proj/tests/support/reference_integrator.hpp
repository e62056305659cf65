#pragma once

// Test-only reference scheme: fixed-step classical Runge-Kutta 4 on the
// first-order system (alpha, alpha').  Deliberately shares nothing with the
// adaptive production integrator except the pointwise right-hand side, so
// agreement between the two is meaningful evidence.

#include <array>
#include <vector>

#include "fharmonic/profiles.hpp"

namespace fharmonic::testing {

/// State (alpha, alpha') advanced from (r0, y0) to r1 with steps of size at
/// most h (the final step of each call is shortened to land exactly on r1).
/// Throws std::runtime_error if the state leaves the representable range.
std::array<double, 2> rk4_integrate(const ProblemSpec& spec, double r0,
                                    std::array<double, 2> y0, double r1, double h);

/// Integrates from the regularized start at eps (default 1e-4: the fixed
/// step cannot resolve the 1/r scale of the equation at the production
/// eps_start = 1e-6, and the seed truncation there is O(eps^2) ~ 1e-8,
/// well below the 1e-6 agreement gates) and reports the state at every
/// checkpoint radius.  `checkpoints` must be increasing and > eps.
std::vector<std::array<double, 2>> rk4_checkpoints(
    const ProblemSpec& spec, const std::vector<double>& checkpoints, double h,
    double eps = 1e-4);

/// Boundary value alpha(r_target) via the reference integrator; +infinity
/// when the state explodes before r_target.
double rk4_boundary_value(const ProblemSpec& spec, double c, double r_target,
                          double h, double eps = 1e-4);

/// Bisection on c over the reference integrator: independent oracle for the
/// production shooter.  Expands the bracket by doubling from c = 1.
/// Throws std::runtime_error when no bracket exists below c_cap.
double rk4_shoot(const ProblemSpec& spec, double r_target, double alpha_target,
                 double h, double c_tol = 1e-10, double c_cap = 1e3);

}  // namespace fharmonic::testing
