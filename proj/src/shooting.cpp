#include "fharmonic/shooting.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fharmonic/errors.hpp"

namespace fharmonic {

namespace {

// alpha(r_target; c); +infinity when the run leaves through blow-up first.
double boundary_value(ProblemSpec spec, double r_target, double c,
                      Trajectory* keep = nullptr) {
  spec.c = c;
  spec.r_max = r_target;
  Trajectory traj = solve(spec);
  double value;
  switch (traj.termination) {
    case Termination::ReachedHorizon:
      value = traj.nodes.back().alpha;
      break;
    case Termination::BlowUp:
      value = std::numeric_limits<double>::infinity();
      break;
    default:
      throw std::runtime_error(std::string("shooting run ended in ") +
                               to_string(traj.termination) + " at c = " +
                               std::to_string(c));
  }
  if (keep) *keep = std::move(traj);
  return value;
}

bool convexity_sampled(const Warp& g, double y_max) {
  // g'' >= 0 sampled on (0, y_max]; the monotone boundary map argument
  // needs non-negative curvature of the target warp
  for (int i = 0; i < 200; ++i) {
    double y = y_max * (i + 1) / 200.0;
    if (g.d2(y) < 0.0) return false;
  }
  return true;
}

}  // namespace

ShootingResult shoot(const ProblemSpec& spec, double r_target,
                     double alpha_target, const ShootingOptions& opts) {
  if (!(r_target > spec.tolerances.eps_start) || !(alpha_target > 0.0)) {
    throw std::invalid_argument("shoot needs r_target > eps_start and alpha_target > 0");
  }

  ShootingResult result;
  result.monotone_basis = convexity_sampled(spec.g, std::max(alpha_target, 1.0));

  double c_lo = opts.c_lo, c_hi = opts.c_hi;
  if (!(c_hi > c_lo)) {
    // expand: double c_hi from 1 until the boundary value overshoots
    c_lo = 0.0;
    c_hi = 1.0;
    for (;;) {
      double v = boundary_value(spec, r_target, c_hi);
      result.bracket_history.emplace_back(c_lo, c_hi);
      if (v >= alpha_target) break;
      c_lo = c_hi;
      c_hi *= 2.0;
      if (c_hi > opts.c_cap) {
        throw NoBracket("no slope below c_cap = " + std::to_string(opts.c_cap) +
                        " reaches alpha = " + std::to_string(alpha_target) +
                        " at r = " + std::to_string(r_target));
      }
    }
  } else {
    double v_lo = boundary_value(spec, r_target, c_lo);
    double v_hi = boundary_value(spec, r_target, c_hi);
    result.bracket_history.emplace_back(c_lo, c_hi);
    if (v_lo > alpha_target || v_hi < alpha_target) {
      throw NoBracket("supplied bracket [" + std::to_string(c_lo) + ", " +
                      std::to_string(c_hi) + "] does not straddle the target");
    }
  }

  // bisection; the boundary map is monotone in c whenever g'' >= 0, which
  // makes the root unique -- with g'' < 0 sampled we still return a root but
  // flag the basis
  double c_mid = 0.5 * (c_lo + c_hi);
  double v_mid = 0.0;
  for (int it = 0; it < opts.max_iterations; ++it) {
    c_mid = 0.5 * (c_lo + c_hi);
    v_mid = boundary_value(spec, r_target, c_mid);
    result.iterations = it + 1;
    result.bracket_history.emplace_back(c_lo, c_hi);
    if (std::isfinite(v_mid) && std::abs(v_mid - alpha_target) <= opts.match_tol) {
      break;
    }
    if (v_mid < alpha_target) {
      c_lo = c_mid;
    } else {
      c_hi = c_mid;
    }
    if (c_hi - c_lo < 1e-14) break;
  }

  result.c_star = c_mid;
  ProblemSpec hit = spec;
  hit.c = c_mid;
  hit.r_max = r_target;
  result.trajectory = solve(hit);
  result.residual_at_target =
      (result.trajectory.termination == Termination::ReachedHorizon
           ? result.trajectory.nodes.back().alpha
           : std::numeric_limits<double>::infinity()) -
      alpha_target;
  return result;
}

std::vector<std::pair<double, double>> monotonicity_scan(
    const ProblemSpec& spec, double r_target, const std::vector<double>& c_grid) {
  std::vector<std::pair<double, double>> out;
  out.reserve(c_grid.size());
  for (double c : c_grid) {
    out.emplace_back(c, boundary_value(spec, r_target, c));
  }
  return out;
}

}  // namespace fharmonic
