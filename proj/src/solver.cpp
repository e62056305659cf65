#include "fharmonic/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fharmonic/errors.hpp"

namespace fharmonic {

const char* to_string(Termination t) {
  switch (t) {
    case Termination::ReachedHorizon: return "ReachedHorizon";
    case Termination::BlowUp: return "BlowUp";
    case Termination::DegenerateCoefficient: return "DegenerateCoefficient";
    case Termination::StepFailure: return "StepFailure";
  }
  return "?";
}

State singular_start(const ProblemSpec& spec) {
  const double eps = spec.tolerances.eps_start;
  return State{eps, spec.c * eps, spec.c};
}

namespace detail {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// difference between the 5th and the embedded 4th order weights
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

std::array<double, 2> rhs(const ProblemSpec& spec, double r,
                          const std::array<double, 2>& y) {
  FieldEval e = eval_field(spec, State{r, y[0], y[1]});
  return {y[1], e.alpha_second};
}

}  // namespace

StepAttempt dopri5_step(const ProblemSpec& spec, double r,
                        const std::array<double, 2>& y, double h) {
  auto lin = [&](std::initializer_list<std::pair<double, const std::array<double, 2>*>> terms) {
    std::array<double, 2> out = y;
    for (auto& [w, k] : terms) {
      out[0] += h * w * (*k)[0];
      out[1] += h * w * (*k)[1];
    }
    return out;
  };

  const auto k1 = rhs(spec, r, y);
  const auto k2 = rhs(spec, r + c2 * h, lin({{a21, &k1}}));
  const auto k3 = rhs(spec, r + c3 * h, lin({{a31, &k1}, {a32, &k2}}));
  const auto k4 = rhs(spec, r + c4 * h, lin({{a41, &k1}, {a42, &k2}, {a43, &k3}}));
  const auto k5 = rhs(spec, r + c5 * h,
                      lin({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
  const auto k6 = rhs(spec, r + h,
                      lin({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));

  StepAttempt out;
  for (int i = 0; i < 2; ++i) {
    out.y_new[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                               b5 * k5[i] + b6 * k6[i]);
  }
  const auto k7 = rhs(spec, r + h, out.y_new);
  for (int i = 0; i < 2; ++i) {
    out.err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                      e6 * k6[i] + e7 * k7[i]);
  }
  return out;
}

}  // namespace detail

namespace {

// Why a step attempt could not be completed.
enum class StepFault { None, Degenerate, Overflow, NonFinite };

// Append the fully evaluated node at `s`; false when the field cannot be
// evaluated there (the caller decides the termination).
bool record_node(Trajectory& traj, const State& s, StepFault& fault) {
  try {
    FieldEval e = eval_field(traj.spec, s);
    traj.nodes.push_back({s.r, s.alpha, s.alpha_prime, e.theta, e.G_theta,
                          detail::scaled_residual(traj.spec, s)});
    return true;
  } catch (const DegenerateCoefficient&) {
    fault = StepFault::Degenerate;
  } catch (const ProfileOverflow&) {
    fault = StepFault::Overflow;
  }
  return false;
}

Trajectory zero_trajectory(const ProblemSpec& spec) {
  // a == 0 solves the equation exactly (g(0) = 0); sampled on a uniform grid
  Trajectory traj;
  traj.spec = spec;
  traj.termination = Termination::ReachedHorizon;
  const double eps = spec.tolerances.eps_start;
  const int count = 401;
  const double g0 = spec.profile.G(0.0);
  for (int i = 0; i < count; ++i) {
    double r = eps + (spec.r_max - eps) * i / (count - 1);
    traj.nodes.push_back({r, 0.0, 0.0, 0.0, g0, 0.0});
  }
  return traj;
}

void require_valid(const ProblemSpec& spec) {
  auto violations = validate_spec(spec);
  if (!violations.empty()) {
    throw std::invalid_argument("inadmissible spec: " + violations.front().condition +
                                " (" + violations.front().detail + ")");
  }
}

}  // namespace

Trajectory solve_n1(const ProblemSpec& spec) {
  if (spec.n != 1) {
    throw std::invalid_argument("solve_n1 handles n = 1 only (got n = " +
                                std::to_string(spec.n) + ")");
  }
  require_valid(spec);
  // (G(theta) a')' = 0 with the regularized start forces a = c r exactly:
  // theta = c^2/2 is constant along the line, so both terms vanish.
  Trajectory traj;
  traj.spec = spec;
  traj.termination = Termination::ReachedHorizon;
  const double eps = spec.tolerances.eps_start;
  const double theta = 0.5 * spec.c * spec.c;
  const double g0 = spec.profile.G(theta);
  const int count = 401;
  for (int i = 0; i < count; ++i) {
    double r = eps + (spec.r_max - eps) * i / (count - 1);
    traj.nodes.push_back({r, spec.c * r, spec.c, theta, g0, 0.0});
  }
  return traj;
}

Trajectory solve(const ProblemSpec& spec, const SolverConfig& cfg) {
  ProblemSpec local = spec;
  local.tolerances = cfg;
  require_valid(local);
  if (local.n == 1) return solve_n1(local);
  if (local.c == 0.0) return zero_trajectory(local);

  Trajectory traj;
  traj.spec = local;

  const State start = singular_start(local);
  double r = start.r;
  std::array<double, 2> y{start.alpha, start.alpha_prime};

  StepFault fault = StepFault::None;
  if (!record_node(traj, start, fault)) {
    traj.termination = fault == StepFault::Degenerate
                           ? Termination::DegenerateCoefficient
                           : Termination::BlowUp;
    return traj;
  }

  double h = std::min(cfg.eps_start / 100.0, cfg.max_step);
  double err_prev = 1e-4;
  bool just_rejected = false;

  // PI controller constants (order-5 advancing solution)
  const double safety = 0.9, fac_min = 0.2, fac_max = 5.0;
  const double expo = 0.17, beta = 0.04;

  while (traj.accepted_steps + traj.rejected_steps < cfg.max_steps) {
    if (r >= local.r_max) {
      traj.termination = Termination::ReachedHorizon;
      return traj;
    }
    h = std::min({h, cfg.max_step, local.r_max - r});
    const double h_floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(r, 1e-12);

    detail::StepAttempt attempt;
    fault = StepFault::None;
    try {
      attempt = detail::dopri5_step(local, r, y, h);
      if (!std::isfinite(attempt.y_new[0]) || !std::isfinite(attempt.y_new[1]) ||
          !std::isfinite(attempt.err[0]) || !std::isfinite(attempt.err[1])) {
        fault = StepFault::NonFinite;
      }
    } catch (const DegenerateCoefficient&) {
      fault = StepFault::Degenerate;
    } catch (const ProfileOverflow&) {
      fault = StepFault::Overflow;
    }

    if (fault != StepFault::None) {
      // shrink; persistent faults at vanishing step size identify the event
      traj.rejected_steps++;
      just_rejected = true;
      h *= 0.5;
      if (h < h_floor) {
        switch (fault) {
          case StepFault::Degenerate:
            traj.termination = Termination::DegenerateCoefficient;
            return traj;
          case StepFault::Overflow:
            traj.termination = Termination::BlowUp;
            return traj;
          default:
            traj.termination = std::abs(y[0]) > 100.0 ? Termination::BlowUp
                                                      : Termination::StepFailure;
            return traj;
        }
      }
      continue;
    }

    // weighted RMS error against the controller tolerances
    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      double sc = cfg.abs_tol +
                  cfg.rel_tol * std::max(std::abs(y[i]), std::abs(attempt.y_new[i]));
      double q = attempt.err[i] / sc;
      err += q * q;
    }
    err = std::sqrt(0.5 * err);

    if (err > 1.0) {
      traj.rejected_steps++;
      just_rejected = true;
      double fac = std::max(fac_min, safety * std::pow(err, -0.2));
      h *= std::min(1.0, fac);
      if (h < h_floor) {
        traj.termination = std::abs(y[0]) > 100.0 ? Termination::BlowUp
                                                  : Termination::StepFailure;
        return traj;
      }
      continue;
    }

    // accept
    traj.accepted_steps++;
    r += h;
    y = attempt.y_new;

    fault = StepFault::None;
    if (!record_node(traj, State{r, y[0], y[1]}, fault)) {
      traj.termination = fault == StepFault::Degenerate
                             ? Termination::DegenerateCoefficient
                             : Termination::BlowUp;
      return traj;
    }

    if (std::abs(y[0]) > cfg.blowup_threshold) {
      traj.termination = Termination::BlowUp;
      return traj;
    }

    double fac = safety * std::pow(std::max(err, 1e-10), -expo) *
                 std::pow(err_prev, beta);
    fac = std::min(just_rejected ? 1.0 : fac_max, std::max(fac_min, fac));
    h *= fac;
    err_prev = std::max(err, 1e-4);
    just_rejected = false;
  }

  traj.termination = Termination::StepFailure;  // step budget exhausted
  return traj;
}

Trajectory solve(const ProblemSpec& spec) { return solve(spec, spec.tolerances); }

std::pair<double, double> dense_eval(const Trajectory& traj, double r) {
  if (traj.nodes.empty()) {
    throw std::out_of_range("dense_eval on an empty trajectory");
  }
  const double r_lo = traj.nodes.front().r;
  const double r_hi = traj.nodes.back().r;
  if (r < r_lo || r > r_hi) {
    throw std::out_of_range("dense_eval at r = " + std::to_string(r) +
                            " outside [" + std::to_string(r_lo) + ", " +
                            std::to_string(r_hi) + "]");
  }
  auto it = std::lower_bound(traj.nodes.begin(), traj.nodes.end(), r,
                             [](const TrajectoryNode& n, double v) { return n.r < v; });
  if (it == traj.nodes.begin()) ++it;
  const TrajectoryNode& n1 = *(it - 1);
  const TrajectoryNode& n2 = *it;

  // cubic Hermite on [n1.r, n2.r]
  const double h = n2.r - n1.r;
  const double t = (r - n1.r) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  const double alpha = h00 * n1.alpha + h10 * h * n1.alpha_prime +
                       h01 * n2.alpha + h11 * h * n2.alpha_prime;
  const double d00 = (6 * t2 - 6 * t) / h, d10 = 3 * t2 - 4 * t + 1;
  const double d01 = (6 * t - 6 * t2) / h, d11 = 3 * t2 - 2 * t;
  const double alpha_prime = d00 * n1.alpha + d10 * n1.alpha_prime +
                             d01 * n2.alpha + d11 * n2.alpha_prime;
  return {alpha, alpha_prime};
}

}  // namespace fharmonic
