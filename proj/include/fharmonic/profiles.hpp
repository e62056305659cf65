#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fharmonic/solver_config.hpp"

namespace fharmonic {

/// Density profile F together with its first two derivatives.
/// G = dF/dx and Gprime = dG/dx are stored as independent evaluation rules
/// so that no consumer ever differentiates F numerically.
///
/// Admissible profiles satisfy F(x) > 0, G(x) > 0 for x > 0 and
/// dG/dx(x) >= 0 everywhere (monotone non-decreasing G).
struct FProfile {
  std::function<double(double)> F;       ///< F(x)
  std::function<double(double)> G;       ///< dF/dx
  std::function<double(double)> Gprime;  ///< d^2F/dx^2
  std::string label;                     ///< e.g. "harmonic", "p:4", "exp"
};

/// Rotational warp function (f for the domain factor, g for the target
/// factor) with two derivatives.  Admissible warps satisfy w(0) = 0,
/// w'(0) = 1 and w(y) > 0 for y > 0.
struct Warp {
  std::function<double(double)> value;  ///< w(y)
  std::function<double(double)> d1;     ///< w'(y)
  std::function<double(double)> d2;     ///< w''(y)
  std::string label;                    ///< e.g. "euclidean", "hyperbolic"
};

/// Full description of one rotationally symmetric problem
///   G(theta) a'' + [(n-1) G(theta) f'/f + dG(theta)/dr] a'
///     = (n-1) G(theta) g(a) g'(a) / f^2,    r in (eps, r_max],
/// with the regularized start a(eps) = c*eps, a'(eps) = c.
struct ProblemSpec {
  int n = 2;                ///< dimension of the domain factor (n >= 1)
  FProfile profile;         ///< density profile F
  Warp f;                   ///< domain warp
  Warp g;                   ///< target warp
  double c = 1.0;           ///< initial slope at the origin (c >= 0)
  double r_max = 10.0;      ///< integration horizon
  SolverConfig tolerances;  ///< solver tolerances and event thresholds
};

/// One admissibility violation found by validate_spec.
struct Violation {
  std::string condition;  ///< which requirement failed, e.g. "g'(0) = 1"
  double where = 0.0;     ///< sample point at which it failed
  std::string detail;     ///< human-readable diagnosis
};

// Profile factories ----------------------------------------------------------

/// F(x) = x (Dirichlet density): G = 1, dG/dx = 0.
FProfile make_harmonic_profile();

/// F(x) = x^(p/2) for p > 2: G = (p/2) x^(p/2-1), dG/dx >= 0.
/// Throws std::invalid_argument for p <= 2 (G would be decreasing).
FProfile make_p_profile(double p);

/// F(x) = exp(x): F = G = dG/dx.  Evaluations with x > ln(DBL_MAX) throw
/// ProfileOverflow instead of returning infinity.
FProfile make_exp_profile();

// Warp factories --------------------------------------------------------------

Warp warp_euclidean();   ///< w(y) = y
Warp warp_hyperbolic();  ///< w(y) = sinh y
Warp warp_tanh();        ///< w(y) = tanh y (bounded warp, w'' < 0)

// Name-based lookup (used by the CLI and the python bindings) -----------------

/// Parse "harmonic", "p:<value>" (e.g. "p:4.0"), or "exp".
/// Throws std::invalid_argument for unknown names.
FProfile profile_from_name(const std::string& name);

/// Parse "euclidean", "hyperbolic", or "tanh".
/// Throws std::invalid_argument for unknown names.
Warp warp_from_name(const std::string& name);

// Geometry helpers ------------------------------------------------------------

/// Radial curvature coefficient -(n-1) w''(y) / w(y) of the warped metric.
/// Throws std::domain_error at zeros of w (y = 0 in particular).
double radial_ricci(const Warp& w, int n, double y);

// Admissibility ---------------------------------------------------------------

/// Sample the admissibility conditions on the profile (on a logarithmic
/// x-grid) and on both warps (near 0 and on (0, r_max]) plus basic sanity of
/// n, c, r_max and the tolerances.  Returns every violation found; an empty
/// vector means the spec is usable.
std::vector<Violation> validate_spec(const ProblemSpec& spec);

namespace detail {
/// Unchecked p-profile; test hook for verifying that p = 2 reproduces the
/// harmonic profile.  Not part of the public surface.
FProfile make_p_profile_unchecked(double p);
}  // namespace detail

}  // namespace fharmonic
