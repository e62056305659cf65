#pragma once

#include "fharmonic/profiles.hpp"

namespace fharmonic {

/// Pointwise state of the radial profile map.
struct State {
  double r = 0.0;            ///< radius, r > 0
  double alpha = 0.0;        ///< profile value a(r)
  double alpha_prime = 0.0;  ///< derivative a'(r)
};

/// Everything the equation needs at one state, evaluated once.
struct FieldEval {
  double theta = 0.0;         ///< energy density
  double G_theta = 0.0;       ///< G(theta)
  double Gprime_theta = 0.0;  ///< dG/dx at theta
  double A = 0.0;             ///< principal coefficient G + G'*a'^2
  double alpha_second = 0.0;  ///< a'' from the explicit form
  double theta_prime = 0.0;   ///< d theta/dr from the energy identity
};

/// Energy density theta = (1/2) [ a'^2 + (n-1) g(a)^2 / f(r)^2 ].
double energy_density(const ProblemSpec& spec, const State& s);

/// a'' from the explicit second-derivative form
///   [G + G' a'^2] a'' = -(n-1) G' (g g'/f^2) a'^2
///                       -(n-1) (f'/f) [G - G' g^2/f^2] a'
///                       +(n-1) G (g g'/f^2),
/// with g, g' evaluated at a and f, f' at r, G, G' at theta.
/// Throws DegenerateCoefficient when A <= 1e-14 * max(1, G(theta)).
double alpha_second(const ProblemSpec& spec, const State& s);

/// d theta/dr from the energy identity
///   theta' [G + G' a'^2] = (n-1) G { 2 g g' a'/f^2 - (f'/f)[g^2/f^2 + a'^2] }.
/// Same degeneracy guard as alpha_second.
double theta_prime(const ProblemSpec& spec, const State& s);

/// Left-hand side of the second-order equation at (s, a''):
///   G(theta) a'' + [(n-1) G(theta) f'/f + G'(theta) theta'] a'
///     - (n-1) G(theta) g(a) g'(a) / f^2,
/// where theta' is the direct derivative of the energy density using the
/// supplied a''.  Zero iff (r, a, a', a'') satisfies the equation pointwise;
/// linear in the supplied a'' with slope A.
double residual(const ProblemSpec& spec, const State& s, double alpha_second_value);

/// One-pass evaluation of all of the above (alpha_second and theta_prime
/// share the degeneracy guard).
FieldEval eval_field(const ProblemSpec& spec, const State& s);

namespace detail {
/// residual(spec, s, alpha_second(spec, s)) divided by the magnitude of the
/// equation's largest term, so the guard stays meaningful on trajectories of
/// enormous raw scale.  Used for per-node bookkeeping by the solver.
double scaled_residual(const ProblemSpec& spec, const State& s);
}  // namespace detail

}  // namespace fharmonic
