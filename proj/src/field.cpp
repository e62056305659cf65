#include "fharmonic/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fharmonic/errors.hpp"

namespace fharmonic {

namespace {

// Shared geometric quantities at one state.
struct Local {
  double f, fp;    // f(r), f'(r)
  double g, gp;    // g(alpha), g'(alpha)
  double theta;
};

Local local_at(const ProblemSpec& spec, const State& s) {
  if (!(s.r > 0.0)) {
    throw std::domain_error("field evaluation requires r > 0 (got r = " +
                            std::to_string(s.r) + "); the equation is singular there");
  }
  Local l;
  l.f = spec.f.value(s.r);
  l.fp = spec.f.d1(s.r);
  l.g = spec.g.value(s.alpha);
  l.gp = spec.g.d1(s.alpha);
  double ratio = l.g / l.f;
  l.theta = 0.5 * (s.alpha_prime * s.alpha_prime + (spec.n - 1) * ratio * ratio);
  return l;
}

void check_degenerate(double A, double G, const State& s) {
  if (A <= 1e-14 * std::max(1.0, G)) {
    throw DegenerateCoefficient(
        "principal coefficient A = " + std::to_string(A) +
        " collapsed at r = " + std::to_string(s.r));
  }
}

}  // namespace

double energy_density(const ProblemSpec& spec, const State& s) {
  return local_at(spec, s).theta;
}

FieldEval eval_field(const ProblemSpec& spec, const State& s) {
  const Local l = local_at(spec, s);
  const double nm1 = spec.n - 1;
  const double f2 = l.f * l.f;
  const double ap = s.alpha_prime;

  FieldEval e;
  e.theta = l.theta;
  e.G_theta = spec.profile.G(l.theta);
  e.Gprime_theta = spec.profile.Gprime(l.theta);
  e.A = e.G_theta + e.Gprime_theta * ap * ap;
  check_degenerate(e.A, e.G_theta, s);

  const double ggp = l.g * l.gp / f2;          // g g'/f^2
  const double fpf = l.fp / l.f;               // f'/f
  const double g2f2 = l.g * l.g / f2;          // g^2/f^2

  // explicit second-derivative form
  e.alpha_second = (-nm1 * e.Gprime_theta * ggp * ap * ap
                    - nm1 * fpf * (e.G_theta - e.Gprime_theta * g2f2) * ap
                    + nm1 * e.G_theta * ggp) /
                   e.A;

  // energy identity
  e.theta_prime = nm1 * e.G_theta *
                  (2.0 * ggp * ap - fpf * (g2f2 + ap * ap)) / e.A;
  return e;
}

double alpha_second(const ProblemSpec& spec, const State& s) {
  return eval_field(spec, s).alpha_second;
}

double theta_prime(const ProblemSpec& spec, const State& s) {
  return eval_field(spec, s).theta_prime;
}

double residual(const ProblemSpec& spec, const State& s, double alpha_second_value) {
  const Local l = local_at(spec, s);
  const double nm1 = spec.n - 1;
  const double f2 = l.f * l.f;
  const double ap = s.alpha_prime;
  const double G = spec.profile.G(l.theta);

  // direct derivative of the energy density with the supplied a''
  const double theta_dir = ap * alpha_second_value +
                           nm1 * (l.g * l.gp * ap / f2 -
                                  l.g * l.g * l.fp / (f2 * l.f));

  // dG(theta)/dr = G'(theta) * theta'; the product is taken first so that an
  // unbounded G' at theta = 0 cannot poison the exact zero trajectory
  double chain = theta_dir * ap;
  if (chain != 0.0) chain *= spec.profile.Gprime(l.theta);

  return G * alpha_second_value + nm1 * G * (l.fp / l.f) * ap + chain -
         nm1 * G * l.g * l.gp / f2;
}

namespace detail {

double scaled_residual(const ProblemSpec& spec, const State& s) {
  const FieldEval e = eval_field(spec, s);
  const Local l = local_at(spec, s);
  const double nm1 = spec.n - 1;
  const double f2 = l.f * l.f;
  const double raw = residual(spec, s, e.alpha_second);
  const double scale = std::max(
      {1.0, std::abs(e.G_theta * e.alpha_second),
       std::abs(nm1 * e.G_theta * (l.fp / l.f) * s.alpha_prime),
       std::abs(e.Gprime_theta * e.theta_prime * s.alpha_prime),
       std::abs(nm1 * e.G_theta * l.g * l.gp / f2)});
  return raw / scale;
}

}  // namespace detail

}  // namespace fharmonic
