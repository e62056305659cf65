#include "fharmonic/profiles.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fharmonic/errors.hpp"

namespace fharmonic {

namespace {

// exp(x) overflows past this; profiles signal instead of returning inf.
const double kExpArgMax = std::log(std::numeric_limits<double>::max());

void check_exp_arg(double x) {
  if (x > kExpArgMax) {
    throw ProfileOverflow("exp profile evaluated at x = " + std::to_string(x) +
                          " > ln(DBL_MAX); density not representable");
  }
}

}  // namespace

FProfile make_harmonic_profile() {
  FProfile p;
  p.F = [](double x) { return x; };
  p.G = [](double) { return 1.0; };
  p.Gprime = [](double) { return 0.0; };
  p.label = "harmonic";
  return p;
}

namespace detail {

FProfile make_p_profile_unchecked(double p) {
  FProfile prof;
  const double half_p = p / 2.0;
  prof.F = [half_p](double x) { return std::pow(x, half_p); };
  prof.G = [half_p](double x) { return half_p * std::pow(x, half_p - 1.0); };
  prof.Gprime = [half_p](double x) {
    return half_p * (half_p - 1.0) * std::pow(x, half_p - 2.0);
  };
  prof.label = "p:" + std::to_string(p);
  return prof;
}

}  // namespace detail

FProfile make_p_profile(double p) {
  if (!(p > 2.0)) {
    throw std::invalid_argument(
        "p-profile requires p > 2 (got p = " + std::to_string(p) +
        "); dG/dx would be negative");
  }
  return detail::make_p_profile_unchecked(p);
}

FProfile make_exp_profile() {
  FProfile prof;
  auto e = [](double x) {
    check_exp_arg(x);
    return std::exp(x);
  };
  prof.F = e;
  prof.G = e;
  prof.Gprime = e;
  prof.label = "exp";
  return prof;
}

Warp warp_euclidean() {
  Warp w;
  w.value = [](double y) { return y; };
  w.d1 = [](double) { return 1.0; };
  w.d2 = [](double) { return 0.0; };
  w.label = "euclidean";
  return w;
}

Warp warp_hyperbolic() {
  Warp w;
  w.value = [](double y) { return std::sinh(y); };
  w.d1 = [](double y) { return std::cosh(y); };
  w.d2 = [](double y) { return std::sinh(y); };
  w.label = "hyperbolic";
  return w;
}

Warp warp_tanh() {
  Warp w;
  w.value = [](double y) { return std::tanh(y); };
  w.d1 = [](double y) {
    double s = 1.0 / std::cosh(y);
    return s * s;
  };
  w.d2 = [](double y) {
    double s = 1.0 / std::cosh(y);
    return -2.0 * std::tanh(y) * s * s;
  };
  w.label = "tanh";
  return w;
}

FProfile profile_from_name(const std::string& name) {
  if (name == "harmonic") return make_harmonic_profile();
  if (name == "exp") return make_exp_profile();
  if (name.rfind("p:", 0) == 0) {
    std::size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(name.substr(2), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("unparsable p-profile \"" + name + "\"");
    }
    if (used != name.size() - 2) {
      throw std::invalid_argument("unparsable p-profile \"" + name + "\"");
    }
    return make_p_profile(p);
  }
  throw std::invalid_argument("unknown profile \"" + name +
                              "\" (expected harmonic, p:<value>, or exp)");
}

Warp warp_from_name(const std::string& name) {
  if (name == "euclidean") return warp_euclidean();
  if (name == "hyperbolic") return warp_hyperbolic();
  if (name == "tanh") return warp_tanh();
  throw std::invalid_argument("unknown warp \"" + name +
                              "\" (expected euclidean, hyperbolic, or tanh)");
}

double radial_ricci(const Warp& w, int n, double y) {
  double wy = w.value(y);
  if (wy == 0.0) {
    throw std::domain_error("radial curvature undefined at a zero of the warp (y = " +
                            std::to_string(y) + ")");
  }
  return -(n - 1) * w.d2(y) / wy;
}

namespace {

constexpr int kSamples = 200;

// log-spaced grid on [lo, hi]
std::vector<double> log_grid(double lo, double hi) {
  std::vector<double> g(kSamples);
  double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < kSamples; ++i) {
    g[i] = std::exp(llo + (lhi - llo) * i / (kSamples - 1));
  }
  return g;
}

void check_warp(const Warp& w, const char* role, double span,
                std::vector<Violation>& out) {
  std::string name = std::string(role) + " (" + w.label + ")";
  double w0 = w.value(0.0);
  if (std::abs(w0) > 1e-12) {
    out.push_back({name + ": w(0) = 0", 0.0,
                   "w(0) = " + std::to_string(w0)});
  }
  double d0 = w.d1(0.0);
  if (std::abs(d0 - 1.0) > 1e-12) {
    out.push_back({name + ": w'(0) = 1", 0.0,
                   "w'(0) = " + std::to_string(d0)});
  }
  for (double y : log_grid(1e-6, span)) {
    if (!(w.value(y) > 0.0)) {
      out.push_back({name + ": w > 0 on (0, span]", y,
                     "w(y) = " + std::to_string(w.value(y))});
      break;
    }
  }
}

}  // namespace

std::vector<Violation> validate_spec(const ProblemSpec& spec) {
  std::vector<Violation> out;

  if (spec.n < 1) {
    out.push_back({"n >= 1", static_cast<double>(spec.n), "dimension must be positive"});
  }
  if (!(spec.c >= 0.0)) {
    out.push_back({"c >= 0", spec.c, "initial slope must be non-negative"});
  }
  if (!(spec.r_max > spec.tolerances.eps_start)) {
    out.push_back({"r_max > eps_start", spec.r_max, "empty integration interval"});
  }
  if (!(spec.tolerances.eps_start > 0.0) || !(spec.tolerances.rel_tol > 0.0) ||
      !(spec.tolerances.abs_tol > 0.0) || !(spec.tolerances.max_step > 0.0) ||
      spec.tolerances.max_steps < 1) {
    out.push_back({"tolerances > 0", 0.0, "eps_start, rel_tol, abs_tol, max_step, max_steps must be positive"});
  }

  // density profile on a log x-grid; overflow-limited profiles are sampled
  // only where representable
  for (double x : log_grid(1e-3, 1e3)) {
    try {
      double F = spec.profile.F(x);
      double G = spec.profile.G(x);
      double Gp = spec.profile.Gprime(x);
      if (!(F > 0.0)) {
        out.push_back({"F(x) > 0 for x > 0", x, "F = " + std::to_string(F)});
        break;
      }
      if (!(G > 0.0)) {
        out.push_back({"dF/dx > 0 for x > 0", x, "G = " + std::to_string(G)});
        break;
      }
      if (Gp < 0.0) {
        out.push_back({"d2F/dx2 >= 0", x, "dG/dx = " + std::to_string(Gp)});
        break;
      }
      // the supplied derivative must actually differentiate F
      const double h = 1e-5 * x;
      const double fd = (spec.profile.F(x + h) - spec.profile.F(x - h)) / (2.0 * h);
      if (std::abs(fd - G) > 1e-4 * std::max(std::abs(G), 1e-30)) {
        out.push_back({"G inconsistent with F", x,
                       "central difference of F = " + std::to_string(fd) +
                           " but G = " + std::to_string(G)});
        break;
      }
    } catch (const ProfileOverflow&) {
      break;  // representable range exhausted; nothing to check beyond it
    }
  }

  check_warp(spec.f, "domain warp f", std::max(spec.r_max, 1.0), out);
  check_warp(spec.g, "target warp g", std::max(spec.r_max, 1.0), out);

  return out;
}

}  // namespace fharmonic
