#include "fharmonic/theorems.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "fharmonic/detail/parallel.hpp"
#include "fharmonic/errors.hpp"
#include "fharmonic/field.hpp"

namespace fharmonic {

const char* to_string(TheoremId id) {
  switch (id) {
    case TheoremId::L2_1: return "L2.1";
    case TheoremId::L2_2: return "L2.2";
    case TheoremId::L2_7: return "L2.7";
    case TheoremId::T2_15: return "T2.15";
    case TheoremId::P2_24: return "P2.24";
    case TheoremId::T3_1: return "T3.1";
    case TheoremId::P3_10: return "P3.10";
    case TheoremId::T3_13: return "T3.13";
    case TheoremId::E4_1: return "E4.1";
    case TheoremId::T4_4: return "T4.4";
    case TheoremId::C4_6: return "C4.6";
    case TheoremId::L4_9: return "L4.9";
    case TheoremId::L4_11: return "L4.11";
    case TheoremId::L4_13: return "L4.13";
    case TheoremId::T4_14: return "T4.14";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Consistent: return "consistent";
    case Verdict::Inconsistent: return "inconsistent";
    case Verdict::HypothesesNotMet: return "hypotheses-not-met";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(MapClass c) {
  switch (c) {
    case MapClass::Bounded: return "bounded";
    case MapClass::Identity: return "identity";
    case MapClass::AboveIdentity: return "above-identity";
    case MapClass::Indeterminate: return "indeterminate";
  }
  return "?";
}

namespace {

// Desk-scale thresholds shared by the checkers.
constexpr double kUnboundedAlpha = 10.0;  // leaving [0, 10] counts as unbounded
constexpr double kFlatTol = 1e-3;         // tail increment/slope of a bounded run
constexpr double kIdentityBand = 1e-8;    // relative band around alpha = r
constexpr double kGoodFit = 0.99;         // minimum R^2 for a usable fit
const double kGate = 0.5 * std::log(3.0); // radius gate of the gap lemmas

std::string fmt(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

std::vector<double> linspace(double a, double b, int count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out[static_cast<std::size_t>(i)] = a + (b - a) * static_cast<double>(i) / (count - 1);
  return out;
}

std::vector<double> geomspace(double a, double b, int count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  const double la = std::log(a), lb = std::log(b);
  for (int i = 0; i < count; ++i)
    out[static_cast<std::size_t>(i)] =
        std::exp(la + (lb - la) * static_cast<double>(i) / (count - 1));
  return out;
}

struct Fit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t count = 0;
};

Fit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  Fit out;
  out.count = xs.size();
  if (xs.size() < 2 || xs.size() != ys.size()) return out;
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0.0) return out;
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  out.r2 = (syy <= 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
  return out;
}

const char* statement_of(TheoremId id) {
  switch (id) {
    case TheoremId::L2_1:
      return "nonzero radial solutions have strictly positive slope at every radius";
    case TheoremId::L2_2:
      return "for n = 1 the regular solution is the linear map alpha = c r";
    case TheoremId::L2_7:
      return "vanishing to order above (n-1)/2 + 1 at the origin forces the zero map; "
             "nonzero runs sit at order 1";
    case TheoremId::T2_15:
      return "with g'' >= 0 the slope matching alpha(R) = T is unique";
    case TheoremId::P2_24:
      return "warp-equal runs sit strictly below / on / strictly above the identity "
             "according to c < 1 / c = 1 / c > 1";
    case TheoremId::T3_1:
      return "bounded f' with uniformly convex g admits no bounded nonzero solution";
    case TheoremId::P3_10:
      return "g = sinh, 0 <= f'/f <= a, dG/dx >= c0 G: the slope stays below "
             "max(2, sqrt(2/c0)) plus margin";
    case TheoremId::T3_13:
      return "f pinched between positive constants, 0 <= f' <= C1, g' >= C2 > 0, "
             "dG/dx <= C0 G: the slope keeps a positive floor and alpha is unbounded";
    case TheoremId::E4_1:
      return "theta' (G + G' a'^2) = G W with "
             "W = (n-1)[2 g g' a'/f^2 - (f'/f)(g^2/f^2 + a'^2)], so theta' <= W "
             "wherever W >= 0";
    case TheoremId::T4_4:
      return "rapidly opening f (f' -> infinity) with 0 < g' <= a: the slope decays "
             "like f^(eps - 1)";
    case TheoremId::C4_6:
      return "f >= C r^s with s > 1 and 0 < g' <= a: every solution is bounded";
    case TheoremId::L4_9:
      return "warp-equal hyperbolic: alpha(r0) < r0 and alpha'(r0) < 1 past "
             "(ln 3)/2 pins alpha' < 1 and the gap r - alpha never shrinks";
    case TheoremId::L4_11:
      return "warp-equal hyperbolic below the identity: the energy density decays "
             "exponentially";
    case TheoremId::L4_13:
      return "warp-equal hyperbolic: every regular solution is bounded, the identity, "
             "or stays above the identity";
    case TheoremId::T4_14:
      return "warp-equal hyperbolic: alpha(r0) < r0 at some r0 > (ln 3)/2 forces a "
             "bounded solution";
  }
  return "";
}

void push_hyp(VerificationReport& rep, const std::string& name, bool ok,
              const std::string& detail) {
  rep.hypotheses.push_back(HypothesisSample{name, ok, detail});
}

bool all_hypotheses(const VerificationReport& rep) {
  for (const auto& h : rep.hypotheses)
    if (!h.satisfied) return false;
  return true;
}

/// Standard verdict wiring once hypotheses and conclusion are recorded.
void settle(VerificationReport& rep, bool inconclusive = false,
            const std::string& why = "") {
  rep.hypotheses_met = all_hypotheses(rep);
  if (!rep.hypotheses_met) {
    rep.verdict = Verdict::HypothesesNotMet;
    return;
  }
  if (inconclusive) {
    rep.verdict = Verdict::Inconclusive;
    if (!why.empty()) rep.note = rep.note.empty() ? why : rep.note + "; " + why;
    return;
  }
  rep.verdict = rep.conclusion_observed ? Verdict::Consistent : Verdict::Inconsistent;
}

VerificationReport start_report(TheoremId id) {
  VerificationReport rep;
  rep.theorem_id = id;
  rep.statement = statement_of(id);
  return rep;
}

Trajectory run_with_c(const ProblemSpec& base, double c) {
  ProblemSpec spec = base;
  spec.c = c;
  return solve(spec);
}

double max_alpha(const Trajectory& t) {
  double m = 0.0;
  for (const auto& nd : t.nodes) m = std::max(m, std::abs(nd.alpha));
  return m;
}

bool unbounded_in_observation(const Trajectory& t) {
  return t.termination == Termination::BlowUp || max_alpha(t) > kUnboundedAlpha;
}

/// Tail flatness of a horizon-reaching run: increment over the last tenth and
/// terminal slope both below kFlatTol.
bool flat_tail(const Trajectory& t, double* increment = nullptr,
               double* end_slope = nullptr) {
  if (t.termination != Termination::ReachedHorizon || t.nodes.size() < 4) return false;
  const double r_end = t.nodes.back().r;
  const auto [a_before, ap_before] = dense_eval(t, 0.9 * r_end);
  (void)ap_before;
  const double inc = t.nodes.back().alpha - a_before;
  const double slope = std::abs(t.nodes.back().alpha_prime);
  if (increment) *increment = inc;
  if (end_slope) *end_slope = slope;
  return std::abs(inc) < kFlatTol && slope < kFlatTol;
}

/// True when the two warps agree to near machine precision on a sample grid.
bool warps_match(const Warp& a, const Warp& b, double span) {
  for (double y : linspace(0.0, span, 64)) {
    const double va = a.value(y), vb = b.value(y);
    if (std::abs(va - vb) > 1e-12 * std::max(1.0, std::abs(va))) return false;
  }
  return true;
}

}  // namespace

MapClass classify_map(const Trajectory& traj) {
  if (traj.nodes.empty()) return MapClass::Indeterminate;
  double max_rel_dev = 0.0;
  double min_gap = std::numeric_limits<double>::infinity();
  double max_gap = -std::numeric_limits<double>::infinity();
  for (const auto& nd : traj.nodes) {
    const double gap = nd.alpha - nd.r;
    max_rel_dev = std::max(max_rel_dev, std::abs(gap) / std::max(1.0, nd.r));
    min_gap = std::min(min_gap, gap);
    max_gap = std::max(max_gap, gap);
  }
  if (max_rel_dev <= kIdentityBand) return MapClass::Identity;
  if (min_gap > 0.0) return MapClass::AboveIdentity;
  if (max_gap < 0.0) return flat_tail(traj) ? MapClass::Bounded : MapClass::Indeterminate;
  return MapClass::Indeterminate;
}

// L2.1 -------------------------------------------------------------------------

VerificationReport check_monotone(const std::vector<Trajectory>& pool) {
  VerificationReport rep = start_report(TheoremId::L2_1);
  std::size_t used = 0, nodes = 0;
  double min_slope = std::numeric_limits<double>::infinity();
  double min_gprime = std::numeric_limits<double>::infinity();
  for (const auto& t : pool) {
    if (t.spec.c <= 0.0) continue;  // the statement concerns nonzero maps
    ++used;
    for (const auto& nd : t.nodes) {
      ++nodes;
      min_slope = std::min(min_slope, nd.alpha_prime);
      min_gprime = std::min(min_gprime, t.spec.g.d1(nd.alpha));
    }
  }
  push_hyp(rep, "pool has c > 0 trajectories", used > 0,
           fmt(static_cast<double>(used)) + " of " +
               fmt(static_cast<double>(pool.size())) + " usable");
  push_hyp(rep, "g' > 0 along every trajectory", used > 0 && min_gprime > 0.0,
           "min g'(alpha) = " + fmt(min_gprime));
  rep.measured["trajectories"] = static_cast<double>(used);
  rep.measured["nodes"] = static_cast<double>(nodes);
  rep.measured["min_alpha_prime"] = min_slope;
  rep.conclusion_observed = used > 0 && min_slope > 0.0;
  settle(rep, used == 0, "empty pool");
  return rep;
}

// L2.2 -------------------------------------------------------------------------

VerificationReport check_linear_n1(const ProblemSpec& spec) {
  VerificationReport rep = start_report(TheoremId::L2_2);
  push_hyp(rep, "n = 1", spec.n == 1, "n = " + fmt(spec.n));
  if (spec.n != 1) {
    settle(rep);
    return rep;
  }

  const Trajectory traj = solve(spec);
  double max_dev = 0.0, max_res = 0.0;
  for (const auto& nd : traj.nodes) {
    max_dev = std::max(max_dev, std::abs(nd.alpha - spec.c * nd.r));
    max_res = std::max(max_res, std::abs(nd.residual));
  }

  // Integrate the raw right-hand side as well (no closed-form shortcut) and
  // compare against the linear map.
  const double eps = spec.tolerances.eps_start;
  std::array<double, 2> y{spec.c * eps, spec.c};
  double r = eps;
  const int steps = 2000;
  const double h = (spec.r_max - eps) / steps;
  double max_dev_integrated = 0.0;
  for (int i = 0; i < steps; ++i) {
    y = detail::dopri5_step(spec, r, y, h).y_new;
    r = eps + (i + 1) * h;
    max_dev_integrated = std::max(max_dev_integrated, std::abs(y[0] - spec.c * r));
  }

  const double scale = std::max(1.0, spec.c * spec.r_max);
  rep.measured["max_deviation"] = max_dev;
  rep.measured["max_node_residual"] = max_res;
  rep.measured["max_deviation_integrated"] = max_dev_integrated;
  rep.conclusion_observed = max_dev <= 1e-12 * scale &&
                            max_res <= spec.tolerances.tol_residual &&
                            max_dev_integrated <= 1e-9 * scale;
  settle(rep);
  return rep;
}

// L2.7 -------------------------------------------------------------------------

VerificationReport check_unique_continuation(const std::vector<Trajectory>& pool) {
  VerificationReport rep = start_report(TheoremId::L2_7);
  std::size_t used = 0, zeros = 0;
  double khat_min = std::numeric_limits<double>::infinity();
  double khat_max = -std::numeric_limits<double>::infinity();
  double r2_min = 1.0;
  double crit_gap_min = std::numeric_limits<double>::infinity();
  double zero_max_alpha = 0.0;
  bool order_ok = true;

  for (const auto& t : pool) {
    if (t.spec.c <= 0.0) {
      ++zeros;
      zero_max_alpha = std::max(zero_max_alpha, max_alpha(t));
      continue;
    }
    if (t.nodes.size() < 4) continue;
    ++used;
    const double eps = t.nodes.front().r;
    const double hi = std::min(100.0 * eps, 0.01 * t.nodes.back().r);
    std::vector<double> lx, ly;
    for (double r : geomspace(eps, hi, 20)) {
      const auto [a, ap] = dense_eval(t, r);
      (void)ap;
      if (a <= 0.0) continue;
      lx.push_back(std::log(r));
      ly.push_back(std::log(a));
    }
    const Fit f = fit_line(lx, ly);
    khat_min = std::min(khat_min, f.slope);
    khat_max = std::max(khat_max, f.slope);
    r2_min = std::min(r2_min, f.r2);
    const double k_crit = 0.5 * (t.spec.n - 1) + 1.0;
    crit_gap_min = std::min(crit_gap_min, k_crit - f.slope);
    if (f.slope < 0.9 || f.slope > 1.1 || f.slope > k_crit - 0.25) order_ok = false;
  }

  push_hyp(rep, "pool has c > 0 trajectories", used > 0,
           fmt(static_cast<double>(used)) + " usable");
  rep.measured["khat_min"] = khat_min;
  rep.measured["khat_max"] = khat_max;
  rep.measured["r2_min"] = r2_min;
  rep.measured["critical_gap_min"] = crit_gap_min;
  rep.measured["zero_runs"] = static_cast<double>(zeros);
  rep.measured["zero_max_alpha"] = zero_max_alpha;
  rep.conclusion_observed = used > 0 && order_ok && zero_max_alpha == 0.0;
  const bool bad_fit = used > 0 && r2_min < kGoodFit;
  settle(rep, used == 0 || bad_fit,
         used == 0 ? "empty pool" : "near-origin fit has R^2 below 0.99");
  rep.note = "near-origin order fitted on [eps, 100 eps]; " + rep.note;
  return rep;
}

// T2.15 ------------------------------------------------------------------------

VerificationReport check_uniqueness(const ProblemSpec& spec, double r_target,
                                    double alpha_target, double match_tol) {
  VerificationReport rep = start_report(TheoremId::T2_15);
  double min_g2 = std::numeric_limits<double>::infinity();
  for (double y : linspace(0.0, std::max(alpha_target, 1.0), 200))
    min_g2 = std::min(min_g2, spec.g.d2(y));
  push_hyp(rep, "g'' >= 0 on [0, target]", min_g2 >= -1e-12,
           "min g'' = " + fmt(min_g2));
  const bool informative = 10.0 * match_tol < 0.01 * alpha_target;
  rep.measured["match_tol"] = match_tol;
  if (!all_hypotheses(rep)) {
    settle(rep);
    return rep;
  }
  if (!informative) {
    settle(rep, true, "match tolerance too loose to discriminate slopes");
    return rep;
  }

  try {
    ShootingOptions expanding;
    expanding.match_tol = match_tol;
    const ShootingResult a = shoot(spec, r_target, alpha_target, expanding);

    ShootingOptions wide = expanding;
    wide.c_lo = 0.0;
    wide.c_hi = wide.c_cap;  // start from the full admissible slope range
    const ShootingResult b = shoot(spec, r_target, alpha_target, wide);

    const double delta = std::abs(a.c_star - b.c_star);
    rep.measured["c_star_expanding"] = a.c_star;
    rep.measured["c_star_wide"] = b.c_star;
    rep.measured["delta"] = delta;
    rep.measured["iterations_expanding"] = static_cast<double>(a.iterations);
    rep.measured["iterations_wide"] = static_cast<double>(b.iterations);
    rep.measured["residual_expanding"] = a.residual_at_target;
    rep.measured["residual_wide"] = b.residual_at_target;
    rep.conclusion_observed = delta <= 10.0 * match_tol;
    settle(rep);
  } catch (const NoBracket& e) {
    settle(rep, true, std::string("target unreachable below the slope cap: ") + e.what());
  }
  return rep;
}

// P2.24 ------------------------------------------------------------------------

VerificationReport check_trichotomy(const ProblemSpec& base,
                                    const std::vector<double>& c_grid) {
  VerificationReport rep = start_report(TheoremId::P2_24);
  const bool equal = base.f.label == base.g.label &&
                     warps_match(base.f, base.g, std::max(1.0, base.r_max));
  push_hyp(rep, "warps are equal (f == g)", equal,
           base.f.label + " vs " + base.g.label);
  bool has_below = false, has_identity = false, has_above = false;
  for (double c : c_grid) {
    if (c < 1.0 - 1e-9) has_below = true;
    else if (c > 1.0 + 1e-9) has_above = true;
    else has_identity = true;
  }
  push_hyp(rep, "grid covers c < 1, c = 1, c > 1",
           has_below && has_identity && has_above,
           fmt(static_cast<double>(c_grid.size())) + " slopes");
  if (!all_hypotheses(rep)) {
    settle(rep);
    return rep;
  }

  double max_gap_below = -std::numeric_limits<double>::infinity();
  double max_dev_identity = 0.0;
  double min_gap_above = std::numeric_limits<double>::infinity();
  for (double c : c_grid) {
    const Trajectory t = run_with_c(base, c);
    for (const auto& nd : t.nodes) {
      const double gap = nd.alpha - nd.r;
      if (c < 1.0 - 1e-9) {
        max_gap_below = std::max(max_gap_below, gap);
      } else if (c > 1.0 + 1e-9) {
        min_gap_above = std::min(min_gap_above, gap);
      } else {
        max_dev_identity =
            std::max(max_dev_identity, std::abs(gap) / std::max(1.0, nd.r));
      }
    }
  }
  rep.measured["max_gap_below"] = max_gap_below;
  rep.measured["max_rel_dev_identity"] = max_dev_identity;
  rep.measured["min_gap_above"] = min_gap_above;
  rep.conclusion_observed = max_gap_below < 0.0 && max_dev_identity <= kIdentityBand &&
                            min_gap_above > 0.0;
  settle(rep);
  return rep;
}

// T3.1 -------------------------------------------------------------------------

VerificationReport check_liouville_A(const ProblemSpec& base,
                                     const std::vector<double>& c_grid) {
  VerificationReport rep = start_report(TheoremId::T3_1);

  double max_fp = 0.0;
  for (double r : geomspace(std::max(base.tolerances.eps_start, 1e-3), base.r_max, 200))
    max_fp = std::max(max_fp, std::abs(base.f.d1(r)));
  push_hyp(rep, "|f'| bounded on (0, r_max]", std::isfinite(max_fp) && max_fp <= 100.0,
           "max |f'| = " + fmt(max_fp));

  double c0sq = std::numeric_limits<double>::infinity();
  double min_gp = std::numeric_limits<double>::infinity();
  for (double y : linspace(0.0, 10.0, 200)) {
    const double gp = base.g.d1(y);
    min_gp = std::min(min_gp, gp);
    c0sq = std::min(c0sq, gp * gp - base.g.value(y) * base.g.d2(y));
  }
  push_hyp(rep, "g' > 0 and g'^2 - g g'' >= c^2 > 0", min_gp > 0.0 && c0sq >= 1e-6,
           "min g' = " + fmt(min_gp) + ", min (g'^2 - g g'') = " + fmt(c0sq));

  bool alt_a = true;   // G(x) >= c x dG/dx with c from the convexity constant
  bool alt_b = true;   // G(x) >= c0 dG/dx for a positive constant c0
  double ratio_b = std::numeric_limits<double>::infinity();
  const double cc = c0sq > 0.0 ? std::sqrt(c0sq) : 0.0;
  for (double x : geomspace(1e-3, 700.0, 200)) {
    try {
      const double G = base.profile.G(x), Gp = base.profile.Gprime(x);
      if (G - cc * x * Gp < -1e-12 * std::max(1.0, G)) alt_a = false;
      if (Gp > 1e-300) ratio_b = std::min(ratio_b, G / Gp);
    } catch (const ProfileOverflow&) {
      break;  // representable range exhausted; the sampled window ends here
    }
  }
  if (std::isfinite(ratio_b) && ratio_b <= 0.0) alt_b = false;
  push_hyp(rep, "profile growth alternative (G >= c x G' or G >= c0 G')",
           alt_a || alt_b,
           std::string("G >= c x G': ") + (alt_a ? "yes" : "no") +
               ", min G/G' = " + fmt(ratio_b));
  if (!all_hypotheses(rep)) {
    settle(rep);
    return rep;
  }

  double min_max_alpha = std::numeric_limits<double>::infinity();
  bool all_unbounded = true;
  for (double c : c_grid) {
    if (c <= 0.0) continue;
    const Trajectory t = run_with_c(base, c);
    min_max_alpha = std::min(min_max_alpha, max_alpha(t));
    if (!unbounded_in_observation(t)) all_unbounded = false;
  }
  rep.measured["c0"] = cc;
  rep.measured["min_max_alpha"] = min_max_alpha;
  rep.measured["runs"] = static_cast<double>(c_grid.size());
  rep.conclusion_observed = all_unbounded;
  rep.note = "unbounded-in-observation = blow-up or alpha > " + fmt(kUnboundedAlpha) +
             " before r = " + fmt(base.r_max);
  settle(rep);
  return rep;
}

// P3.10 ------------------------------------------------------------------------

VerificationReport check_derivative_bound(const ProblemSpec& base,
                                          const std::vector<double>& c_grid) {
  VerificationReport rep = start_report(TheoremId::P3_10);

  bool g_is_sinh = base.g.label == "hyperbolic";
  if (g_is_sinh)
    for (double y : linspace(0.0, 5.0, 100))
      if (std::abs(base.g.value(y) - std::sinh(y)) > 1e-9 * std::cosh(y))
        g_is_sinh = false;
  push_hyp(rep, "g = sinh", g_is_sinh, base.g.label);

  double c0 = std::numeric_limits<double>::infinity();
  for (double x : geomspace(1e-3, 700.0, 200)) {
    try {
      c0 = std::min(c0, base.profile.Gprime(x) / base.profile.G(x));
    } catch (const ProfileOverflow&) {
      break;
    }
  }
  push_hyp(rep, "dG/dx >= c0 G with c0 > 0", std::isfinite(c0) && c0 >= 1e-3,
           "min G'/G = " + fmt(c0));
  if (!all_hypotheses(rep)) {
    settle(rep);
    return rep;
  }

  const double threshold = std::max(2.0, std::sqrt(2.0 / c0)) + 0.5;
  double ratio_bound = 0.0;
  double max_tail_slope = -std::numeric_limits<double>::infinity();
  bool ratio_ok = true;
  bool all_below = true;
  for (double c : c_grid) {
    if (c <= 0.0) continue;
    const Trajectory t = run_with_c(base, c);
    if (t.nodes.size() < 4) continue;
    const double r_end = t.nodes.back().r;
    for (double r : linspace(0.5 * r_end, r_end, 200)) {
      const double ratio = base.f.d1(r) / base.f.value(r);
      if (!(ratio >= -1e-12) || !std::isfinite(ratio)) ratio_ok = false;
      ratio_bound = std::max(ratio_bound, ratio);
    }
    for (const auto& nd : t.nodes)
      if (nd.r >= 0.5 * r_end)
        max_tail_slope = std::max(max_tail_slope, nd.alpha_prime);
    if (max_tail_slope > threshold) all_below = false;
  }
  push_hyp(rep, "0 <= f'/f <= a on the tail window", ratio_ok,
           "max f'/f = " + fmt(ratio_bound));
  rep.measured["c0"] = c0;
  rep.measured["threshold"] = threshold;
  rep.measured["max_tail_slope"] = max_tail_slope;
  rep.measured["f_ratio_bound"] = ratio_bound;
  rep.conclusion_observed = all_below;
  rep.note = "slope sampled on [r_end/2, r_end] of each run";
  settle(rep);
  return rep;
}

// T3.13 ------------------------------------------------------------------------

VerificationReport check_liouville_flat(const ProblemSpec& base,
                                        const std::vector<double>& c_grid) {
  VerificationReport rep = start_report(TheoremId::T3_13);

  double f_min = std::numeric_limits<double>::infinity(), f_max = 0.0;
  double fp_min = std::numeric_limits<double>::infinity(), fp_max = 0.0;
  for (double r : linspace(1.0, base.r_max, 200)) {
    f_min = std::min(f_min, base.f.value(r));
    f_max = std::max(f_max, base.f.value(r));
    fp_min = std::min(fp_min, base.f.d1(r));
    fp_max = std::max(fp_max, base.f.d1(r));
  }
  push_hyp(rep, "f pinched between positive constants on [1, r_max]",
           f_min >= 1e-3 && f_max <= 1e3,
           "f in [" + fmt(f_min) + ", " + fmt(f_max) + "]");
  push_hyp(rep, "0 <= f' <= C1 on [1, r_max]", fp_min >= -1e-12 && fp_max <= 100.0,
           "f' in [" + fmt(fp_min) + ", " + fmt(fp_max) + "]");

  double c0_ratio = 0.0;
  for (double x : geomspace(1e-3, 700.0, 200)) {
    try {
      c0_ratio = std::max(c0_ratio, base.profile.Gprime(x) / base.profile.G(x));
    } catch (const ProfileOverflow&) {
      break;
    }
  }
  push_hyp(rep, "dG/dx <= C0 G on the sampled range",
           std::isfinite(c0_ratio) && c0_ratio < 1e6, "max G'/G = " + fmt(c0_ratio));

  // g' must stay away from zero along the observed alpha ranges.
  double gp_floor = std::numeric_limits<double>::infinity();
  std::vector<Trajectory> runs;
  for (double c : c_grid) {
    if (c <= 0.0) continue;
    runs.push_back(run_with_c(base, c));
    for (const auto& nd : runs.back().nodes)
      gp_floor = std::min(gp_floor, base.g.d1(nd.alpha));
  }
  push_hyp(rep, "g' >= C2 > 0 along every trajectory", gp_floor > 1e-6,
           "min g'(alpha) = " + fmt(gp_floor));
  if (!all_hypotheses(rep)) {
    settle(rep);
    return rep;
  }

  double slope_floor = std::numeric_limits<double>::infinity();
  double alpha_max_min = std::numeric_limits<double>::infinity();
  bool all_ok = !runs.empty();
  for (const auto& t : runs) {
    double floor_i = std::numeric_limits<double>::infinity();
    for (const auto& nd : t.nodes)
      if (nd.r >= 1.0) floor_i = std::min(floor_i, nd.alpha_prime);
    slope_floor = std::min(slope_floor, floor_i);
    alpha_max_min = std::min(alpha_max_min, max_alpha(t));
    if (!(floor_i > 1e-6) || !unbounded_in_observation(t)) all_ok = false;
  }
  rep.measured["slope_floor"] = slope_floor;
  rep.measured["alpha_max_min"] = alpha_max_min;
  rep.measured["runs"] = static_cast<double>(runs.size());
  rep.conclusion_observed = all_ok;
  rep.note = "floor sampled on [1, r_end] of each run";
  settle(rep);
  return rep;
}

// E4.1 -------------------------------------------------------------------------

VerificationReport check_energy_inequality(const std::vector<Trajectory>& pool) {
  VerificationReport rep = start_report(TheoremId::E4_1);
  std::size_t checked = 0, positive = 0, skipped = 0;
  double max_route_err = 0.0;
  double max_excess = -std::numeric_limits<double>::infinity();
  for (const auto& t : pool) {
    if (t.spec.n < 2) continue;  // the bracket carries an (n-1) factor
    const double nm1 = t.spec.n - 1;
    for (const auto& nd : t.nodes) {
      const State s{nd.r, nd.alpha, nd.alpha_prime};
      FieldEval e;
      try {
        e = eval_field(t.spec, s);
      } catch (const std::exception&) {
        ++skipped;  // degenerate or overflowing node; nothing to compare
        continue;
      }
      const double f = t.spec.f.value(nd.r), fp = t.spec.f.d1(nd.r);
      const double g = t.spec.g.value(nd.alpha), gp = t.spec.g.d1(nd.alpha);
      const double f2 = f * f;
      const double ap = nd.alpha_prime;
      const double w1 = nm1 * 2.0 * g * gp * ap / f2;
      const double w2 = nm1 * (fp / f) * (g * g / f2 + ap * ap);
      const double W = w1 - w2;
      // Differentiate the energy density directly and compare with the
      // identity route used by eval_field.  Both comparisons are scaled by
      // the magnitude of the terms being cancelled, since W and theta' pass
      // through zero while their constituents stay enormous.
      const double d1 = ap * e.alpha_second;
      const double d2 = nm1 * g * gp * ap / f2;
      const double d3 = nm1 * g * g * fp / (f2 * f);
      const double direct = d1 + d2 - d3;
      if (!std::isfinite(direct) || !std::isfinite(W) || !std::isfinite(e.theta_prime)) {
        ++skipped;
        continue;
      }
      ++checked;
      const double route_scale = std::max(
          {1.0, std::abs(d1), std::abs(d2), std::abs(d3), std::abs(e.theta_prime)});
      max_route_err =
          std::max(max_route_err, std::abs(direct - e.theta_prime) / route_scale);
      if (W >= 0.0) {
        ++positive;
        const double w_scale = std::max({1.0, std::abs(w1), std::abs(w2)});
        max_excess = std::max(max_excess, (e.theta_prime - W) / w_scale);
      }
    }
  }
  push_hyp(rep, "pool has n >= 2 trajectories with evaluable nodes", checked > 0,
           fmt(static_cast<double>(checked)) + " nodes checked, " +
               fmt(static_cast<double>(skipped)) + " skipped");
  rep.measured["nodes_checked"] = static_cast<double>(checked);
  rep.measured["nodes_positive_W"] = static_cast<double>(positive);
  rep.measured["max_route_rel_err"] = max_route_err;
  rep.measured["max_excess_over_W"] = max_excess;
  rep.conclusion_observed =
      checked > 0 && max_route_err <= 1e-11 && max_excess <= 1e-11;
  rep.note = "theta' <= W is only asserted where W >= 0 (A >= G flips the "
             "comparison elsewhere)";
  settle(rep, checked == 0, "no evaluable nodes");
  return rep;
}

// T4.4 / C4.6 --------------------------------------------------------------------

VerificationReport check_decay(const ProblemSpec& base,
                               const std::vector<double>& c_grid) {
  VerificationReport rep = start_report(TheoremId::T4_4);

  const double fp_end = base.f.d1(base.r_max);
  const double fp_mid = base.f.d1(0.5 * base.r_max);
  push_hyp(rep, "f' -> infinity (sampled: large and still growing)",
           fp_end >= 100.0 && fp_end > 2.0 * fp_mid,
           "f'(r_max) = " + fmt(fp_end) + ", f'(r_max/2) = " + fmt(fp_mid));
  const double s_hat = (std::log(base.f.value(base.r_max)) -
                        std::log(base.f.value(0.5 * base.r_max))) /
                       (std::log(base.r_max) - std::log(0.5 * base.r_max));
  push_hyp(rep, "f >= C r^s with s > 1 (tail exponent)", s_hat > 1.5,
           "fitted tail exponent = " + fmt(s_hat));

  std::vector<Trajectory> runs;
  double gp_floor = std::numeric_limits<double>::infinity(), gp_cap = 0.0;
  for (double c : c_grid) {
    if (c <= 0.0) continue;
    runs.push_back(run_with_c(base, c));
    for (const auto& nd : runs.back().nodes) {
      gp_floor = std::min(gp_floor, base.g.d1(nd.alpha));
      gp_cap = std::max(gp_cap, base.g.d1(nd.alpha));
    }
  }
  push_hyp(rep, "0 < g' <= a along every trajectory",
           gp_floor > 1e-9 && gp_cap <= 1e3,
           "g' in [" + fmt(gp_floor) + ", " + fmt(gp_cap) + "]");
  if (!all_hypotheses(rep)) {
    settle(rep);
    return rep;
  }

  double slope_max = -std::numeric_limits<double>::infinity();
  double r2_min = 1.0;
  double rel_increment_max = 0.0;
  bool fits_ok = true, horizon_ok = true, thin = false;
  for (const auto& t : runs) {
    if (t.termination != Termination::ReachedHorizon) {
      horizon_ok = false;
      continue;
    }
    std::vector<double> lx, ly;
    for (const auto& nd : t.nodes)
      if (nd.r >= (2.0 / 3.0) * base.r_max && nd.alpha_prime > 0.0) {
        lx.push_back(std::log(base.f.value(nd.r)));
        ly.push_back(std::log(nd.alpha_prime));
      }
    if (lx.size() < 8) {
      thin = true;
      continue;
    }
    const Fit f = fit_line(lx, ly);
    slope_max = std::max(slope_max, f.slope);
    r2_min = std::min(r2_min, f.r2);
    if (f.r2 < kGoodFit) fits_ok = false;

    const auto [a_mid, ap_mid] = dense_eval(t, 0.5 * base.r_max);
    (void)ap_mid;
    const double inc = t.nodes.back().alpha - a_mid;
    rel_increment_max =
        std::max(rel_increment_max, inc / std::max(a_mid, 1e-6));
  }
  rep.measured["s_hat"] = s_hat;
  rep.measured["decay_slope_max"] = slope_max;
  rep.measured["r2_min"] = r2_min;
  rep.measured["rel_increment_max"] = rel_increment_max;
  rep.measured["runs"] = static_cast<double>(runs.size());
  rep.conclusion_observed = horizon_ok && !runs.empty() && slope_max <= -0.85 &&
                            rel_increment_max <= 0.1;
  settle(rep, thin || !fits_ok,
         thin ? "too few tail nodes for a fit" : "tail fit has R^2 below 0.99");
  rep.note = "slope of ln a' against ln f fitted on the tail third; " + rep.note;
  return rep;
}

// L4.9 / L4.11 / L4.13 / T4.14 ---------------------------------------------------

VerificationReport check_hyperbolic_boundedness(const ProblemSpec& base,
                                                const std::vector<double>& c_grid) {
  VerificationReport rep = start_report(TheoremId::L4_13);

  bool hyperbolic = base.f.label == "hyperbolic" && base.g.label == "hyperbolic" &&
                    warps_match(base.f, base.g, std::max(1.0, base.r_max));
  if (hyperbolic)
    for (double y : linspace(0.0, 5.0, 100))
      if (std::abs(base.f.value(y) - std::sinh(y)) > 1e-9 * std::cosh(y))
        hyperbolic = false;
  push_hyp(rep, "f = g = sinh", hyperbolic, base.f.label + " vs " + base.g.label);
  bool has_below = false;
  for (double c : c_grid)
    if (c > 0.0 && c < 1.0 - 1e-9) has_below = true;
  push_hyp(rep, "grid has below-identity slopes (0 < c < 1)", has_below,
           fmt(static_cast<double>(c_grid.size())) + " slopes");
  if (!all_hypotheses(rep)) {
    settle(rep);
    return rep;
  }

  bool gap_ok = true, slope_ok = true, classes_ok = true, below_bounded = true;
  bool theta_fit_ok = true, theta_fit_seen = false;
  double min_gap_margin = std::numeric_limits<double>::infinity();
  double max_slope_after_gate = -std::numeric_limits<double>::infinity();
  double theta_slope_max = -std::numeric_limits<double>::infinity();
  double theta_r2_min = 1.0;
  double flat_increment_max = 0.0, flat_slope_max = 0.0;
  std::size_t indeterminate = 0, bounded = 0, identity = 0, above = 0;

  for (double c : c_grid) {
    if (c <= 0.0) continue;
    const Trajectory t = run_with_c(base, c);
    const MapClass cls = classify_map(t);
    switch (cls) {
      case MapClass::Bounded: ++bounded; break;
      case MapClass::Identity: ++identity; break;
      case MapClass::AboveIdentity: ++above; break;
      case MapClass::Indeterminate: ++indeterminate; break;
    }
    if (cls == MapClass::Indeterminate) classes_ok = false;

    if (c < 1.0 - 1e-9) {
      if (cls != MapClass::Bounded) below_bounded = false;

      // Gap persistence: after the first node past the gate with alpha < r
      // and alpha' < 1, the slope stays below 1 and the gap never shrinks.
      std::size_t i0 = t.nodes.size();
      for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        const auto& nd = t.nodes[i];
        if (nd.r > kGate && nd.alpha < nd.r && nd.alpha_prime < 1.0) {
          i0 = i;
          break;
        }
      }
      if (i0 == t.nodes.size()) {
        gap_ok = false;
      } else {
        const double delta = t.nodes[i0].r - t.nodes[i0].alpha;
        for (std::size_t j = i0 + 1; j < t.nodes.size(); ++j) {
          const auto& nd = t.nodes[j];
          const double gap = nd.r - nd.alpha;
          min_gap_margin = std::min(min_gap_margin, gap - delta);
          max_slope_after_gate = std::max(max_slope_after_gate, nd.alpha_prime);
          if (nd.alpha_prime >= 1.0) slope_ok = false;
          if (gap < delta * (1.0 - 1e-9) - 1e-12) gap_ok = false;
        }
      }

      // Exponential energy decay on the tail third.
      std::vector<double> xs, ys;
      const double r_end = t.nodes.back().r;
      for (const auto& nd : t.nodes)
        if (nd.r >= (2.0 / 3.0) * r_end && nd.theta > 0.0) {
          xs.push_back(nd.r);
          ys.push_back(std::log(nd.theta));
        }
      if (xs.size() >= 8) {
        theta_fit_seen = true;
        const Fit f = fit_line(xs, ys);
        theta_slope_max = std::max(theta_slope_max, f.slope);
        theta_r2_min = std::min(theta_r2_min, f.r2);
        if (f.r2 < kGoodFit || f.slope > -0.1) theta_fit_ok = false;
      }

      double inc = 0.0, end_slope = 0.0;
      flat_tail(t, &inc, &end_slope);
      flat_increment_max = std::max(flat_increment_max, std::abs(inc));
      flat_slope_max = std::max(flat_slope_max, end_slope);
    } else if (std::abs(c - 1.0) <= 1e-9) {
      if (cls != MapClass::Identity) classes_ok = false;
    } else {
      if (cls != MapClass::AboveIdentity) classes_ok = false;
    }
  }

  rep.measured["bounded_runs"] = static_cast<double>(bounded);
  rep.measured["identity_runs"] = static_cast<double>(identity);
  rep.measured["above_runs"] = static_cast<double>(above);
  rep.measured["indeterminate_runs"] = static_cast<double>(indeterminate);
  rep.measured["gap_ok"] = gap_ok ? 1.0 : 0.0;
  rep.measured["slope_ok"] = slope_ok ? 1.0 : 0.0;
  rep.measured["below_all_bounded"] = below_bounded ? 1.0 : 0.0;
  rep.measured["min_gap_margin"] = min_gap_margin;
  rep.measured["max_slope_after_gate"] = max_slope_after_gate;
  rep.measured["theta_slope_max"] = theta_slope_max;
  rep.measured["theta_r2_min"] = theta_r2_min;
  rep.measured["theta_fit_ok"] = (theta_fit_seen && theta_fit_ok) ? 1.0 : 0.0;
  rep.measured["flat_increment_max"] = flat_increment_max;
  rep.measured["flat_slope_max"] = flat_slope_max;
  rep.conclusion_observed = gap_ok && slope_ok && classes_ok && below_bounded &&
                            theta_fit_seen && theta_fit_ok;
  const bool bad_fit = theta_fit_seen && theta_r2_min < kGoodFit;
  settle(rep, !theta_fit_seen || bad_fit,
         !theta_fit_seen ? "too few tail nodes for the energy fit"
                         : "energy fit has R^2 below 0.99");
  rep.note = "gate at (ln 3)/2; energy decay fitted on the tail third; " + rep.note;
  return rep;
}

// Catalog ------------------------------------------------------------------------

namespace {

ProblemSpec make_spec(int n, const std::string& profile, const std::string& f,
                      const std::string& g, double c, double r_max,
                      double blowup = 1e6, double abs_tol = 1e-12) {
  ProblemSpec s;
  s.n = n;
  s.profile = profile_from_name(profile);
  s.f = warp_from_name(f);
  s.g = warp_from_name(g);
  s.c = c;
  s.r_max = r_max;
  s.tolerances.blowup_threshold = blowup;
  s.tolerances.abs_tol = abs_tol;
  return s;
}

/// The shared trajectory pool: every (profile, warp pair, n, c) family the
/// pool checkers look at.  37 c > 0 runs across n in {2, 3, 5} plus one zero
/// run.
std::vector<Trajectory> default_pool() {
  struct Item {
    int n;
    const char* profile;
    const char* f;
    const char* g;
    double c;
    double r_max;
    double blowup;
  };
  const Item items[] = {
      // warp-equal hyperbolic families
      {2, "harmonic", "hyperbolic", "hyperbolic", 0.8, 20.0, 20.0},
      {2, "harmonic", "hyperbolic", "hyperbolic", 0.9, 20.0, 20.0},
      {2, "harmonic", "hyperbolic", "hyperbolic", 0.99, 20.0, 20.0},
      {2, "harmonic", "hyperbolic", "hyperbolic", 1.0, 20.0, 25.0},
      {2, "harmonic", "hyperbolic", "hyperbolic", 1.1, 20.0, 20.0},
      {2, "harmonic", "hyperbolic", "hyperbolic", 1.2, 20.0, 20.0},
      {3, "harmonic", "hyperbolic", "hyperbolic", 0.9, 20.0, 20.0},
      {3, "harmonic", "hyperbolic", "hyperbolic", 1.0, 20.0, 25.0},
      {2, "exp", "hyperbolic", "hyperbolic", 0.9, 20.0, 20.0},
      {2, "exp", "hyperbolic", "hyperbolic", 0.99, 20.0, 20.0},
      {2, "exp", "hyperbolic", "hyperbolic", 1.2, 20.0, 20.0},
      {3, "exp", "hyperbolic", "hyperbolic", 0.5, 20.0, 20.0},
      {2, "p:4", "hyperbolic", "hyperbolic", 0.8, 15.0, 20.0},
      {2, "p:4", "hyperbolic", "hyperbolic", 0.9, 15.0, 20.0},
      // hyperbolic domain onto a euclidean target (bounded families)
      {2, "harmonic", "hyperbolic", "euclidean", 0.5, 20.0, 1e6},
      {2, "harmonic", "hyperbolic", "euclidean", 1.0, 20.0, 1e6},
      {3, "harmonic", "hyperbolic", "euclidean", 0.5, 20.0, 1e6},
      {3, "harmonic", "hyperbolic", "euclidean", 1.0, 20.0, 1e6},
      {5, "harmonic", "hyperbolic", "euclidean", 0.3, 20.0, 1e6},
      {5, "harmonic", "hyperbolic", "euclidean", 1.0, 20.0, 1e6},
      {2, "exp", "hyperbolic", "euclidean", 0.5, 20.0, 1e6},
      {2, "exp", "hyperbolic", "euclidean", 1.0, 20.0, 1e6},
      {3, "exp", "hyperbolic", "euclidean", 1.0, 20.0, 1e6},
      {5, "exp", "hyperbolic", "euclidean", 0.5, 20.0, 1e6},
      {3, "p:4", "hyperbolic", "euclidean", 0.8, 20.0, 1e6},
      // euclidean domain onto a hyperbolic target (blow-up families)
      {2, "harmonic", "euclidean", "hyperbolic", 0.1, 50.0, 20.0},
      {2, "harmonic", "euclidean", "hyperbolic", 0.5, 50.0, 20.0},
      {2, "harmonic", "euclidean", "hyperbolic", 1.0, 50.0, 20.0},
      {3, "harmonic", "euclidean", "hyperbolic", 0.5, 50.0, 20.0},
      {3, "harmonic", "euclidean", "hyperbolic", 1.0, 50.0, 20.0},
      // flat-to-flat (exact linear maps)
      {2, "exp", "euclidean", "euclidean", 0.25, 20.0, 1e6},
      {2, "exp", "euclidean", "euclidean", 1.0, 20.0, 1e6},
      {2, "harmonic", "euclidean", "euclidean", 0.7, 20.0, 1e6},
      {3, "p:4", "euclidean", "euclidean", 0.7, 20.0, 1e6},
      // bounded domain warp (exponential growth of alpha)
      {2, "harmonic", "tanh", "euclidean", 1.0, 50.0, 1e100},
      {2, "harmonic", "tanh", "euclidean", 2.0, 50.0, 1e100},
      {3, "harmonic", "tanh", "euclidean", 1.0, 50.0, 1e100},
      // the zero map
      {2, "harmonic", "hyperbolic", "hyperbolic", 0.0, 20.0, 1e6},
  };
  std::vector<Trajectory> pool;
  pool.reserve(std::size(items));
  for (const auto& it : items)
    pool.push_back(solve(make_spec(it.n, it.profile, it.f, it.g, it.c, it.r_max,
                                   it.blowup)));
  return pool;
}

/// Re-labels a composite report to one of its constituent statements and
/// recomputes the conclusion from the recorded measurements.
VerificationReport relabel(VerificationReport rep, TheoremId id, bool conclusion,
                           bool inconclusive = false, const std::string& why = "") {
  rep.theorem_id = id;
  rep.statement = statement_of(id);
  rep.conclusion_observed = conclusion;
  if (rep.verdict != Verdict::HypothesesNotMet) {
    if (inconclusive) {
      rep.verdict = Verdict::Inconclusive;
      if (!why.empty()) rep.note = why + "; " + rep.note;
    } else {
      rep.verdict = conclusion ? Verdict::Consistent : Verdict::Inconsistent;
    }
  }
  return rep;
}

/// Folds the reports of one theorem's spec families into a single report.
/// Inconsistent anywhere dominates; otherwise Inconclusive; a family whose
/// hypotheses fail never blocks the others from reporting Consistent, but a
/// mixed outcome is flagged instead of silently upgraded.
VerificationReport merge_family_reports(TheoremId id,
                                        std::vector<VerificationReport> subs) {
  if (subs.size() == 1) return std::move(subs.front());
  VerificationReport rep;
  rep.theorem_id = id;
  rep.statement = statement_of(id);
  std::string families;
  bool any_inconsistent = false, any_inconclusive = false;
  bool any_consistent = false, all_hypotheses = true;
  bool conclusion = true, any_conclusion_seen = false;
  for (auto& sub : subs) {
    if (!families.empty()) families += " | ";
    families += sub.family;
    all_hypotheses = all_hypotheses && sub.hypotheses_met;
    for (auto& h : sub.hypotheses) {
      h.name = sub.family + ": " + h.name;
      rep.hypotheses.push_back(std::move(h));
    }
    for (const auto& [key, value] : sub.measured)
      rep.measured[sub.family + ": " + key] = value;
    if (!sub.note.empty()) {
      if (!rep.note.empty()) rep.note += "; ";
      rep.note += sub.family + ": " + sub.note;
    }
    switch (sub.verdict) {
      case Verdict::Inconsistent: any_inconsistent = true; break;
      case Verdict::Inconclusive: any_inconclusive = true; break;
      case Verdict::Consistent: any_consistent = true; break;
      case Verdict::HypothesesNotMet: break;
    }
    if (sub.hypotheses_met) {
      any_conclusion_seen = true;
      conclusion = conclusion && sub.conclusion_observed;
    }
  }
  rep.family = std::move(families);
  rep.hypotheses_met = all_hypotheses;
  rep.conclusion_observed = any_conclusion_seen && conclusion;
  if (any_inconsistent) {
    rep.verdict = Verdict::Inconsistent;
  } else if (any_inconclusive) {
    rep.verdict = Verdict::Inconclusive;
  } else if (all_hypotheses) {
    rep.verdict = Verdict::Consistent;
  } else if (!any_consistent) {
    rep.verdict = Verdict::HypothesesNotMet;
  } else {
    rep.verdict = Verdict::Inconclusive;
    if (!rep.note.empty()) rep.note += "; ";
    rep.note += "hypotheses failed for a strict subset of the spec families";
  }
  return rep;
}

/// One catalog entry per theorem: runs every spec family and merges.
struct FamilyRun {
  std::string family;
  std::function<VerificationReport()> run;
};

CatalogEntry merged_entry(TheoremId id, std::vector<FamilyRun> runs) {
  std::string label;
  for (const auto& fr : runs) {
    if (!label.empty()) label += " | ";
    label += fr.family;
  }
  auto runner = [id, runs = std::move(runs)] {
    std::vector<VerificationReport> subs;
    subs.reserve(runs.size());
    for (const auto& fr : runs) {
      VerificationReport sub = fr.run();
      if (sub.family.empty()) sub.family = fr.family;
      subs.push_back(std::move(sub));
    }
    return merge_family_reports(id, std::move(subs));
  };
  return CatalogEntry{id, std::move(label), std::move(runner)};
}

}  // namespace

std::vector<CatalogEntry> default_catalog() {
  std::vector<CatalogEntry> cat;
  auto add = [&cat](TheoremId id, std::string family,
                    std::function<VerificationReport()> run) {
    cat.push_back(CatalogEntry{id, std::move(family), std::move(run)});
  };
  auto add_merged = [&cat](TheoremId id, std::vector<FamilyRun> runs) {
    cat.push_back(merged_entry(id, std::move(runs)));
  };

  add(TheoremId::L2_1, "pool",
      [] { return check_monotone(default_pool()); });

  add_merged(TheoremId::L2_2,
             {{"harmonic euclidean n=1",
               [] {
                 return check_linear_n1(
                     make_spec(1, "harmonic", "euclidean", "euclidean", 2.0, 10.0));
               }},
              {"exp hyperbolic n=1", [] {
                 return check_linear_n1(
                     make_spec(1, "exp", "hyperbolic", "hyperbolic", 0.5, 5.0));
               }}});

  add(TheoremId::L2_7, "pool",
      [] { return check_unique_continuation(default_pool()); });

  add_merged(
      TheoremId::T2_15,
      {{"harmonic euclidean",
        [] {
          return check_uniqueness(
              make_spec(2, "harmonic", "euclidean", "euclidean", 1.0, 4.0), 3.0, 1.5,
              1e-10);
        }},
       {"harmonic hyperbolic",
        [] {
          return check_uniqueness(
              make_spec(2, "harmonic", "hyperbolic", "hyperbolic", 1.0, 3.0), 2.0, 2.0,
              1e-10);
        }},
       {"harmonic hyperbolic to euclidean",
        [] {
          return check_uniqueness(
              make_spec(2, "harmonic", "hyperbolic", "euclidean", 1.0, 3.0), 2.0, 1.0,
              1e-10);
        }},
       {"quartic euclidean", [] {
          return check_uniqueness(make_spec(2, "p:4", "euclidean", "euclidean", 1.0, 4.0),
                                  3.0, 2.1, 1e-10);
        }}});

  add_merged(TheoremId::P2_24,
             {{"harmonic hyperbolic",
               [] {
                 return check_trichotomy(
                     make_spec(2, "harmonic", "hyperbolic", "hyperbolic", 1.0, 15.0, 25.0),
                     {0.8, 0.9, 1.0, 1.1, 1.2});
               }},
              {"exp hyperbolic", [] {
                 return check_trichotomy(
                     make_spec(2, "exp", "hyperbolic", "hyperbolic", 1.0, 15.0, 25.0),
                     {0.9, 1.0, 1.2});
               }}});

  add_merged(TheoremId::T3_1,
             {{"harmonic euclidean to hyperbolic n=2",
               [] {
                 return check_liouville_A(
                     make_spec(2, "harmonic", "euclidean", "hyperbolic", 1.0, 50.0, 20.0),
                     {0.1, 0.5, 1.0});
               }},
              {"harmonic euclidean to hyperbolic n=3",
               [] {
                 return check_liouville_A(
                     make_spec(3, "harmonic", "euclidean", "hyperbolic", 1.0, 50.0, 20.0),
                     {0.5, 1.0});
               }},
              {"exp euclidean n=2", [] {
                 return check_liouville_A(
                     make_spec(2, "exp", "euclidean", "euclidean", 1.0, 50.0),
                     {0.25, 1.0});
               }}});

  add_merged(TheoremId::P3_10,
             {{"exp hyperbolic n=2",
               [] {
                 return check_derivative_bound(
                     make_spec(2, "exp", "hyperbolic", "hyperbolic", 1.0, 20.0),
                     {0.5, 1.0, 1.2});
               }},
              {"exp hyperbolic n=3", [] {
                 return check_derivative_bound(
                     make_spec(3, "exp", "hyperbolic", "hyperbolic", 1.0, 20.0),
                     {0.5, 1.0});
               }}});

  add_merged(TheoremId::T3_13,
             {{"harmonic tanh to euclidean n=2",
               [] {
                 return check_liouville_flat(
                     make_spec(2, "harmonic", "tanh", "euclidean", 1.0, 50.0, 1e100),
                     {1.0, 2.0});
               }},
              {"harmonic tanh to euclidean n=3", [] {
                 return check_liouville_flat(
                     make_spec(3, "harmonic", "tanh", "euclidean", 1.0, 50.0, 1e100),
                     {1.0});
               }}});

  add(TheoremId::E4_1, "pool",
      [] { return check_energy_inequality(default_pool()); });

  add_merged(
      TheoremId::T4_4,
      {{"harmonic hyperbolic to euclidean n=2",
        [] {
          return check_decay(
              make_spec(2, "harmonic", "hyperbolic", "euclidean", 1.0, 20.0, 1e6, 1e-15),
              {0.5, 1.0});
        }},
       {"harmonic hyperbolic to euclidean n=3",
        [] {
          return check_decay(
              make_spec(3, "harmonic", "hyperbolic", "euclidean", 1.0, 20.0, 1e6, 1e-15),
              {1.0});
        }},
       {"exp hyperbolic to euclidean n=2", [] {
          return check_decay(
              make_spec(2, "exp", "hyperbolic", "euclidean", 1.0, 20.0, 1e6, 1e-15),
              {0.5, 1.0});
        }}});
  add(TheoremId::C4_6, "harmonic hyperbolic to euclidean n=2", [] {
    VerificationReport rep = check_decay(
        make_spec(2, "harmonic", "hyperbolic", "euclidean", 1.0, 20.0, 1e6, 1e-15),
        {0.5, 1.0});
    const bool bounded = rep.measured.count("rel_increment_max") != 0 &&
                         rep.measured.at("rel_increment_max") <= 0.1;
    return relabel(std::move(rep), TheoremId::C4_6, bounded);
  });

  const auto hyper = [](int n, std::vector<double> grid) {
    return check_hyperbolic_boundedness(
        make_spec(n, "harmonic", "hyperbolic", "hyperbolic", 1.0, 15.0, 25.0, 1e-15),
        grid);
  };
  add(TheoremId::L4_9, "harmonic hyperbolic n=2", [hyper] {
    VerificationReport rep = hyper(2, {0.9, 0.99, 1.0, 1.05});
    const bool ok = rep.measured.count("gap_ok") != 0 &&
                    rep.measured.at("gap_ok") == 1.0 &&
                    rep.measured.at("slope_ok") == 1.0;
    return relabel(std::move(rep), TheoremId::L4_9, ok);
  });
  add(TheoremId::L4_11, "harmonic hyperbolic n=3", [hyper] {
    VerificationReport rep = hyper(3, {0.9, 0.99});
    const bool fit_seen = rep.measured.count("theta_fit_ok") != 0;
    const bool ok = fit_seen && rep.measured.at("theta_fit_ok") == 1.0;
    const bool bad_fit =
        fit_seen && rep.measured.at("theta_r2_min") < kGoodFit;
    return relabel(std::move(rep), TheoremId::L4_11, ok, bad_fit,
                   "energy fit has R^2 below 0.99");
  });
  add(TheoremId::L4_13, "harmonic hyperbolic n=2", [hyper] {
    VerificationReport rep = hyper(2, {0.9, 1.0, 1.05});
    const bool ok = rep.measured.count("indeterminate_runs") != 0 &&
                    rep.measured.at("indeterminate_runs") == 0.0;
    return relabel(std::move(rep), TheoremId::L4_13, ok);
  });
  add(TheoremId::T4_14, "exp hyperbolic n=2", [] {
    VerificationReport rep = check_hyperbolic_boundedness(
        make_spec(2, "exp", "hyperbolic", "hyperbolic", 1.0, 20.0, 25.0, 1e-15),
        {0.9, 0.99});
    const bool ok = rep.measured.count("below_all_bounded") != 0 &&
                    rep.measured.at("below_all_bounded") == 1.0 &&
                    rep.measured.at("flat_increment_max") < kFlatTol &&
                    rep.measured.at("flat_slope_max") < kFlatTol;
    return relabel(std::move(rep), TheoremId::T4_14, ok);
  });

  return cat;
}

std::vector<VerificationReport> run_suite(const std::vector<CatalogEntry>& catalog,
                                          int workers,
                                          const std::vector<TheoremId>& only) {
  std::vector<const CatalogEntry*> selected;
  for (const auto& entry : catalog) {
    if (only.empty() ||
        std::find(only.begin(), only.end(), entry.theorem_id) != only.end())
      selected.push_back(&entry);
  }
  std::vector<VerificationReport> reports(selected.size());
  detail::parallel_for(selected.size(), workers, [&](std::size_t i) {
    VerificationReport rep = selected[i]->run();
    rep.theorem_id = selected[i]->theorem_id;
    if (rep.family.empty()) rep.family = selected[i]->family;
    reports[i] = std::move(rep);
  });
  return reports;
}

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
  nlohmann::json root;
  root["schema_version"] = 1;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& rep : reports) {
    nlohmann::json j;
    j["theorem"] = to_string(rep.theorem_id);
    j["family"] = rep.family;
    j["statement"] = rep.statement;
    j["verdict"] = to_string(rep.verdict);
    j["hypotheses_met"] = rep.hypotheses_met;
    j["conclusion_observed"] = rep.conclusion_observed;
    nlohmann::json hyps = nlohmann::json::array();
    for (const auto& h : rep.hypotheses)
      hyps.push_back({{"name", h.name}, {"satisfied", h.satisfied}, {"detail", h.detail}});
    j["hypotheses"] = std::move(hyps);
    nlohmann::json measured = nlohmann::json::object();
    for (const auto& [key, value] : rep.measured) measured[key] = value;
    j["measured"] = std::move(measured);
    j["note"] = rep.note;
    arr.push_back(std::move(j));
  }
  root["reports"] = std::move(arr);
  return root.dump(2);
}

}  // namespace fharmonic
