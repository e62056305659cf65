#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fharmonic/shooting.hpp"
#include "fharmonic/solver.hpp"

namespace fharmonic {

/// Structural statements the suite can probe at desk scale.
enum class TheoremId {
  L2_1,   ///< slopes of nonzero solutions stay positive
  L2_2,   ///< n = 1 forces the linear map a = c r
  L2_7,   ///< near-origin order: a = O(r^k) with k > (n-1)/2 + 1 forces a == 0
  T2_15,  ///< boundary-value uniqueness when g'' >= 0
  P2_24,  ///< warp-equal case: trichotomy against the identity a = r
  T3_1,   ///< bounded f' + strong g-convexity: no bounded nonzero maps
  P3_10,  ///< g = sinh with controlled f'/f and G' >= c0 G: slope stays bounded
  T3_13,  ///< flat-ish f (pinched between constants): slope keeps a floor
  E4_1,   ///< energy-derivative inequality along trajectories
  T4_4,   ///< rapidly opening f: slope decays like f^(eps-1)
  C4_6,   ///< f >= C r^s, s > 1: every solution is bounded
  L4_9,   ///< once below the identity with slope < 1 past (ln 3)/2: stays so
  L4_11,  ///< below-identity warp-equal solutions: energy decays exponentially
  L4_13,  ///< warp-equal dichotomy: bounded or the identity
  T4_14,  ///< warp-equal: a(r0) < r0 at some r0 > (ln 3)/2 forces boundedness
};

const char* to_string(TheoremId id);

enum class Verdict {
  Consistent,        ///< hypotheses sampled true, conclusion observed
  Inconsistent,      ///< hypotheses sampled true, conclusion failed
  HypothesesNotMet,  ///< the spec does not satisfy the assumptions
  Inconclusive,      ///< data cannot decide (bad fit, uninformative tolerance)
};

const char* to_string(Verdict v);

/// One sampled hypothesis with its outcome.
struct HypothesisSample {
  std::string name;
  bool satisfied = false;
  std::string detail;
};

/// Outcome of one checker run.  `measured` carries the quantitative
/// observations (fit slopes, floors, gaps ...) keyed by stable names; `note`
/// records finite-horizon caveats.
struct VerificationReport {
  TheoremId theorem_id = TheoremId::L2_1;
  std::string family;  ///< label of the spec family that was probed
  std::string statement;
  std::vector<HypothesisSample> hypotheses;
  bool hypotheses_met = false;
  bool conclusion_observed = false;
  std::map<std::string, double> measured;
  Verdict verdict = Verdict::Inconclusive;
  std::string note;
};

/// Desk-scale map classification (used by sweeps and the dichotomy checks).
enum class MapClass {
  Bounded,        ///< below the identity with flat tail (converged alpha)
  Identity,       ///< a == r within tolerance
  AboveIdentity,  ///< strictly above the identity (unbounded in observation)
  Indeterminate,  ///< none of the above at this horizon
};

const char* to_string(MapClass c);

/// Classify a warp-equal trajectory against the identity map.
MapClass classify_map(const Trajectory& traj);

// Checkers --------------------------------------------------------------------
// Every checker reports HypothesesNotMet instead of refusing, and downgrades
// to Inconclusive when its evidence is numerically uninformative (fit
// R^2 < 0.99, tolerance too loose to discriminate).

/// L2_1: alpha' > 0 at every node of every c > 0 trajectory.
VerificationReport check_monotone(const std::vector<Trajectory>& pool);

/// L2_2: for n = 1 the solution is the linear map a = c r (closed form and
/// pointwise residual agree).
VerificationReport check_linear_n1(const ProblemSpec& spec);

/// L2_7: fitted near-origin exponent of each c > 0 run stays near 1
/// (strictly below the critical order (n-1)/2 + 1), and c = 0 gives the zero
/// map; fits with R^2 < 0.99 are Inconclusive.
VerificationReport check_unique_continuation(const std::vector<Trajectory>& pool);

/// T2_15: two shooting solves from independent bracket initializations agree
/// on c* within 10 * match_tol (g'' >= 0 sampled).  Tolerances too loose to
/// discriminate downgrade to Inconclusive.
VerificationReport check_uniqueness(const ProblemSpec& spec, double r_target,
                                    double alpha_target, double match_tol);

/// P2_24: warp-equal runs stay strictly below / on / strictly above the
/// identity map according to c < 1 / c = 1 / c > 1, at every node.
VerificationReport check_trichotomy(const ProblemSpec& base,
                                    const std::vector<double>& c_grid);

/// T3_1: under bounded f' and g'^2 - g g'' >= c^2 > 0 (plus the profile
/// growth alternatives), every c > 0 run leaves the bounded window
/// (alpha > 10 or blow-up) before the horizon.
VerificationReport check_liouville_A(const ProblemSpec& base,
                                     const std::vector<double>& c_grid);

/// P3_10: g = sinh, 0 <= f'/f <= a on the observation window and
/// dG/dx >= c0 G: tail-half slope maximum stays below
/// max(2, sqrt(2/c0)) + 0.5.
VerificationReport check_derivative_bound(const ProblemSpec& base,
                                          const std::vector<double>& c_grid);

/// T3_13: f pinched between positive constants with 0 <= f' <= C1 (tail),
/// g' bounded away from 0, dG/dx <= C0 G: the slope of every c > 0 run keeps
/// a positive floor, so alpha grows without bound.
VerificationReport check_liouville_flat(const ProblemSpec& base,
                                        const std::vector<double>& c_grid);

/// E4_1: along trajectories the energy derivative obeys
/// theta' * A = G * W exactly (algebra) and theta' <= W wherever W >= 0,
/// where W = (n-1) { 2 g g' a'/f^2 - (f'/f)[g^2/f^2 + a'^2] }.
VerificationReport check_energy_inequality(const std::vector<Trajectory>& pool);

/// T4_4 + C4_6: rapidly opening f (f' -> infinity sampled) with 0 < g' <= a:
/// fitted slope of ln a' against ln f over the tail third is <= eps - 1
/// (eps = 0.1, slack 0.05), and alpha has a flat tail (boundedness).
VerificationReport check_decay(const ProblemSpec& base,
                               const std::vector<double>& c_grid);

/// L4_9 + L4_11 + L4_13 + T4_14: warp-equal hyperbolic families.  Below the
/// identity past the gate (ln 3)/2 the slope stays < 1 and the gap persists;
/// below-identity runs are Bounded with exponentially decaying energy; the
/// class of every run is Bounded, Identity or AboveIdentity.
VerificationReport check_hyperbolic_boundedness(const ProblemSpec& base,
                                                const std::vector<double>& c_grid);

// Suite -----------------------------------------------------------------------

/// One entry of the verification catalog: a checker bound to its canonical
/// spec family.
struct CatalogEntry {
  TheoremId theorem_id;
  std::string family;  ///< short label of the spec family
  /// Checker closure; executed by run_suite (possibly concurrently).
  std::function<VerificationReport()> run;
};

/// The canonical families for every checker.  Guarantees at least 30
/// distinct c > 0 trajectories across n in {2, 3, 5}.
std::vector<CatalogEntry> default_catalog();

/// Execute catalog entries (all of them, or only those whose theorem_id is
/// listed in `only`) across `workers` threads.  Reports come back in catalog
/// order regardless of scheduling.
std::vector<VerificationReport> run_suite(const std::vector<CatalogEntry>& catalog,
                                          int workers = 1,
                                          const std::vector<TheoremId>& only = {});

/// Stable JSON rendering of reports (schema_version 1).
std::string reports_to_json(const std::vector<VerificationReport>& reports);

}  // namespace fharmonic
