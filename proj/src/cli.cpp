#include "fharmonic/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "fharmonic/detail/parallel.hpp"
#include "fharmonic/errors.hpp"
#include "fharmonic/shooting.hpp"
#include "fharmonic/solver.hpp"
#include "fharmonic/theorems.hpp"
#include "fharmonic/variational.hpp"

namespace fs = std::filesystem;

namespace fharmonic {

namespace {

template <typename T>
void get_if(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

/// Materialize and validate the spec; returns a diagnostic on failure.
std::optional<std::string> try_spec(const RunConfig& cfg, ProblemSpec& spec) {
  try {
    spec = spec_from_config(cfg);
  } catch (const std::exception& e) {
    return std::string(e.what());
  }
  const std::vector<Violation> violations = validate_spec(spec);
  if (!violations.empty()) {
    std::string msg = "spec violates admissibility:";
    for (const auto& v : violations) msg += "\n  " + v.condition + ": " + v.detail;
    return msg;
  }
  return std::nullopt;
}

/// Create the output directory and open `name` inside it for binary writing
/// (binary keeps the line terminator a bare line feed everywhere).
std::optional<std::string> open_out(const RunConfig& cfg, const std::string& name,
                                    std::ofstream& out, std::string* full_path = nullptr) {
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) return "cannot create output directory " + cfg.out_dir + ": " + ec.message();
  const fs::path path = fs::path(cfg.out_dir) / name;
  out.open(path, std::ios::binary | std::ios::trunc);
  if (!out) return "cannot open " + path.string() + " for writing";
  if (full_path) *full_path = path.string();
  return std::nullopt;
}

void write_trajectory_rows(std::ofstream& out, const Trajectory& t) {
  out << "r,alpha,alpha_prime,theta,g_theta,residual\n";
  for (const auto& nd : t.nodes) {
    out << format_double(nd.r) << ',' << format_double(nd.alpha) << ','
        << format_double(nd.alpha_prime) << ',' << format_double(nd.theta) << ','
        << format_double(nd.g_theta) << ',' << format_double(nd.residual) << '\n';
  }
}

int config_error(const std::string& msg) {
  std::cerr << "config error: " << msg << '\n';
  return kExitConfig;
}

const TheoremId kAllTheorems[] = {
    TheoremId::L2_1,  TheoremId::L2_2,  TheoremId::L2_7,  TheoremId::T2_15,
    TheoremId::P2_24, TheoremId::T3_1,  TheoremId::P3_10, TheoremId::T3_13,
    TheoremId::E4_1,  TheoremId::T4_4,  TheoremId::C4_6,  TheoremId::L4_9,
    TheoremId::L4_11, TheoremId::L4_13, TheoremId::T4_14,
};

/// Accepts "T2.15" (canonical) and the underscore variant "T2_15".
std::optional<TheoremId> theorem_from_name(const std::string& name) {
  std::string canon = name;
  for (char& ch : canon)
    if (ch == '_') ch = '.';
  for (TheoremId id : kAllTheorems)
    if (canon == to_string(id)) return id;
  return std::nullopt;
}

}  // namespace

std::optional<std::string> load_config(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) return "cannot open config file: " + path;
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    return "config parse error in " + path + ": " + e.what();
  }
  if (!j.is_object()) return "config root must be a JSON object: " + path;
  try {
    get_if(j, "schema_version", cfg.schema_version);
    if (cfg.schema_version != 1)
      return "unsupported schema_version " + std::to_string(cfg.schema_version) +
             " (this build reads version 1)";
    get_if(j, "n", cfg.n);
    get_if(j, "profile", cfg.profile);
    get_if(j, "warp_f", cfg.warp_f);
    get_if(j, "warp_g", cfg.warp_g);
    get_if(j, "c", cfg.c);
    get_if(j, "r_max", cfg.r_max);
    if (j.contains("tolerances")) {
      const nlohmann::json& t = j.at("tolerances");
      get_if(t, "eps_start", cfg.tolerances.eps_start);
      get_if(t, "rel_tol", cfg.tolerances.rel_tol);
      get_if(t, "abs_tol", cfg.tolerances.abs_tol);
      get_if(t, "max_steps", cfg.tolerances.max_steps);
      get_if(t, "blowup_threshold", cfg.tolerances.blowup_threshold);
      get_if(t, "tol_residual", cfg.tolerances.tol_residual);
      get_if(t, "max_step", cfg.tolerances.max_step);
    }
    get_if(j, "c_min", cfg.c_min);
    get_if(j, "c_max", cfg.c_max);
    get_if(j, "c_count", cfg.c_count);
    get_if(j, "r_target", cfg.r_target);
    get_if(j, "alpha_target", cfg.alpha_target);
    get_if(j, "match_tol", cfg.match_tol);
    get_if(j, "r_a", cfg.r_a);
    get_if(j, "r_b", cfg.r_b);
    get_if(j, "grid_n", cfg.grid_n);
    get_if(j, "grad_tol", cfg.grad_tol);
    get_if(j, "checkers", cfg.checkers);
    get_if(j, "out_dir", cfg.out_dir);
    get_if(j, "workers", cfg.workers);
  } catch (const std::exception& e) {
    return "config field error in " + path + ": " + e.what();
  }
  return std::nullopt;
}

ProblemSpec spec_from_config(const RunConfig& cfg) {
  ProblemSpec spec;
  spec.n = cfg.n;
  spec.profile = profile_from_name(cfg.profile);
  spec.f = warp_from_name(cfg.warp_f);
  spec.g = warp_from_name(cfg.warp_g);
  spec.c = cfg.c;
  spec.r_max = cfg.r_max;
  spec.tolerances = cfg.tolerances;
  return spec;
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FHARMONIC_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v < 1024) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::string format_double(double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

int cmd_solve(const RunConfig& cfg) {
  ProblemSpec spec;
  if (auto err = try_spec(cfg, spec)) return config_error(*err);

  const Trajectory traj = solve(spec);

  std::ofstream out;
  if (auto err = open_out(cfg, "solve.csv", out)) return config_error(*err);
  write_trajectory_rows(out, traj);
  out.close();
  if (!out) return config_error("failed writing solve.csv");

  const auto& last = traj.nodes.back();
  std::cout << "solve: " << to_string(traj.termination)
            << " nodes=" << traj.nodes.size() << " r_end=" << format_double(last.r)
            << " alpha_end=" << format_double(last.alpha) << '\n';
  return traj.termination == Termination::ReachedHorizon ? kExitOk
                                                         : kExitSolverEvent;
}

int cmd_sweep(const RunConfig& cfg) {
  if (cfg.c_count < 1) return config_error("sweep count must be >= 1");
  if (!(cfg.c_min >= 0.0) || !(cfg.c_max >= cfg.c_min))
    return config_error("sweep range needs 0 <= c_min <= c_max");
  ProblemSpec spec;
  if (auto err = try_spec(cfg, spec)) return config_error(*err);
  const bool warp_equal_hyperbolic =
      spec.f.label == "hyperbolic" && spec.g.label == "hyperbolic";

  struct Row {
    double c = 0.0;
    double alpha = std::numeric_limits<double>::quiet_NaN();
    double alpha_prime = std::numeric_limits<double>::quiet_NaN();
    std::string termination;
    std::string map_class;
    bool failed = false;
  };
  std::vector<Row> rows(static_cast<std::size_t>(cfg.c_count));
  detail::parallel_for(
      rows.size(), resolve_workers(cfg.workers), [&](std::size_t i) {
        Row& row = rows[i];
        row.c = cfg.c_count == 1
                    ? cfg.c_min
                    : cfg.c_min + (cfg.c_max - cfg.c_min) *
                                      static_cast<double>(i) / (cfg.c_count - 1);
        try {
          ProblemSpec item = spec;
          item.c = row.c;
          const Trajectory t = solve(item);
          row.alpha = t.nodes.back().alpha;
          row.alpha_prime = t.nodes.back().alpha_prime;
          row.termination = to_string(t.termination);
          if (warp_equal_hyperbolic) row.map_class = to_string(classify_map(t));
        } catch (const std::exception&) {
          row.termination = "error";
          row.failed = true;
        }
      });

  std::ofstream out;
  if (auto err = open_out(cfg, "sweep.csv", out)) return config_error(*err);
  out << "c,alpha_at_rmax,alpha_prime_at_rmax,termination,class\n";
  std::size_t failures = 0;
  for (const auto& row : rows) {
    out << format_double(row.c) << ',' << format_double(row.alpha) << ','
        << format_double(row.alpha_prime) << ',' << row.termination << ','
        << row.map_class << '\n';
    if (row.failed) ++failures;
  }
  out.close();
  if (!out) return config_error("failed writing sweep.csv");

  std::cout << "sweep: " << rows.size() << " rows, " << failures << " failed\n";
  return failures == rows.size() ? kExitSolverEvent : kExitOk;
}

int cmd_shoot(const RunConfig& cfg) {
  ProblemSpec spec;
  if (auto err = try_spec(cfg, spec)) return config_error(*err);
  if (!(cfg.r_target > spec.tolerances.eps_start) || cfg.r_target > spec.r_max)
    return config_error("shoot needs eps_start < r_target <= r_max");
  if (!(cfg.alpha_target > 0.0)) return config_error("alpha_target must be > 0");

  ShootingOptions opts;
  opts.match_tol = cfg.match_tol;
  ShootingResult result;
  try {
    result = shoot(spec, cfg.r_target, cfg.alpha_target, opts);
  } catch (const NoBracket& e) {
    std::cerr << "shoot: " << e.what() << '\n';
    return kExitSolverEvent;
  } catch (const std::invalid_argument& e) {
    return config_error(e.what());
  } catch (const std::exception& e) {
    std::cerr << "shoot: " << e.what() << '\n';
    return kExitSolverEvent;
  }
  if (!result.monotone_basis)
    std::cerr << "shoot: warning: g'' < 0 sampled; the matched slope may not be "
                 "the only root\n";

  std::ofstream csv;
  if (auto err = open_out(cfg, "shoot_trajectory.csv", csv)) return config_error(*err);
  write_trajectory_rows(csv, result.trajectory);
  csv.close();
  if (!csv) return config_error("failed writing shoot_trajectory.csv");

  nlohmann::json j;
  j["schema_version"] = 1;
  j["c_star"] = result.c_star;
  j["iterations"] = result.iterations;
  j["residual_at_target"] = result.residual_at_target;
  j["monotone_basis"] = result.monotone_basis;
  nlohmann::json brackets = nlohmann::json::array();
  for (const auto& [lo, hi] : result.bracket_history) brackets.push_back({lo, hi});
  j["bracket_history"] = std::move(brackets);
  j["r_target"] = cfg.r_target;
  j["alpha_target"] = cfg.alpha_target;
  j["match_tol"] = cfg.match_tol;
  std::ofstream out;
  if (auto err = open_out(cfg, "shoot.json", out)) return config_error(*err);
  out << j.dump(2) << '\n';
  out.close();
  if (!out) return config_error("failed writing shoot.json");

  std::cout << "shoot: c_star=" << format_double(result.c_star)
            << " iterations=" << result.iterations
            << " residual=" << format_double(result.residual_at_target) << '\n';
  return kExitOk;
}

int cmd_minimize(const RunConfig& cfg) {
  ProblemSpec spec;
  if (auto err = try_spec(cfg, spec)) return config_error(*err);
  if (!(cfg.r_a > 0.0) || !(cfg.r_b > cfg.r_a))
    return config_error("minimize needs 0 < r_a < r_b");

  // Boundary data comes from the ODE trajectory, so the minimizer doubles as
  // a cross-check of the solver on [r_a, r_b].
  ProblemSpec ode = spec;
  ode.r_max = cfg.r_b;
  const Trajectory traj = solve(ode);
  if (traj.termination != Termination::ReachedHorizon) {
    std::cerr << "minimize: boundary trajectory ended in "
              << to_string(traj.termination) << " before r_b\n";
    return kExitSolverEvent;
  }
  const double alpha_a = dense_eval(traj, cfg.r_a).first;
  const double alpha_b = traj.nodes.back().alpha;

  MinimizeResult result;
  double max_dev = 0.0;
  std::vector<double> grid_r, grid_ode;
  try {
    const DiscreteProblem prob(spec, cfg.r_a, cfg.r_b, cfg.grid_n, alpha_a, alpha_b);
    MinimizeOptions opts;
    opts.grad_tol = cfg.grad_tol;
    result = minimize(prob, prob.linear_init(), opts);
    grid_r.reserve(static_cast<std::size_t>(cfg.grid_n) + 2);
    grid_ode.reserve(grid_r.capacity());
    for (int i = 0; i <= cfg.grid_n + 1; ++i) {
      const double r = prob.grid_point(i);
      grid_r.push_back(r);
      grid_ode.push_back(dense_eval(traj, r).first);
    }
    for (int i = 1; i <= cfg.grid_n; ++i)
      max_dev = std::max(max_dev, std::abs(result.alpha[static_cast<std::size_t>(i - 1)] -
                                           grid_ode[static_cast<std::size_t>(i)]));
  } catch (const std::invalid_argument& e) {
    return config_error(e.what());
  }

  std::ofstream csv;
  if (auto err = open_out(cfg, "minimize.csv", csv)) return config_error(*err);
  csv << "r,alpha,alpha_ode\n";
  for (int i = 0; i <= cfg.grid_n + 1; ++i) {
    const double a = (i == 0) ? alpha_a
                     : (i == cfg.grid_n + 1)
                         ? alpha_b
                         : result.alpha[static_cast<std::size_t>(i - 1)];
    csv << format_double(grid_r[static_cast<std::size_t>(i)]) << ','
        << format_double(a) << ','
        << format_double(grid_ode[static_cast<std::size_t>(i)]) << '\n';
  }
  csv.close();
  if (!csv) return config_error("failed writing minimize.csv");

  nlohmann::json j;
  j["schema_version"] = 1;
  j["energy"] = result.energy;
  j["grad_norm"] = result.grad_norm;
  j["iterations"] = result.iterations;
  j["converged"] = result.converged;
  j["max_dev_from_ode"] = max_dev;
  j["r_a"] = cfg.r_a;
  j["r_b"] = cfg.r_b;
  j["grid_n"] = cfg.grid_n;
  j["alpha_a"] = alpha_a;
  j["alpha_b"] = alpha_b;
  std::ofstream out;
  if (auto err = open_out(cfg, "minimize.json", out)) return config_error(*err);
  out << j.dump(2) << '\n';
  out.close();
  if (!out) return config_error("failed writing minimize.json");

  std::cout << "minimize: converged=" << (result.converged ? "yes" : "no")
            << " energy=" << format_double(result.energy)
            << " grad_norm=" << format_double(result.grad_norm)
            << " max_dev_from_ode=" << format_double(max_dev) << '\n';
  return result.converged ? kExitOk : kExitSolverEvent;
}

int cmd_verify(const RunConfig& cfg) {
  std::vector<TheoremId> only;
  for (const auto& name : cfg.checkers) {
    const auto id = theorem_from_name(name);
    if (!id) return config_error("unknown checker \"" + name + "\"");
    only.push_back(*id);
  }

  const std::vector<CatalogEntry> catalog = default_catalog();
  const std::vector<VerificationReport> reports =
      run_suite(catalog, resolve_workers(cfg.workers), only);

  std::ofstream out;
  if (auto err = open_out(cfg, "verify.json", out)) return config_error(*err);
  out << reports_to_json(reports) << '\n';
  out.close();
  if (!out) return config_error("failed writing verify.json");

  bool inconsistent = false;
  for (const auto& rep : reports) {
    std::cout << to_string(rep.theorem_id) << " [" << rep.family
              << "]: " << to_string(rep.verdict) << '\n';
    if (rep.verdict == Verdict::Inconsistent) inconsistent = true;
    if (rep.verdict == Verdict::Inconclusive)
      std::cerr << "verify: warning: " << to_string(rep.theorem_id) << " ["
                << rep.family << "] is inconclusive: " << rep.note << '\n';
  }
  return inconsistent ? kExitInconsistent : kExitOk;
}

}  // namespace fharmonic
