#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fharmonic/cli.hpp"

namespace {

/// Flag storage for one subcommand; only flags the user actually passed are
/// copied onto the RunConfig, so the override order is defaults < config
/// file < flags.
struct Flags {
  std::string config;
  std::string out;
  int n = 0;
  std::string profile, warp_f, warp_g;
  double c = 0.0, r_max = 0.0;
  int workers = 0;
  // sweep
  double c_min = 0.0, c_max = 0.0;
  int c_count = 0;
  // shoot
  double r_target = 0.0, alpha_target = 0.0, match_tol = 0.0;
  // minimize
  double r_a = 0.0, r_b = 0.0, grad_tol = 0.0;
  int grid_n = 0;
  // verify
  std::vector<std::string> checkers;
};

void add_common_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON config file (flags override it)");
  sub->add_option("--out", f.out, "output directory");
  sub->add_option("--n", f.n, "domain dimension (n >= 1)");
  sub->add_option("--profile", f.profile, "density profile: harmonic | p:<value> | exp");
  sub->add_option("--warp-f", f.warp_f, "domain warp: euclidean | hyperbolic | tanh");
  sub->add_option("--warp-g", f.warp_g, "target warp: euclidean | hyperbolic | tanh");
  sub->add_option("--c", f.c, "initial slope at the origin (c >= 0)");
  sub->add_option("--r-max", f.r_max, "integration horizon");
  sub->add_option("--workers", f.workers,
                  "worker threads (default: FHARMONIC_WORKERS, then hardware)");
}

/// Build the final RunConfig for `sub`: start from defaults, layer the config
/// file, then every flag that was explicitly given.
int resolve_config(CLI::App* sub, const Flags& f, fharmonic::RunConfig& cfg) {
  const auto seen = [sub](const std::string& name) {
    const CLI::Option* opt = sub->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (seen("--config")) {
    if (auto err = fharmonic::load_config(f.config, cfg)) {
      std::cerr << "config error: " << *err << '\n';
      return fharmonic::kExitConfig;
    }
  }
  if (seen("--out")) cfg.out_dir = f.out;
  if (seen("--n")) cfg.n = f.n;
  if (seen("--profile")) cfg.profile = f.profile;
  if (seen("--warp-f")) cfg.warp_f = f.warp_f;
  if (seen("--warp-g")) cfg.warp_g = f.warp_g;
  if (seen("--c")) cfg.c = f.c;
  if (seen("--r-max")) cfg.r_max = f.r_max;
  if (seen("--workers")) cfg.workers = f.workers;
  if (seen("--c-min")) cfg.c_min = f.c_min;
  if (seen("--c-max")) cfg.c_max = f.c_max;
  if (seen("--c-count")) cfg.c_count = f.c_count;
  if (seen("--r-target")) cfg.r_target = f.r_target;
  if (seen("--alpha-target")) cfg.alpha_target = f.alpha_target;
  if (seen("--match-tol")) cfg.match_tol = f.match_tol;
  if (seen("--r-a")) cfg.r_a = f.r_a;
  if (seen("--r-b")) cfg.r_b = f.r_b;
  if (seen("--grid-n")) cfg.grid_n = f.grid_n;
  if (seen("--grad-tol")) cfg.grad_tol = f.grad_tol;
  if (seen("--checkers")) cfg.checkers = f.checkers;
  return -1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fharmonic: a numerical laboratory for rotationally symmetric "
               "F-harmonic maps between model manifolds"};
  app.require_subcommand(1);

  Flags flags;
  CLI::App* solve = app.add_subcommand("solve", "integrate one trajectory to CSV");
  add_common_flags(solve, flags);

  CLI::App* sweep = app.add_subcommand("sweep", "solve across a range of slopes c");
  add_common_flags(sweep, flags);
  sweep->add_option("--c-min", flags.c_min, "lowest slope");
  sweep->add_option("--c-max", flags.c_max, "highest slope");
  sweep->add_option("--c-count", flags.c_count, "number of slopes (>= 1)");

  CLI::App* shoot = app.add_subcommand(
      "shoot", "find c with alpha(r_target; c) = alpha_target by bisection");
  add_common_flags(shoot, flags);
  shoot->add_option("--r-target", flags.r_target, "matching radius");
  shoot->add_option("--alpha-target", flags.alpha_target, "value to match");
  shoot->add_option("--match-tol", flags.match_tol, "matching tolerance");

  CLI::App* minimize = app.add_subcommand(
      "minimize", "minimize the discrete energy with ODE boundary data");
  add_common_flags(minimize, flags);
  minimize->add_option("--r-a", flags.r_a, "left endpoint (> 0)");
  minimize->add_option("--r-b", flags.r_b, "right endpoint");
  minimize->add_option("--grid-n", flags.grid_n, "interior grid points (>= 8)");
  minimize->add_option("--grad-tol", flags.grad_tol, "gradient max-norm target");

  CLI::App* verify = app.add_subcommand(
      "verify", "run the verification catalog and write a JSON report");
  add_common_flags(verify, flags);
  verify->add_option("--checkers", flags.checkers,
                     "restrict to these theorem ids (e.g. T2.15 L4.13)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fharmonic::kExitConfig;
  }

  CLI::App* sub = app.get_subcommands().front();
  fharmonic::RunConfig cfg;
  const int early = resolve_config(sub, flags, cfg);
  if (early >= 0) return early;

  try {
    if (sub == solve) return fharmonic::cmd_solve(cfg);
    if (sub == sweep) return fharmonic::cmd_sweep(cfg);
    if (sub == shoot) return fharmonic::cmd_shoot(cfg);
    if (sub == minimize) return fharmonic::cmd_minimize(cfg);
    if (sub == verify) return fharmonic::cmd_verify(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return fharmonic::kExitConfig;
  }
  return fharmonic::kExitConfig;
}
