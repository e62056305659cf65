#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fharmonic/errors.hpp"
#include "fharmonic/field.hpp"
#include "fharmonic/profiles.hpp"
#include "fharmonic/shooting.hpp"
#include "fharmonic/solver.hpp"
#include "fharmonic/theorems.hpp"
#include "fharmonic/variational.hpp"

namespace py = pybind11;
using namespace fharmonic;

namespace {

ProblemSpec make_problem_spec(int n, const std::string& profile,
                              const std::string& warp_f, const std::string& warp_g,
                              double c, double r_max, const SolverConfig& tolerances) {
  ProblemSpec spec;
  spec.n = n;
  spec.profile = profile_from_name(profile);
  spec.f = warp_from_name(warp_f);
  spec.g = warp_from_name(warp_g);
  spec.c = c;
  spec.r_max = r_max;
  spec.tolerances = tolerances;
  return spec;
}

std::optional<TheoremId> theorem_by_name(const std::string& name) {
  static const TheoremId all[] = {
      TheoremId::L2_1,  TheoremId::L2_2,  TheoremId::L2_7,  TheoremId::T2_15,
      TheoremId::P2_24, TheoremId::T3_1,  TheoremId::P3_10, TheoremId::T3_13,
      TheoremId::E4_1,  TheoremId::T4_4,  TheoremId::C4_6,  TheoremId::L4_9,
      TheoremId::L4_11, TheoremId::L4_13, TheoremId::T4_14,
  };
  std::string canon = name;
  for (char& ch : canon)
    if (ch == '_') ch = '.';
  for (TheoremId id : all)
    if (canon == to_string(id)) return id;
  return std::nullopt;
}

}  // namespace

PYBIND11_MODULE(_fharmonic, m) {
  m.doc() = "Radial F-harmonic map laboratory: ODE solver, shooting, "
            "variational oracle and theorem verification";

  py::register_exception<DegenerateCoefficient>(m, "DegenerateCoefficientError");
  py::register_exception<ProfileOverflow>(m, "ProfileOverflowError");
  py::register_exception<NoBracket>(m, "NoBracketError");

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("eps_start", &SolverConfig::eps_start)
      .def_readwrite("rel_tol", &SolverConfig::rel_tol)
      .def_readwrite("abs_tol", &SolverConfig::abs_tol)
      .def_readwrite("max_steps", &SolverConfig::max_steps)
      .def_readwrite("blowup_threshold", &SolverConfig::blowup_threshold)
      .def_readwrite("tol_residual", &SolverConfig::tol_residual)
      .def_readwrite("max_step", &SolverConfig::max_step)
      .def("__repr__", [](const SolverConfig& c) {
        std::ostringstream os;
        os << "SolverConfig(eps_start=" << c.eps_start << ", rel_tol=" << c.rel_tol
           << ", abs_tol=" << c.abs_tol << ", max_steps=" << c.max_steps
           << ", blowup_threshold=" << c.blowup_threshold
           << ", tol_residual=" << c.tol_residual << ", max_step=" << c.max_step
           << ")";
        return os.str();
      });

  py::class_<ProblemSpec>(m, "ProblemSpec")
      .def(py::init(&make_problem_spec), py::arg("n") = 2,
           py::arg("profile") = "harmonic", py::arg("warp_f") = "euclidean",
           py::arg("warp_g") = "euclidean", py::arg("c") = 1.0,
           py::arg("r_max") = 10.0, py::arg("tolerances") = SolverConfig{})
      .def_readwrite("n", &ProblemSpec::n)
      .def_readwrite("c", &ProblemSpec::c)
      .def_readwrite("r_max", &ProblemSpec::r_max)
      .def_readwrite("tolerances", &ProblemSpec::tolerances)
      .def_property_readonly(
          "profile", [](const ProblemSpec& s) { return s.profile.label; })
      .def_property_readonly("warp_f",
                             [](const ProblemSpec& s) { return s.f.label; })
      .def_property_readonly("warp_g",
                             [](const ProblemSpec& s) { return s.g.label; })
      .def("__repr__", [](const ProblemSpec& s) {
        std::ostringstream os;
        os << "ProblemSpec(n=" << s.n << ", profile='" << s.profile.label
           << "', warp_f='" << s.f.label << "', warp_g='" << s.g.label
           << "', c=" << s.c << ", r_max=" << s.r_max << ")";
        return os.str();
      });

  m.def(
      "validate_spec",
      [](const ProblemSpec& spec) {
        std::vector<std::string> out;
        for (const auto& v : validate_spec(spec))
          out.push_back(v.condition + ": " + v.detail);
        return out;
      },
      py::arg("spec"),
      "Sample the admissibility conditions; returns a list of violations "
      "(empty when the spec is usable)");

  m.def(
      "radial_ricci",
      [](const std::string& warp, int n, double y) {
        return radial_ricci(warp_from_name(warp), n, y);
      },
      py::arg("warp"), py::arg("n"), py::arg("y"),
      "Radial curvature coefficient -(n-1) w''/w of a named warp");

  py::class_<TrajectoryNode>(m, "TrajectoryNode")
      .def_readonly("r", &TrajectoryNode::r)
      .def_readonly("alpha", &TrajectoryNode::alpha)
      .def_readonly("alpha_prime", &TrajectoryNode::alpha_prime)
      .def_readonly("theta", &TrajectoryNode::theta)
      .def_readonly("g_theta", &TrajectoryNode::g_theta)
      .def_readonly("residual", &TrajectoryNode::residual)
      .def("__repr__", [](const TrajectoryNode& n) {
        std::ostringstream os;
        os << "TrajectoryNode(r=" << n.r << ", alpha=" << n.alpha
           << ", alpha_prime=" << n.alpha_prime << ")";
        return os.str();
      });

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("nodes", &Trajectory::nodes)
      .def_readonly("accepted_steps", &Trajectory::accepted_steps)
      .def_readonly("rejected_steps", &Trajectory::rejected_steps)
      .def_property_readonly(
          "termination",
          [](const Trajectory& t) { return std::string(to_string(t.termination)); })
      .def("__len__", [](const Trajectory& t) { return t.nodes.size(); })
      .def("__repr__", [](const Trajectory& t) {
        std::ostringstream os;
        os << "Trajectory(" << to_string(t.termination) << ", " << t.nodes.size()
           << " nodes)";
        return os.str();
      });

  m.def("solve", py::overload_cast<const ProblemSpec&>(&solve), py::arg("spec"),
        "Integrate the profile equation from the regularized start",
        py::call_guard<py::gil_scoped_release>());
  m.def(
      "dense_eval",
      [](const Trajectory& t, double r) { return dense_eval(t, r); },
      py::arg("trajectory"), py::arg("r"),
      "Cubic Hermite evaluation of (alpha, alpha') between stored nodes");

  m.def(
      "energy_density",
      [](const ProblemSpec& spec, double r, double alpha, double alpha_prime) {
        return energy_density(spec, State{r, alpha, alpha_prime});
      },
      py::arg("spec"), py::arg("r"), py::arg("alpha"), py::arg("alpha_prime"));
  m.def(
      "alpha_second",
      [](const ProblemSpec& spec, double r, double alpha, double alpha_prime) {
        return alpha_second(spec, State{r, alpha, alpha_prime});
      },
      py::arg("spec"), py::arg("r"), py::arg("alpha"), py::arg("alpha_prime"));
  m.def(
      "residual",
      [](const ProblemSpec& spec, double r, double alpha, double alpha_prime,
         double alpha_second_value) {
        return residual(spec, State{r, alpha, alpha_prime}, alpha_second_value);
      },
      py::arg("spec"), py::arg("r"), py::arg("alpha"), py::arg("alpha_prime"),
      py::arg("alpha_second"),
      "Pointwise left-hand side of the equation; zero on exact solutions");

  py::class_<ShootingResult>(m, "ShootingResult")
      .def_readonly("c_star", &ShootingResult::c_star)
      .def_readonly("trajectory", &ShootingResult::trajectory)
      .def_readonly("iterations", &ShootingResult::iterations)
      .def_readonly("bracket_history", &ShootingResult::bracket_history)
      .def_readonly("residual_at_target", &ShootingResult::residual_at_target)
      .def_readonly("monotone_basis", &ShootingResult::monotone_basis)
      .def("__repr__", [](const ShootingResult& r) {
        std::ostringstream os;
        os << "ShootingResult(c_star=" << r.c_star << ", iterations=" << r.iterations
           << ")";
        return os.str();
      });

  m.def(
      "shoot",
      [](const ProblemSpec& spec, double r_target, double alpha_target,
         double match_tol) {
        ShootingOptions opts;
        opts.match_tol = match_tol;
        return shoot(spec, r_target, alpha_target, opts);
      },
      py::arg("spec"), py::arg("r_target"), py::arg("alpha_target"),
      py::arg("match_tol") = 1e-10,
      "Bisection on the slope c for alpha(r_target; c) = alpha_target",
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "monotonicity_scan",
      [](const ProblemSpec& spec, double r_target, const std::vector<double>& grid) {
        return monotonicity_scan(spec, r_target, grid);
      },
      py::arg("spec"), py::arg("r_target"), py::arg("c_grid"),
      py::call_guard<py::gil_scoped_release>());

  py::class_<DiscreteProblem>(m, "DiscreteProblem")
      .def(py::init<const ProblemSpec&, double, double, int, double, double>(),
           py::arg("spec"), py::arg("r_a"), py::arg("r_b"), py::arg("n_interior"),
           py::arg("alpha_a"), py::arg("alpha_b"))
      .def("energy", &DiscreteProblem::energy, py::arg("alpha_grid"))
      .def("gradient", &DiscreteProblem::gradient, py::arg("alpha_grid"))
      .def("linear_init", &DiscreteProblem::linear_init)
      .def("grid_point", &DiscreteProblem::grid_point, py::arg("j"));

  py::class_<MinimizeResult>(m, "MinimizeResult")
      .def_readonly("alpha", &MinimizeResult::alpha)
      .def_readonly("energy", &MinimizeResult::energy)
      .def_readonly("grad_norm", &MinimizeResult::grad_norm)
      .def_readonly("iterations", &MinimizeResult::iterations)
      .def_readonly("converged", &MinimizeResult::converged)
      .def("__repr__", [](const MinimizeResult& r) {
        std::ostringstream os;
        os << "MinimizeResult(converged=" << (r.converged ? "True" : "False")
           << ", energy=" << r.energy << ", grad_norm=" << r.grad_norm << ")";
        return os.str();
      });

  m.def(
      "minimize",
      [](const DiscreteProblem& prob, std::vector<double> init, double grad_tol,
         std::int64_t max_iters) {
        MinimizeOptions opts;
        opts.grad_tol = grad_tol;
        opts.max_iters = max_iters;
        return minimize(prob, std::move(init), opts);
      },
      py::arg("problem"), py::arg("init"), py::arg("grad_tol") = 1e-8,
      py::arg("max_iters") = MinimizeOptions{}.max_iters,
      "Projected gradient descent on the discrete energy",
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "run_verification",
      [](int workers, const std::vector<std::string>& only) {
        std::vector<TheoremId> ids;
        for (const auto& name : only) {
          const auto id = theorem_by_name(name);
          if (!id) throw std::invalid_argument("unknown checker \"" + name + "\"");
          ids.push_back(*id);
        }
        std::string json;
        {
          py::gil_scoped_release release;
          json = reports_to_json(run_suite(default_catalog(), workers, ids));
        }
        return json;
      },
      py::arg("workers") = 1, py::arg("only") = std::vector<std::string>{},
      "Run the verification catalog (optionally restricted to the named "
      "theorem ids) and return the JSON report document");

  m.def("theorem_ids", [] {
    std::vector<std::string> out;
    for (const char* name :
         {"L2.1", "L2.2", "L2.7", "T2.15", "P2.24", "T3.1", "P3.10", "T3.13",
          "E4.1", "T4.4", "C4.6", "L4.9", "L4.11", "L4.13", "T4.14"})
      out.emplace_back(name);
    return out;
  });
}
