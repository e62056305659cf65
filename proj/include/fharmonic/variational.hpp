#pragma once

#include <vector>

#include "fharmonic/profiles.hpp"

namespace fharmonic {

/// Midpoint-rule discretization of the reduced energy
///   E[a] = integral_{r_a}^{r_b} F(theta(r)) f(r)^(n-1) dr
/// on a uniform grid r_i = r_a + i h, i = 0..N+1, h = (r_b-r_a)/(N+1),
/// with Dirichlet data a_0 = alpha_a, a_{N+1} = alpha_b and the N interior
/// values as unknowns.  Per cell,
///   theta_{i+1/2} = (1/2) [ ((a_{i+1}-a_i)/h)^2
///                           + (n-1) g(a_{i+1/2})^2 / f(r_{i+1/2})^2 ].
class DiscreteProblem {
public:
  DiscreteProblem(const ProblemSpec& spec, double r_a, double r_b, int n_interior,
                  double alpha_a, double alpha_b);

  /// E at the interior vector (size must be n_interior()).
  double energy(const std::vector<double>& alpha_interior) const;

  /// Exact gradient of energy() w.r.t. the interior values.
  std::vector<double> gradient(const std::vector<double>& alpha_interior) const;

  int n_interior() const { return n_; }
  double h() const { return h_; }
  double r_a() const { return r_a_; }
  double r_b() const { return r_b_; }
  double alpha_a() const { return alpha_a_; }
  double alpha_b() const { return alpha_b_; }
  const ProblemSpec& spec() const { return spec_; }

  /// Linear interpolant of the boundary data (the default starting point).
  std::vector<double> linear_init() const;
  /// Interior grid point r_j, j = 1..N.
  double grid_point(int j) const { return r_a_ + j * h_; }

private:
  ProblemSpec spec_;
  double r_a_, r_b_, alpha_a_, alpha_b_, h_;
  int n_;
  // cached cell-midpoint geometry (the r-grid never changes)
  std::vector<double> f_mid_;       // f(r_{i+1/2})
  std::vector<double> weight_mid_;  // f(r_{i+1/2})^(n-1) * h
};

double discrete_energy(const DiscreteProblem& prob,
                       const std::vector<double>& alpha_interior);
std::vector<double> discrete_gradient(const DiscreteProblem& prob,
                                      const std::vector<double>& alpha_interior);

struct MinimizeOptions {
  double grad_tol = 1e-8;        ///< stop when max-norm of gradient is below
  std::int64_t max_iters = 2000000;
};

/// Outcome of the projected descent.  Non-convergence is reported through
/// `converged`, never thrown.
struct MinimizeResult {
  std::vector<double> alpha;  ///< interior values at the last iterate
  double energy = 0.0;
  double grad_norm = 0.0;     ///< max-norm of the gradient at the last iterate
  std::int64_t iterations = 0;
  bool converged = false;
};

/// Projected gradient descent with Armijo backtracking (halving, sufficient
/// decrease parameter 1e-4).  The trial step is seeded with the
/// Barzilai-Borwein secant estimate and the sufficient-decrease comparison
/// carries a machine-precision allowance so the line search stays decisive
/// once energy differences reach the roundoff floor.  Negative trial values
/// are projected to 0.
MinimizeResult minimize(const DiscreteProblem& prob, std::vector<double> init,
                        const MinimizeOptions& opts = {});

}  // namespace fharmonic
