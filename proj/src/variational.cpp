#include "fharmonic/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fharmonic {

DiscreteProblem::DiscreteProblem(const ProblemSpec& spec, double r_a, double r_b,
                                 int n_interior, double alpha_a, double alpha_b)
    : spec_(spec), r_a_(r_a), r_b_(r_b), alpha_a_(alpha_a), alpha_b_(alpha_b),
      n_(n_interior) {
  if (!(r_b > r_a) || !(r_a > 0.0)) {
    throw std::invalid_argument("discrete window needs 0 < r_a < r_b");
  }
  if (n_ < 8) {
    throw std::invalid_argument(
        "discrete window needs at least 8 interior points for the quadrature "
        "to be meaningful");
  }
  h_ = (r_b_ - r_a_) / (n_ + 1);
  f_mid_.resize(n_ + 1);
  weight_mid_.resize(n_ + 1);
  for (int i = 0; i <= n_; ++i) {
    double r_mid = r_a_ + (i + 0.5) * h_;
    f_mid_[i] = spec_.f.value(r_mid);
    weight_mid_[i] = std::pow(f_mid_[i], spec_.n - 1) * h_;
  }
}

std::vector<double> DiscreteProblem::linear_init() const {
  std::vector<double> out(n_);
  for (int j = 1; j <= n_; ++j) {
    out[j - 1] = alpha_a_ + (alpha_b_ - alpha_a_) * j / (n_ + 1);
  }
  return out;
}

double DiscreteProblem::energy(const std::vector<double>& a) const {
  if (static_cast<int>(a.size()) != n_) {
    throw std::invalid_argument("interior vector has wrong size");
  }
  const double nm1 = spec_.n - 1;
  double E = 0.0;
  for (int i = 0; i <= n_; ++i) {
    const double left = i == 0 ? alpha_a_ : a[i - 1];
    const double right = i == n_ ? alpha_b_ : a[i];
    const double slope = (right - left) / h_;
    const double a_mid = 0.5 * (left + right);
    const double gm = spec_.g.value(a_mid);
    const double theta =
        0.5 * (slope * slope + nm1 * gm * gm / (f_mid_[i] * f_mid_[i]));
    E += spec_.profile.F(theta) * weight_mid_[i];
  }
  return E;
}

std::vector<double> DiscreteProblem::gradient(const std::vector<double>& a) const {
  if (static_cast<int>(a.size()) != n_) {
    throw std::invalid_argument("interior vector has wrong size");
  }
  const double nm1 = spec_.n - 1;
  // per cell i: d theta/d right = slope/h + (n-1) g g'/(2 f^2),
  //             d theta/d left  = -slope/h + (n-1) g g'/(2 f^2)
  std::vector<double> grad(n_, 0.0);
  for (int i = 0; i <= n_; ++i) {
    const double left = i == 0 ? alpha_a_ : a[i - 1];
    const double right = i == n_ ? alpha_b_ : a[i];
    const double slope = (right - left) / h_;
    const double a_mid = 0.5 * (left + right);
    const double gm = spec_.g.value(a_mid);
    const double gpm = spec_.g.d1(a_mid);
    const double f2 = f_mid_[i] * f_mid_[i];
    const double theta = 0.5 * (slope * slope + nm1 * gm * gm / f2);
    const double GF = spec_.profile.G(theta) * weight_mid_[i];
    const double cross = nm1 * gm * gpm / (2.0 * f2);
    if (i > 0) grad[i - 1] += GF * (-slope / h_ + cross);
    if (i < n_) grad[i] += GF * (slope / h_ + cross);
  }
  return grad;
}

double discrete_energy(const DiscreteProblem& prob, const std::vector<double>& a) {
  return prob.energy(a);
}

std::vector<double> discrete_gradient(const DiscreteProblem& prob,
                                      const std::vector<double>& a) {
  return prob.gradient(a);
}

namespace {

double max_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

MinimizeResult minimize(const DiscreteProblem& prob, std::vector<double> init,
                        const MinimizeOptions& opts) {
  MinimizeResult res;
  if (static_cast<int>(init.size()) != prob.n_interior()) {
    throw std::invalid_argument("init vector has wrong size");
  }
  for (double& v : init) v = std::max(v, 0.0);

  std::vector<double> x = std::move(init);
  double E = prob.energy(x);
  std::vector<double> grad = prob.gradient(x);
  double step = 1.0;

  std::vector<double> x_new(x.size()), grad_new(x.size());
  const double eps = std::numeric_limits<double>::epsilon();

  for (res.iterations = 0; res.iterations < opts.max_iters; ++res.iterations) {
    res.grad_norm = max_norm(grad);
    if (res.grad_norm < opts.grad_tol) break;

    // Armijo backtracking from the Barzilai-Borwein trial step; negatives are
    // projected to 0 and the sufficient-decrease test carries a roundoff
    // allowance so it stays decisive once |E' - E| reaches the noise floor
    double t = std::clamp(step, 1e-12, 1e12);
    const double noise = 8.0 * eps * std::max(std::abs(E), 1.0);
    bool accepted = false;
    double E_new = E;
    while (t >= 1e-18) {
      double descent = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        x_new[i] = std::max(x[i] - t * grad[i], 0.0);
        descent += grad[i] * (x_new[i] - x[i]);
      }
      E_new = prob.energy(x_new);
      if (E_new <= E + 1e-4 * descent + noise) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;  // line search exhausted: report non-convergence

    grad_new = prob.gradient(x_new);

    // secant (BB1) estimate for the next trial step
    double sty = 0.0, sts = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double s = x_new[i] - x[i];
      sty += s * (grad_new[i] - grad[i]);
      sts += s * s;
    }
    step = sty > 0.0 ? sts / sty : 2.0 * t;

    x.swap(x_new);
    grad.swap(grad_new);
    E = E_new;
  }

  res.alpha = std::move(x);
  res.energy = E;
  res.grad_norm = max_norm(grad);
  res.converged = res.grad_norm < opts.grad_tol;
  return res;
}

}  // namespace fharmonic
