#include "oada/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

namespace oada {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

class Evaluator {
 public:
  explicit Evaluator(const Objective& f) : f_(f) {}

  double operator()(const VectorXd& x, VectorXd& g) {
    g.resize(x.size());
    const double v = f_(std::span<const double>(x.data(), x.size()), std::span<double>(g.data(), g.size()));
    ++count_;
    if (std::isnan(v) || !g.allFinite()) throw std::domain_error("objective returned NaN");
    if (v < best_f_) {
      best_f_ = v;
      best_x_ = x;
      best_g_ = g;
    }
    return v;
  }

  int count() const { return count_; }
  double best_f() const { return best_f_; }
  const VectorXd& best_x() const { return best_x_; }
  const VectorXd& best_g() const { return best_g_; }

 private:
  const Objective& f_;
  int count_ = 0;
  double best_f_ = std::numeric_limits<double>::infinity();
  VectorXd best_x_, best_g_;
};

// Minimizer of the cubic through (a, fa, da) and (b, fb, db); NaN if none.
double cubic_min(double a, double fa, double da, double b, double fb, double db) {
  const double d1 = da + db - 3.0 * (fa - fb) / (a - b);
  const double disc = d1 * d1 - da * db;
  if (disc < 0.0) return std::numeric_limits<double>::quiet_NaN();
  const double d2 = std::copysign(std::sqrt(disc), b - a);
  return b - (b - a) * (db + d2 - d1) / (db - da + 2.0 * d2);
}

struct LineSearchResult {
  bool ok = false;
  double alpha = 0.0;
  double f = 0.0;
  VectorXd g;
};

LineSearchResult strong_wolfe(Evaluator& eval, const VectorXd& x, double f0, const VectorXd& g0,
                              const VectorXd& d, double alpha_init, const MinimizeOptions& opt) {
  const double dphi0 = g0.dot(d);
  int trials = 0;
  VectorXd g;
  auto phi = [&](double alpha, double& dphi) {
    ++trials;
    const double v = eval(x + alpha * d, g);
    dphi = g.dot(d);
    return v;
  };
  auto armijo_fails = [&](double alpha, double v) { return v > f0 + opt.c1 * alpha * dphi0; };
  auto curvature_ok = [&](double dphi) { return std::abs(dphi) <= -opt.c2 * dphi0; };

  auto zoom = [&](double lo, double f_lo, double d_lo, double hi, double f_hi,
                  double d_hi) -> LineSearchResult {
    while (trials < opt.max_line_search) {
      const double left = std::min(lo, hi), right = std::max(lo, hi);
      const double width = right - left;
      double alpha = cubic_min(lo, f_lo, d_lo, hi, f_hi, d_hi);
      if (!std::isfinite(alpha) || alpha < left + 0.1 * width || alpha > right - 0.1 * width)
        alpha = 0.5 * (lo + hi);
      double d_alpha = 0.0;
      const double f_alpha = phi(alpha, d_alpha);
      if (armijo_fails(alpha, f_alpha) || f_alpha >= f_lo) {
        hi = alpha;
        f_hi = f_alpha;
        d_hi = d_alpha;
      } else {
        if (curvature_ok(d_alpha)) return {true, alpha, f_alpha, g};
        if (d_alpha * (hi - lo) >= 0.0) {
          hi = lo;
          f_hi = f_lo;
          d_hi = d_lo;
        }
        lo = alpha;
        f_lo = f_alpha;
        d_lo = d_alpha;
      }
      if (std::abs(hi - lo) < 1e-16 * std::max(1.0, std::abs(lo))) break;
    }
    return {};
  };

  double alpha_prev = 0.0, f_prev = f0, d_prev = dphi0;
  double alpha = alpha_init;
  for (int i = 0; trials < opt.max_line_search; ++i) {
    double d_alpha = 0.0;
    const double f_alpha = phi(alpha, d_alpha);
    if (armijo_fails(alpha, f_alpha) || (i > 0 && f_alpha >= f_prev))
      return zoom(alpha_prev, f_prev, d_prev, alpha, f_alpha, d_alpha);
    if (curvature_ok(d_alpha)) return {true, alpha, f_alpha, g};
    if (d_alpha >= 0.0) return zoom(alpha, f_alpha, d_alpha, alpha_prev, f_prev, d_prev);
    alpha_prev = alpha;
    f_prev = f_alpha;
    d_prev = d_alpha;
    alpha *= 2.0;
  }
  return {};
}

OptimizeResult bfgs(const Objective& objective, const VectorXd& x0, const MinimizeOptions& opt) {
  Evaluator eval(objective);
  const Eigen::Index n = x0.size();
  VectorXd x = x0, g;
  double f = eval(x, g);

  OptimizeResult res;
  auto finish = [&](bool converged, std::string message) {
    // Line-search probes may have found a lower value than the last iterate.
    if (eval.best_f() < f) {
      x = eval.best_x();
      g = eval.best_g();
      f = eval.best_f();
    }
    res.theta_opt.assign(x.data(), x.data() + n);
    res.objective_value = f;
    res.n_evaluations = eval.count();
    res.gradient_norm = n ? g.lpNorm<Eigen::Infinity>() : 0.0;
    res.converged = converged || res.gradient_norm <= opt.gtol;
    res.message = res.converged ? "converged" : std::move(message);
    return res;
  };

  if (n == 0 || g.lpNorm<Eigen::Infinity>() <= opt.gtol) return finish(true, "");

  MatrixXd hinv = MatrixXd::Identity(n, n);
  bool scaled = false;
  for (int iter = 0; iter < opt.max_iter; ++iter) {
    res.n_iterations = iter + 1;
    VectorXd d = -hinv * g;
    if (g.dot(d) >= 0.0) {
      hinv.setIdentity();
      scaled = false;
      d = -g;
    }
    auto ls = strong_wolfe(eval, x, f, g, d, 1.0, opt);
    if (!ls.ok) return finish(false, "line search failed");
    const VectorXd s = ls.alpha * d;
    const VectorXd y = ls.g - g;
    x += s;
    f = ls.f;
    g = ls.g;
    if (g.lpNorm<Eigen::Infinity>() <= opt.gtol) return finish(true, "");

    const double ys = y.dot(s);
    if (ys > 1e-300) {
      if (!scaled) {
        hinv *= ys / y.squaredNorm();
        scaled = true;
      }
      const double rho = 1.0 / ys;
      const VectorXd hy = hinv * y;
      // (I - rho s y^T) H (I - rho y s^T) + rho s s^T, expanded.
      hinv += (rho * rho * y.dot(hy) + rho) * (s * s.transpose()) -
              rho * (hy * s.transpose() + s * hy.transpose());
    }
  }
  return finish(false, "iteration limit reached");
}

}  // namespace

OptimizeResult minimize(const Objective& objective, std::vector<double> theta0,
                        const MinimizeOptions& options) {
  const VectorXd x0 = Eigen::Map<const VectorXd>(theta0.data(), theta0.size());
  OptimizeResult best = bfgs(objective, x0, options);
  if (options.restarts <= 0 || theta0.empty()) return best;

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> noise(0.0, options.restart_scale);
  int total_evals = best.n_evaluations;
  for (int r = 0; r < options.restarts; ++r) {
    VectorXd start = Eigen::Map<const VectorXd>(best.theta_opt.data(), best.theta_opt.size());
    for (Eigen::Index k = 0; k < start.size(); ++k) start[k] += noise(rng);
    OptimizeResult trial = bfgs(objective, start, options);
    total_evals += trial.n_evaluations;
    if (trial.objective_value < best.objective_value) best = std::move(trial);
  }
  best.n_evaluations = total_evals;
  return best;
}

}  // namespace oada
