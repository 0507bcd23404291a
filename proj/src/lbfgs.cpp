#include "lbfgs.hpp"

#include <cmath>
#include <deque>

namespace sicq::detail {

LbfgsResult minimize_lbfgs(const LbfgsProblem& problem, Eigen::VectorXd x0, std::size_t max_iters,
                           std::size_t memory) {
  LbfgsResult out;
  Eigen::VectorXd x = std::move(x0);
  if (problem.retract) problem.retract(x);
  Eigen::VectorXd g(x.size());
  double f = problem.objective(x, g);

  std::deque<Eigen::VectorXd> s_hist;
  std::deque<Eigen::VectorXd> y_hist;
  std::deque<double> rho_hist;
  std::vector<double> alpha(memory);

  Eigen::VectorXd x_new(x.size());
  Eigen::VectorXd g_new(x.size());

  std::size_t iter = 0;
  while (iter < max_iters) {
    if (problem.done && problem.done(x)) break;
    if (g.squaredNorm() == 0.0) break;

    // Two-loop recursion.
    Eigen::VectorXd dir = -g;
    const std::size_t k = s_hist.size();
    for (std::size_t i = k; i-- > 0;) {
      alpha[i] = rho_hist[i] * s_hist[i].dot(dir);
      dir -= alpha[i] * y_hist[i];
    }
    if (k > 0) {
      dir *= s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
    } else {
      dir /= std::max(1.0, g.norm());
    }
    for (std::size_t i = 0; i < k; ++i) {
      const double beta = rho_hist[i] * y_hist[i].dot(dir);
      dir += (alpha[i] - beta) * s_hist[i];
    }

    double slope = g.dot(dir);
    if (!(slope < 0.0)) {
      // Lost descent; restart from steepest descent.
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      dir = -g / std::max(1.0, g.norm());
      slope = g.dot(dir);
    }

    double step = 1.0;
    bool accepted = false;
    double f_new = f;
    for (int tries = 0; tries < 60; ++tries) {
      x_new = x + step * dir;
      if (problem.retract) problem.retract(x_new);
      f_new = problem.objective(x_new, g_new);
      if (std::isfinite(f_new) && f_new <= f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    ++iter;
    if (!accepted || f_new >= f) {
      if (s_hist.empty()) {
        out.stalled = true;
        break;
      }
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      continue;
    }

    Eigen::VectorXd s = x_new - x;
    Eigen::VectorXd y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-300 * std::max(1.0, s.squaredNorm())) {
      if (s_hist.size() == memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
    }
    x.swap(x_new);
    g.swap(g_new);
    f = f_new;
  }

  out.x = std::move(x);
  out.value = f;
  out.iterations = iter;
  return out;
}

}  // namespace sicq::detail
