#pragma once

#include <cstddef>
#include <functional>

#include <Eigen/Dense>

namespace sicq::detail {

// Limited-memory BFGS with Armijo backtracking. The objective writes its
// gradient into the second argument and returns the value. `retract` is
// applied to every accepted iterate (the objectives used here are invariant
// under it, e.g. per-block renormalisation). `done` is polled after each
// accepted step.
struct LbfgsProblem {
  std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)> objective;
  std::function<void(Eigen::VectorXd&)> retract;
  std::function<bool(const Eigen::VectorXd&)> done;
};

struct LbfgsResult {
  Eigen::VectorXd x;
  double value = 0.0;
  std::size_t iterations = 0;
  bool stalled = false;
};

LbfgsResult minimize_lbfgs(const LbfgsProblem& problem, Eigen::VectorXd x0, std::size_t max_iters,
                           std::size_t memory = 12);

}  // namespace sicq::detail
