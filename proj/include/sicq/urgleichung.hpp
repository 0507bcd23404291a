#pragma once

#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

#include "sicq/operators.hpp"
#include "sicq/probability.hpp"
#include "sicq/rational.hpp"
#include "sicq/sicframe.hpp"

namespace sicq {

// r(j|i): rows are ground outcomes j, columns sky outcomes i. Every column
// sums to one.
class ConditionalMatrix {
 public:
  static ConditionalMatrix from_matrix(Eigen::MatrixXd r, double tol = kExactTol);

  std::size_t rows() const noexcept { return static_cast<std::size_t>(r_.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(r_.cols()); }
  double operator()(std::size_t j, std::size_t i) const {
    return r_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
  }
  const Eigen::MatrixXd& matrix() const noexcept { return r_; }
  Eigen::VectorXd row_sums() const { return r_.rowwise().sum(); }

 private:
  explicit ConditionalMatrix(Eigen::MatrixXd r) : r_(std::move(r)) {}
  Eigen::MatrixXd r_;
};

/// r(j|i) = tr(P_i F_j).
ConditionalMatrix conditional_from_frame(const SicFrame& frame, const Povm& ground);
ConditionalMatrix conditional_from_frame(const MubFrame& frame, const Povm& ground);

// Slack allowed on q(j) before [0, 1] counts as violated.
inline constexpr double kUrungleichungSlack = 1e-8;

/// q(j) = (d+1) sum_i p(i) r(j|i) - 1, for rank-1 ground projectors (rows of r
/// sum to d; PreconditionError otherwise).
ProbVector urgleichung_vn(const ProbVector& p, const ConditionalMatrix& r, std::size_t dim);
/// q(j) = (d+1) sum_i p(i) r(j|i) - (1/d) sum_i r(j|i).
ProbVector urgleichung_general(const ProbVector& p, const ConditionalMatrix& r, std::size_t dim);
/// Sky is a full MUB set: q(j) = (d+1) sum_i p(i) r(j|i) - (1/(d+1)) sum_i r(j|i).
ProbVector urgleichung_mub(const ProbVector& p, const ConditionalMatrix& r, std::size_t dim);
/// s(j) = sum_i p(i) r(j|i).
ProbVector classical_ltp(const ProbVector& p, const ConditionalMatrix& r);

/// r(j|i) = (1/d) tr(U P_i U^dagger P_j); doubly stochastic.
ConditionalMatrix unitary_to_stochastic(const SicFrame& frame, const UnitaryMatrix& u);
/// q(j) = (d+1) sum_i p(i) r(j|i) - 1/d.
ProbVector evolve(const ProbVector& p, const ConditionalMatrix& r, std::size_t dim);
ProbVector evolve(const SicFrame& frame, const UnitaryMatrix& u, const ProbVector& p);

struct GeneralizedParams {
  std::int64_t n = 0;
  Rational alpha;
  Rational beta;
  std::int64_t m = 0;
};

/// Solves n beta = alpha - 1, alpha m = n (m+1) beta and alpha m = n + n beta.
/// The solution is n = m^2, alpha = m + 1, beta = 1/m. Requires m >= 2.
GeneralizedParams solve_generalized(std::int64_t m);

template <typename T>
struct CertaintyGram {
  T lambda0;
  T lambda_rest;
};

/// lambda0 = alpha m/n - (m+1) beta, lambda_rest = alpha m/n. Requires
/// n beta = alpha - 1 (exactly for rationals, within kExactTol for doubles).
CertaintyGram<Rational> certainty_gram(std::int64_t m, std::int64_t n, const Rational& alpha, const Rational& beta);
CertaintyGram<double> certainty_gram(std::int64_t m, std::int64_t n, double alpha, double beta);

}  // namespace sicq
