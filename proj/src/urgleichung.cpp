#include "sicq/urgleichung.hpp"

#include <cmath>
#include <string>

#include "sicq/errors.hpp"

namespace sicq {

namespace {

void require_columns(const ProbVector& p, const ConditionalMatrix& r, std::size_t expected, const char* op) {
  if (p.size() != expected || r.cols() != expected) {
    throw DimensionError(std::string(op) + ": expected " + std::to_string(expected) + " sky outcomes, got p of " +
                         std::to_string(p.size()) + " and r with " + std::to_string(r.cols()) + " columns");
  }
}

// Raises on any q(j) outside [-slack, 1 + slack], then clamps.
ProbVector checked(const Eigen::VectorXd& q, const char* op) {
  for (Eigen::Index j = 0; j < q.size(); ++j) {
    if (q[j] < -kUrungleichungSlack || q[j] > 1.0 + kUrungleichungSlack) {
      throw UrungleichungViolation(std::string(op) + ": q(" + std::to_string(j) + ") = " + std::to_string(q[j]) +
                                       " lies outside [0, 1]",
                                   static_cast<std::size_t>(j), q[j]);
    }
  }
  return ProbVector::from_values(q, kUrungleichungSlack);
}

// (d + 1) R p - k rowsum(R)
ProbVector deformed_ltp(const ProbVector& p, const ConditionalMatrix& r, double dim, double k, const char* op) {
  const Eigen::VectorXd q = (dim + 1.0) * (r.matrix() * p.values()) - k * r.row_sums();
  return checked(q, op);
}

ConditionalMatrix conditional(const std::vector<ComplexMatrix>& sky, std::size_t dim, const Povm& ground) {
  if (ground.dim() != dim) throw DimensionError("conditional_from_frame: ground and sky dimensions differ");
  Eigen::MatrixXd r(static_cast<Eigen::Index>(ground.size()), static_cast<Eigen::Index>(sky.size()));
  for (std::size_t j = 0; j < ground.size(); ++j) {
    for (std::size_t i = 0; i < sky.size(); ++i) {
      r(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = hs_inner(sky[i], ground[j]).real();
    }
  }
  return ConditionalMatrix::from_matrix(std::move(r), kDefaultTol);
}

}  // namespace

ConditionalMatrix ConditionalMatrix::from_matrix(Eigen::MatrixXd r, double tol) {
  if (r.size() == 0) throw DimensionError("conditional matrix is empty");
  if ((r.array() < -tol).any()) throw ValidationError("conditional matrix has negative entries");
  const Eigen::RowVectorXd sums = r.colwise().sum();
  for (Eigen::Index i = 0; i < sums.size(); ++i) {
    if (std::abs(sums[i] - 1.0) > tol) {
      throw ValidationError("conditional matrix column " + std::to_string(i) + " sums to " + std::to_string(sums[i]));
    }
  }
  return ConditionalMatrix(std::move(r));
}

ConditionalMatrix conditional_from_frame(const SicFrame& frame, const Povm& ground) {
  return conditional(frame.projectors(), frame.dim(), ground);
}

ConditionalMatrix conditional_from_frame(const MubFrame& frame, const Povm& ground) {
  return conditional(frame.projectors(), frame.dim(), ground);
}

ProbVector urgleichung_vn(const ProbVector& p, const ConditionalMatrix& r, std::size_t dim) {
  require_columns(p, r, dim * dim, "urgleichung_vn");
  const Eigen::VectorXd sums = r.row_sums();
  const double d = static_cast<double>(dim);
  for (Eigen::Index j = 0; j < sums.size(); ++j) {
    if (std::abs(sums[j] - d) > kUrungleichungSlack) {
      throw PreconditionError("urgleichung_vn: row " + std::to_string(j) + " of r sums to " + std::to_string(sums[j]) +
                              ", not d; the ground measurement is not rank-1 projective");
    }
  }
  const Eigen::VectorXd q = (d + 1.0) * (r.matrix() * p.values()) - Eigen::VectorXd::Ones(sums.size());
  return checked(q, "urgleichung_vn");
}

ProbVector urgleichung_general(const ProbVector& p, const ConditionalMatrix& r, std::size_t dim) {
  require_columns(p, r, dim * dim, "urgleichung_general");
  const double d = static_cast<double>(dim);
  return deformed_ltp(p, r, d, 1.0 / d, "urgleichung_general");
}

ProbVector urgleichung_mub(const ProbVector& p, const ConditionalMatrix& r, std::size_t dim) {
  require_columns(p, r, dim * (dim + 1), "urgleichung_mub");
  const double d = static_cast<double>(dim);
  return deformed_ltp(p, r, d, 1.0 / (d + 1.0), "urgleichung_mub");
}

ProbVector classical_ltp(const ProbVector& p, const ConditionalMatrix& r) {
  require_columns(p, r, r.cols(), "classical_ltp");
  return ProbVector::from_values(Eigen::VectorXd(r.matrix() * p.values()), kDefaultTol);
}

ConditionalMatrix unitary_to_stochastic(const SicFrame& frame, const UnitaryMatrix& u) {
  if (u.dim() != frame.dim()) throw DimensionError("unitary_to_stochastic: unitary and frame dimensions differ");
  const auto n = static_cast<Eigen::Index>(frame.size());
  const double d = static_cast<double>(frame.dim());
  Eigen::MatrixXd r(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const ComplexMatrix moved = u.conjugate(frame[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < n; ++j) r(j, i) = hs_inner(moved, frame[static_cast<std::size_t>(j)]).real() / d;
  }
  return ConditionalMatrix::from_matrix(std::move(r), frame.working_tolerance());
}

ProbVector evolve(const ProbVector& p, const ConditionalMatrix& r, std::size_t dim) {
  require_columns(p, r, dim * dim, "evolve");
  if (r.rows() != dim * dim) throw DimensionError("evolve: r must be d^2 x d^2");
  const double d = static_cast<double>(dim);
  const Eigen::VectorXd q =
      (d + 1.0) * (r.matrix() * p.values()) - Eigen::VectorXd::Constant(static_cast<Eigen::Index>(r.rows()), 1.0 / d);
  return checked(q, "evolve");
}

ProbVector evolve(const SicFrame& frame, const UnitaryMatrix& u, const ProbVector& p) {
  return evolve(p, unitary_to_stochastic(frame, u), frame.dim());
}

GeneralizedParams solve_generalized(std::int64_t m) {
  if (m < 2) throw UnsupportedError("solve_generalized needs m >= 2, got " + std::to_string(m));
  // Equating the two expressions for alpha m gives n + n beta = n (m+1) beta,
  // so m beta = 1. Then alpha = 1 + n beta = 1 + n/m, and alpha m = n + n beta
  // reads m + n = n + n/m, so n = m^2.
  const Rational beta(1, m);
  const std::int64_t n = m * m;
  const Rational alpha = 1 + n * beta;
  GeneralizedParams out{n, alpha, beta, m};
  if (n * beta != alpha - 1 || alpha * m != n * (m + 1) * beta || alpha * m != n + n * beta) {
    throw Error("solve_generalized: solution does not satisfy the constraints");
  }
  return out;
}

CertaintyGram<Rational> certainty_gram(std::int64_t m, std::int64_t n, const Rational& alpha, const Rational& beta) {
  if (m <= 0 || n <= 0 || alpha <= 0 || beta <= 0) throw ValidationError("certainty_gram: parameters must be positive");
  if (n * beta != alpha - 1) throw ValidationError("certainty_gram: n beta != alpha - 1");
  const Rational rest = alpha * m / n;
  return {rest - (m + 1) * beta, rest};
}

CertaintyGram<double> certainty_gram(std::int64_t m, std::int64_t n, double alpha, double beta) {
  if (m <= 0 || n <= 0 || alpha <= 0.0 || beta <= 0.0) {
    throw ValidationError("certainty_gram: parameters must be positive");
  }
  const double nd = static_cast<double>(n);
  if (std::abs(nd * beta - (alpha - 1.0)) > kExactTol) throw ValidationError("certainty_gram: n beta != alpha - 1");
  const double rest = alpha * static_cast<double>(m) / nd;
  return {rest - static_cast<double>(m + 1) * beta, rest};
}

}  // namespace sicq
