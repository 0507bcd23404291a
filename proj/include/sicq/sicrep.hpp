#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "sicq/operators.hpp"
#include "sicq/probability.hpp"
#include "sicq/sicframe.hpp"

namespace sicq {

/// p(i) = tr(rho P_i) / d.
ProbVector rho_to_prob(const SicFrame& frame, const DensityOperator& rho, double tol = kDefaultTol);

/// rho = sum_i ((d + 1) p(i) - 1/d) P_i. Hermitian with unit trace, not
/// necessarily PSD.
ComplexMatrix prob_to_rho(const SicFrame& frame, const ProbVector& p);

struct ValidityReport {
  double min_eigenvalue = 0.0;
  double trace_error = 0.0;
  bool valid = false;
};

ValidityReport validity_test(const SicFrame& frame, const ProbVector& p, double tol = kDefaultTol);

inline constexpr std::size_t kDenseStructureMaxDim = 8;

// Triple products t_ijk = tr(P_i P_j P_k) of a verified frame. Up to d = 8
// they are tabulated; above that each lookup recomputes the trace.
class StructureTensor {
 public:
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return projectors_.size(); }
  bool dense() const noexcept { return !table_.empty(); }

  Complex triple(std::size_t i, std::size_t j, std::size_t k) const;
  /// (1/d)((d + 1) t_ijk - (d delta_ij + 1)/(d + 1)).
  Complex alpha(std::size_t i, std::size_t j, std::size_t k) const;
  /// Re t_ijk, totally symmetric.
  double c(std::size_t i, std::size_t j, std::size_t k) const { return triple(i, j, k).real(); }
  /// The matrix C_k with entries c_ijk.
  Eigen::MatrixXd c_slice(std::size_t k) const;

  friend StructureTensor build_structure(const SicFrame& frame);

 private:
  StructureTensor(std::size_t dim, std::vector<ComplexMatrix> projectors);
  std::size_t dim_;
  std::vector<ComplexMatrix> projectors_;
  std::vector<Complex> table_;
};

/// Throws ValidationError unless the frame passes verify_sic at its working
/// tolerance.
StructureTensor build_structure(const SicFrame& frame);

struct StructureSums {
  double alpha_k_error = 0.0;  // sum_k alpha_ijk vs (d delta_ij + 1)/(d + 1)
  double alpha_i_error = 0.0;  // sum_i alpha_ijk vs d delta_jk
  double alpha_j_error = 0.0;  // sum_j alpha_ijk vs d delta_ik
  double c_symmetry_error = 0.0;
};
StructureSums structure_sums(const StructureTensor& s);

struct PurityReport {
  double quadratic = 0.0;    // |sum p^2 - 2/(d(d+1))|
  double cubic = 0.0;        // |sum c_ijk p_i p_j p_k - (d+7)/(d+1)^3|
  double fixed_point = 0.0;  // max_k |p(k) - ((d+1)^2/(3d)) sum_ij c_ijk p_i p_j + 1/(3d)|
  bool pure = false;
};
PurityReport purity_check(const StructureTensor& s, const ProbVector& p, double tol = kDefaultTol);

/// m_k: 1 in slot k, 1/(d+1) elsewhere.
Eigen::VectorXd magma_m(std::size_t dim, std::size_t k);
/// Q_k = (2(d+1)/d)(C_k - m_k m_k^T).
Eigen::MatrixXd magma_q(const StructureTensor& s, std::size_t k);

struct MagmaReport {
  std::size_t rank = 0;  // eigenvalues of Q_k above 0.5
  std::size_t expected_rank = 0;
  double idempotency_residual = 0.0;
  double symmetry_residual = 0.0;
  double m_residual = 0.0;  // |Q_k m_k|, m_k is the remaining eigendirection of C_k
  bool pass = false;
};
MagmaReport magma_decomposition_check(const StructureTensor& s, std::size_t k, double tol = kDefaultTol);

/// |p(k) - d p(k)^2 - ((d+1)/2) p^T Q_k p|.
double magma_quadratic_residual(const StructureTensor& s, const ProbVector& p, std::size_t k);

// Real coefficients b on the ellipsoid (sum b)^2 + d sum b^2 = d + 1.
class SqrtParam {
 public:
  static SqrtParam from_values(std::size_t dim, Eigen::VectorXd b, double tol = kDefaultTol);
  /// Rescales any nonzero b onto the ellipsoid.
  static SqrtParam project(std::size_t dim, const Eigen::VectorXd& b);

  std::size_t dim() const noexcept { return dim_; }
  const Eigen::VectorXd& values() const noexcept { return b_; }
  static double constraint(std::size_t dim, const Eigen::VectorXd& b);

 private:
  SqrtParam(std::size_t dim, Eigen::VectorXd b) : dim_(dim), b_(std::move(b)) {}
  std::size_t dim_;
  Eigen::VectorXd b_;
};

/// p(k) = (1/d) sum_ij c_ijk b_i b_j.
ProbVector sqrt_parameterize(const StructureTensor& s, const SqrtParam& b, double tol = kDefaultTol);

/// d(d+1) <p|q> - 1, which equals tr(rho sigma).
double sic_inner(const ProbVector& p, const ProbVector& q, std::size_t dim);

}  // namespace sicq
