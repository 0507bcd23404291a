#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "sicq/probability.hpp"

namespace sicq {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// (a, b) = tr(a^dagger b).
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

double hermiticity_error(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, double tol = kDefaultTol);

/// Ascending eigenvalues of a Hermitian matrix (input is symmetrised first).
Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& a);

/// PSD via the smallest eigenvalue: min eig >= -tol.
bool is_psd(const ComplexMatrix& a, double tol = kDefaultTol);

/// PSD via Cholesky: LLT of a + tol I succeeds. Independent route used to
/// cross-check is_psd.
bool is_psd_cholesky(const ComplexMatrix& a, double tol = kDefaultTol);

/// tr a^2 = tr a^3 = 1 within tol. Throws ValidationError for non-Hermitian a.
bool is_rank_one_projector(const ComplexMatrix& a, double tol = kDefaultTol);

ComplexMatrix projector(const ComplexVector& psi);

class DensityOperator {
 public:
  static DensityOperator from_matrix(ComplexMatrix m, double tol = kDefaultTol);
  static DensityOperator pure(const ComplexVector& psi);
  static DensityOperator maximally_mixed(std::size_t dim);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

 private:
  explicit DensityOperator(ComplexMatrix m) : matrix_(std::move(m)) {}
  ComplexMatrix matrix_;
};

class UnitaryMatrix {
 public:
  static UnitaryMatrix from_matrix(ComplexMatrix m, double tol = kDefaultTol);
  static UnitaryMatrix identity(std::size_t dim);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  UnitaryMatrix operator*(const UnitaryMatrix& rhs) const;

  ComplexMatrix conjugate(const ComplexMatrix& x) const { return matrix_ * x * matrix_.adjoint(); }

 private:
  explicit UnitaryMatrix(ComplexMatrix m) : matrix_(std::move(m)) {}
  ComplexMatrix matrix_;
};

class Povm {
 public:
  // Each effect Hermitian and PSD, and the effects sum to the identity, all
  // within tol.
  static Povm from_effects(std::vector<ComplexMatrix> effects, double tol = kDefaultTol);
  // Rank-1 projective measurement onto the columns of an orthonormal basis.
  static Povm von_neumann(const ComplexMatrix& basis, double tol = kDefaultTol);
  static Povm trivial(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return effects_.size(); }
  const ComplexMatrix& operator[](std::size_t j) const { return effects_[j]; }
  const std::vector<ComplexMatrix>& effects() const noexcept { return effects_; }

  double closure_error() const;
  Povm conjugated(const UnitaryMatrix& u) const;

 private:
  Povm(std::size_t dim, std::vector<ComplexMatrix> effects) : dim_(dim), effects_(std::move(effects)) {}
  std::size_t dim_;
  std::vector<ComplexMatrix> effects_;
};

/// q(j) = tr(rho F_j), checked against [-tol, 1 + tol] and clamped onto the
/// simplex.
ProbVector born_direct(const DensityOperator& rho, const Povm& povm, double tol = kDefaultTol);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace sicq
