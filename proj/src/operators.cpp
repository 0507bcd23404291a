#include "sicq/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sicq/errors.hpp"

namespace sicq {

namespace {

void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw DimensionError(std::string(what) + " must be a non-empty square matrix");
  }
}

}  // namespace

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("hs_inner: operands differ in dimension");
  }
  // tr(a^dagger b) = sum_ij conj(a_ij) b_ij
  return (a.conjugate().cwiseProduct(b)).sum();
}

double hermiticity_error(const ComplexMatrix& a) {
  require_square(a, "operator");
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& a, double tol) { return hermiticity_error(a) <= tol; }

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& a) {
  require_square(a, "operator");
  const ComplexMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

bool is_psd(const ComplexMatrix& a, double tol) { return hermitian_eigenvalues(a)[0] >= -tol; }

bool is_psd_cholesky(const ComplexMatrix& a, double tol) {
  require_square(a, "operator");
  const ComplexMatrix shifted =
      0.5 * (a + a.adjoint()) + tol * ComplexMatrix::Identity(a.rows(), a.cols());
  Eigen::LLT<ComplexMatrix> llt(shifted);
  return llt.info() == Eigen::Success;
}

bool is_rank_one_projector(const ComplexMatrix& a, double tol) {
  if (!is_hermitian(a, tol)) throw ValidationError("is_rank_one_projector: input is not Hermitian");
  const ComplexMatrix a2 = a * a;
  const double tr2 = a2.trace().real();
  const double tr3 = (a2 * a).trace().real();
  return std::abs(tr2 - 1.0) <= tol && std::abs(tr3 - 1.0) <= tol;
}

ComplexMatrix projector(const ComplexVector& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw ValidationError("projector: zero vector");
  const ComplexVector u = psi / norm;
  return u * u.adjoint();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrices differ in shape");
  return (a - b).cwiseAbs().maxCoeff();
}

// DensityOperator -----------------------------------------------------------

DensityOperator DensityOperator::from_matrix(ComplexMatrix m, double tol) {
  require_square(m, "density operator");
  const double herr = hermiticity_error(m);
  if (herr > tol) throw ValidationError("density operator is not Hermitian (error " + std::to_string(herr) + ")");
  const double tr_err = std::abs(m.trace() - Complex(1.0, 0.0));
  if (tr_err > tol) throw ValidationError("density operator trace differs from 1 by " + std::to_string(tr_err));
  const double min_eig = hermitian_eigenvalues(m)[0];
  if (min_eig < -tol) {
    throw ValidationError("density operator has negative eigenvalue " + std::to_string(min_eig));
  }
  return DensityOperator(0.5 * (m + m.adjoint()));
}

DensityOperator DensityOperator::pure(const ComplexVector& psi) { return DensityOperator(projector(psi)); }

DensityOperator DensityOperator::maximally_mixed(std::size_t dim) {
  if (dim == 0) throw DimensionError("dimension must be positive");
  const auto n = static_cast<Eigen::Index>(dim);
  return DensityOperator(ComplexMatrix::Identity(n, n) / static_cast<double>(dim));
}

// UnitaryMatrix --------------------------------------------------------------

UnitaryMatrix UnitaryMatrix::from_matrix(ComplexMatrix m, double tol) {
  require_square(m, "unitary");
  const double err = (m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
  if (err > tol) throw ValidationError("matrix is not unitary (max |U^dagger U - I| = " + std::to_string(err) + ")");
  return UnitaryMatrix(std::move(m));
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) {
  if (dim == 0) throw DimensionError("dimension must be positive");
  const auto n = static_cast<Eigen::Index>(dim);
  return UnitaryMatrix(ComplexMatrix::Identity(n, n));
}

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix& rhs) const {
  if (rhs.dim() != dim()) throw DimensionError("unitaries differ in dimension");
  return UnitaryMatrix(matrix_ * rhs.matrix_);
}

// Povm -----------------------------------------------------------------------

Povm Povm::from_effects(std::vector<ComplexMatrix> effects, double tol) {
  if (effects.empty()) throw ValidationError("POVM has no effects");
  const auto n = effects.front().rows();
  if (n == 0) throw DimensionError("POVM effects must be non-empty");
  ComplexMatrix total = ComplexMatrix::Zero(n, n);
  for (std::size_t j = 0; j < effects.size(); ++j) {
    auto& e = effects[j];
    if (e.rows() != n || e.cols() != n) throw DimensionError("POVM effects differ in dimension");
    if (hermiticity_error(e) > tol) throw ValidationError("POVM effect " + std::to_string(j) + " is not Hermitian");
    e = 0.5 * (e + e.adjoint());
    if (!is_psd(e, tol)) throw ValidationError("POVM effect " + std::to_string(j) + " is not PSD");
    total += e;
  }
  const double closure = (total - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (closure > tol) throw ValidationError("POVM effects do not sum to identity (error " + std::to_string(closure) + ")");
  return Povm(static_cast<std::size_t>(n), std::move(effects));
}

Povm Povm::von_neumann(const ComplexMatrix& basis, double tol) {
  require_square(basis, "basis");
  std::vector<ComplexMatrix> effects;
  effects.reserve(static_cast<std::size_t>(basis.cols()));
  for (Eigen::Index j = 0; j < basis.cols(); ++j) effects.push_back(projector(basis.col(j)));
  return from_effects(std::move(effects), tol);
}

Povm Povm::trivial(std::size_t dim) {
  if (dim == 0) throw DimensionError("dimension must be positive");
  const auto n = static_cast<Eigen::Index>(dim);
  return Povm(dim, {ComplexMatrix::Identity(n, n)});
}

double Povm::closure_error() const {
  const auto n = static_cast<Eigen::Index>(dim_);
  ComplexMatrix total = ComplexMatrix::Zero(n, n);
  for (const auto& e : effects_) total += e;
  return (total - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

Povm Povm::conjugated(const UnitaryMatrix& u) const {
  if (u.dim() != dim_) throw DimensionError("unitary and POVM differ in dimension");
  std::vector<ComplexMatrix> out;
  out.reserve(effects_.size());
  for (const auto& e : effects_) out.push_back(u.conjugate(e));
  return Povm(dim_, std::move(out));
}

ProbVector born_direct(const DensityOperator& rho, const Povm& povm, double tol) {
  if (rho.dim() != povm.dim()) throw DimensionError("born_direct: state and POVM differ in dimension");
  Eigen::VectorXd q(static_cast<Eigen::Index>(povm.size()));
  for (std::size_t j = 0; j < povm.size(); ++j) {
    q[static_cast<Eigen::Index>(j)] = (rho.matrix() * povm[j]).trace().real();
  }
  return ProbVector::from_values(q, tol);
}

}  // namespace sicq
