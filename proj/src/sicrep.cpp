#include "sicq/sicrep.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sicq/errors.hpp"

namespace sicq {

namespace {

void require_length(const SicFrame& frame, const ProbVector& p, const char* op) {
  if (p.size() != frame.size()) {
    throw DimensionError(std::string(op) + ": expected " + std::to_string(frame.size()) + " probabilities, got " +
                         std::to_string(p.size()));
  }
}

Complex triple_trace(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c) {
  return (a * b).cwiseProduct(c.transpose()).sum();
}

}  // namespace

ProbVector rho_to_prob(const SicFrame& frame, const DensityOperator& rho, double tol) {
  if (rho.dim() != frame.dim()) throw DimensionError("rho_to_prob: state and frame dimensions differ");
  Eigen::VectorXd p(static_cast<Eigen::Index>(frame.size()));
  const double d = static_cast<double>(frame.dim());
  for (std::size_t i = 0; i < frame.size(); ++i) {
    p[static_cast<Eigen::Index>(i)] = hs_inner(rho.matrix(), frame[i]).real() / d;
  }
  return ProbVector::from_values(p, tol);
}

ComplexMatrix prob_to_rho(const SicFrame& frame, const ProbVector& p) {
  require_length(frame, p, "prob_to_rho");
  const auto n = static_cast<Eigen::Index>(frame.dim());
  const double d = static_cast<double>(frame.dim());
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < frame.size(); ++i) rho += ((d + 1.0) * p[i] - 1.0 / d) * frame[i];
  return rho;
}

ValidityReport validity_test(const SicFrame& frame, const ProbVector& p, double tol) {
  ValidityReport out;
  if (p.size() != frame.size()) return out;
  const ComplexMatrix rho = prob_to_rho(frame, p);
  out.min_eigenvalue = hermitian_eigenvalues(rho)[0];
  out.trace_error = std::abs(rho.trace() - Complex(1.0, 0.0));
  out.valid = out.min_eigenvalue >= -tol && out.trace_error <= tol;
  return out;
}

StructureTensor::StructureTensor(std::size_t dim, std::vector<ComplexMatrix> projectors)
    : dim_(dim), projectors_(std::move(projectors)) {
  if (dim_ > kDenseStructureMaxDim) return;
  const std::size_t n = projectors_.size();
  table_.resize(n * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const ComplexMatrix pij = projectors_[i] * projectors_[j];
      for (std::size_t k = 0; k < n; ++k) {
        table_[(i * n + j) * n + k] = pij.cwiseProduct(projectors_[k].transpose()).sum();
      }
    }
  }
}

Complex StructureTensor::triple(std::size_t i, std::size_t j, std::size_t k) const {
  const std::size_t n = size();
  if (i >= n || j >= n || k >= n) throw UnsupportedError("structure index out of range");
  if (dense()) return table_[(i * n + j) * n + k];
  return triple_trace(projectors_[i], projectors_[j], projectors_[k]);
}

Complex StructureTensor::alpha(std::size_t i, std::size_t j, std::size_t k) const {
  const double d = static_cast<double>(dim_);
  const double overlap = ((i == j ? d : 0.0) + 1.0) / (d + 1.0);
  return ((d + 1.0) * triple(i, j, k) - overlap) / d;
}

Eigen::MatrixXd StructureTensor::c_slice(std::size_t k) const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      out(i, j) = c(static_cast<std::size_t>(i), static_cast<std::size_t>(j), k);
      out(j, i) = out(i, j);
    }
  }
  return out;
}

StructureTensor build_structure(const SicFrame& frame) {
  const SicVerification v = verify_sic(frame, frame.working_tolerance());
  if (!v.pass) {
    throw ValidationError("build_structure: frame fails SIC verification (max overlap error " +
                          std::to_string(v.max_overlap_error) + ")");
  }
  return StructureTensor(frame.dim(), frame.projectors());
}

StructureSums structure_sums(const StructureTensor& s) {
  StructureSums out;
  const std::size_t n = s.size();
  const double d = static_cast<double>(s.dim());
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      Complex over_k = 0.0;
      Complex over_i = 0.0;
      Complex over_j = 0.0;
      for (std::size_t x = 0; x < n; ++x) {
        over_k += s.alpha(a, b, x);  // (i, j) = (a, b)
        over_i += s.alpha(x, a, b);  // (j, k) = (a, b)
        over_j += s.alpha(a, x, b);  // (i, k) = (a, b)
        out.c_symmetry_error = std::max({out.c_symmetry_error, std::abs(s.c(a, b, x) - s.c(b, a, x)),
                                         std::abs(s.c(a, b, x) - s.c(a, x, b))});
      }
      const double same = a == b ? 1.0 : 0.0;
      out.alpha_k_error = std::max(out.alpha_k_error, std::abs(over_k - (d * same + 1.0) / (d + 1.0)));
      out.alpha_i_error = std::max(out.alpha_i_error, std::abs(over_i - d * same));
      out.alpha_j_error = std::max(out.alpha_j_error, std::abs(over_j - d * same));
    }
  }
  return out;
}

PurityReport purity_check(const StructureTensor& s, const ProbVector& p, double tol) {
  if (p.size() != s.size()) throw DimensionError("purity_check: probability length differs from d^2");
  const double d = static_cast<double>(s.dim());
  const Eigen::VectorXd& v = p.values();
  PurityReport out;
  out.quadratic = std::abs(v.squaredNorm() - 2.0 / (d * (d + 1.0)));
  double cubic = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double quad = v.dot(s.c_slice(k) * v);
    cubic += quad * p[k];
    const double fixed = p[k] - (d + 1.0) * (d + 1.0) / (3.0 * d) * quad + 1.0 / (3.0 * d);
    out.fixed_point = std::max(out.fixed_point, std::abs(fixed));
  }
  out.cubic = std::abs(cubic - (d + 7.0) / std::pow(d + 1.0, 3));
  out.pure = out.quadratic <= tol && out.cubic <= tol && out.fixed_point <= tol;
  return out;
}

Eigen::VectorXd magma_m(std::size_t dim, std::size_t k) {
  const std::size_t n = dim * dim;
  if (k >= n) throw UnsupportedError("magma index out of range");
  Eigen::VectorXd m = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), 1.0 / (static_cast<double>(dim) + 1.0));
  m[static_cast<Eigen::Index>(k)] = 1.0;
  return m;
}

Eigen::MatrixXd magma_q(const StructureTensor& s, std::size_t k) {
  const Eigen::VectorXd m = magma_m(s.dim(), k);
  const double d = static_cast<double>(s.dim());
  return (2.0 * (d + 1.0) / d) * (s.c_slice(k) - m * m.transpose());
}

MagmaReport magma_decomposition_check(const StructureTensor& s, std::size_t k, double tol) {
  const Eigen::MatrixXd q = magma_q(s, k);
  MagmaReport out;
  out.expected_rank = 2 * s.dim() - 2;
  out.idempotency_residual = (q * q - q).cwiseAbs().maxCoeff();
  out.symmetry_residual = (q - q.transpose()).cwiseAbs().maxCoeff();
  out.m_residual = (q * magma_m(s.dim(), k)).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (q + q.transpose()), Eigen::EigenvaluesOnly);
  out.rank = static_cast<std::size_t>((eig.eigenvalues().array() > 0.5).count());
  out.pass = out.rank == out.expected_rank && out.idempotency_residual <= tol && out.symmetry_residual <= tol &&
             out.m_residual <= tol;
  return out;
}

double magma_quadratic_residual(const StructureTensor& s, const ProbVector& p, std::size_t k) {
  if (p.size() != s.size()) throw DimensionError("magma_quadratic_residual: probability length differs from d^2");
  const double d = static_cast<double>(s.dim());
  const Eigen::VectorXd& v = p.values();
  const double pk = p[k];
  return std::abs(pk - d * pk * pk - 0.5 * (d + 1.0) * v.dot(magma_q(s, k) * v));
}

double SqrtParam::constraint(std::size_t dim, const Eigen::VectorXd& b) {
  return b.sum() * b.sum() + static_cast<double>(dim) * b.squaredNorm();
}

SqrtParam SqrtParam::from_values(std::size_t dim, Eigen::VectorXd b, double tol) {
  if (static_cast<std::size_t>(b.size()) != dim * dim) throw DimensionError("SqrtParam needs d^2 coefficients");
  const double value = constraint(dim, b);
  if (std::abs(value - (static_cast<double>(dim) + 1.0)) > tol) {
    throw ValidationError("SqrtParam: (sum b)^2 + d sum b^2 = " + std::to_string(value) + ", expected d + 1");
  }
  return SqrtParam(dim, std::move(b));
}

SqrtParam SqrtParam::project(std::size_t dim, const Eigen::VectorXd& b) {
  if (static_cast<std::size_t>(b.size()) != dim * dim) throw DimensionError("SqrtParam needs d^2 coefficients");
  const double value = constraint(dim, b);
  if (value <= 0.0) throw ValidationError("SqrtParam: cannot rescale the zero vector");
  return SqrtParam(dim, b * std::sqrt((static_cast<double>(dim) + 1.0) / value));
}

ProbVector sqrt_parameterize(const StructureTensor& s, const SqrtParam& b, double tol) {
  if (b.dim() != s.dim()) throw DimensionError("sqrt_parameterize: dimension mismatch");
  const double d = static_cast<double>(s.dim());
  Eigen::VectorXd p(static_cast<Eigen::Index>(s.size()));
  for (std::size_t k = 0; k < s.size(); ++k) {
    p[static_cast<Eigen::Index>(k)] = b.values().dot(s.c_slice(k) * b.values()) / d;
  }
  return ProbVector::from_values(p, tol);
}

double sic_inner(const ProbVector& p, const ProbVector& q, std::size_t dim) {
  if (p.size() != dim * dim || q.size() != dim * dim) throw DimensionError("sic_inner: vectors must have length d^2");
  const double d = static_cast<double>(dim);
  return d * (d + 1.0) * p.dot(q) - 1.0;
}

}  // namespace sicq
