#include <cmath>
#include <numbers>
#include <string>

#include "sicq/errors.hpp"
#include "sicq/geometry.hpp"
#include "sicq/sicframe.hpp"

namespace sicq {

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t k = 2; k * k <= n; ++k) {
    if (n % k == 0) return false;
  }
  return true;
}

MubFrame::MubFrame(std::size_t dim, std::vector<ComplexVector> vectors) : dim_(dim), vectors_(std::move(vectors)) {
  projectors_.reserve(vectors_.size());
  for (const auto& v : vectors_) projectors_.push_back(v * v.adjoint());
}

Povm MubFrame::effects(double tol) const {
  std::vector<ComplexMatrix> e;
  e.reserve(size());
  for (const auto& p : projectors_) e.push_back(p / (static_cast<double>(dim_) + 1.0));
  return Povm::from_effects(std::move(e), tol);
}

MubFrame build_mub(std::size_t dim) {
  if (!is_prime(dim) || dim > kMaxMubDim) {
    throw UnsupportedError("MUB construction needs a prime d <= 11, got d = " + std::to_string(dim));
  }
  const auto n = static_cast<Eigen::Index>(dim);
  std::vector<ComplexVector> vectors;
  vectors.reserve(dim * (dim + 1));
  for (Eigen::Index s = 0; s < n; ++s) vectors.push_back(ComplexVector::Unit(n, s));

  if (dim == 2) {
    const double h = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    ComplexVector v(2);
    v << h, h;
    vectors.push_back(v);
    v << h, -h;
    vectors.push_back(v);
    v << h, h * i;
    vectors.push_back(v);
    v << h, -h * i;
    vectors.push_back(v);
    return MubFrame(dim, std::move(vectors));
  }

  // Odd prime: basis a + 1 has elements (1/sqrt d) w^{a k^2 + b k}.
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      ComplexVector v(n);
      for (std::size_t k = 0; k < dim; ++k) {
        const std::size_t phase = (a * k * k + b * k) % dim;
        v[static_cast<Eigen::Index>(k)] =
            std::polar(norm, 2.0 * std::numbers::pi * static_cast<double>(phase) / static_cast<double>(dim));
      }
      vectors.push_back(v);
    }
  }
  return MubFrame(dim, std::move(vectors));
}

MubVerification verify_mub(const MubFrame& mub) {
  MubVerification out;
  const std::size_t d = mub.dim();
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix total = ComplexMatrix::Zero(n, n);
  for (std::size_t r = 0; r <= d; ++r) {
    for (std::size_t s = 0; s < d; ++s) {
      total += mub.at(r, s);
      for (std::size_t q = 0; q <= d; ++q) {
        for (std::size_t t = 0; t < d; ++t) {
          const double overlap = hs_inner(mub.at(r, s), mub.at(q, t)).real();
          if (r == q) {
            out.within_basis_error = std::max(out.within_basis_error, std::abs(overlap - (s == t ? 1.0 : 0.0)));
          } else {
            out.cross_basis_error = std::max(out.cross_basis_error, std::abs(overlap - 1.0 / static_cast<double>(d)));
          }
        }
      }
    }
  }
  out.sum_error = (total - (static_cast<double>(d) + 1.0) * ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  return out;
}

double depolarize_check(const MubFrame& mub, const ComplexMatrix& x) {
  const auto n = static_cast<Eigen::Index>(mub.dim());
  if (x.rows() != n || x.cols() != n) throw DimensionError("depolarize_check: operand dimension differs from frame");
  const double scale = 1.0 / (static_cast<double>(mub.dim()) + 1.0);
  ComplexMatrix twirl = ComplexMatrix::Zero(n, n);
  for (const auto& p : mub.projectors()) twirl += p * x * p;
  twirl *= scale;
  const ComplexMatrix direct = scale * (x.trace() * ComplexMatrix::Identity(n, n) + x);
  return (twirl - direct).cwiseAbs().maxCoeff();
}

const char* to_string(Feasibility verdict) {
  switch (verdict) {
    case Feasibility::feasible:
      return "feasible";
    case Feasibility::infeasible:
      return "infeasible";
    case Feasibility::unknown:
      return "unknown";
  }
  return "unknown";
}

RealFeasibilityReport real_sic_feasibility(std::size_t dim) {
  if (dim < 2) throw UnsupportedError("real_sic_feasibility needs d >= 2");
  const auto d = static_cast<std::int64_t>(dim);
  RealFeasibilityReport out;
  out.dim = dim;
  out.required_count = dim * (dim + 1) / 2;
  // (1/n) sum P_i = I over d(d+1)/2 projectors gives n = (d+1)/2. Trace
  // preservation gives alpha = n beta d + 1, linear independence gives
  // alpha = n (1 + beta); together beta = (n - 1)/(n (d - 1)).
  const Rational n(d + 1, 2);
  out.beta = (n - 1) / (n * (d - 1));
  out.alpha = n * (1 + out.beta);
  out.required_overlap = n * out.beta / out.alpha;
  out.delsarte_bound = delsarte_bound(d, out.required_overlap);
  if (dim == 4) out.known_max = 6;
  if (dim == 15) out.known_max = 36;
  if (out.known_max && *out.known_max < out.required_count) {
    out.verdict = Feasibility::infeasible;
  } else {
    out.verdict = Feasibility::unknown;
  }
  return out;
}

}  // namespace sicq
