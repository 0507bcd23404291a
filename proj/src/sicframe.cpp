#include "sicq/sicframe.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sicq/errors.hpp"

namespace sicq {

const char* to_string(SearchMode mode) {
  switch (mode) {
    case SearchMode::exact:
      return "exact";
    case SearchMode::weyl_heisenberg:
      return "weyl-heisenberg";
  }
  return "unknown";
}

SicFrame::SicFrame(std::size_t dim, std::vector<ComplexMatrix> projectors,
                   std::optional<std::vector<ComplexVector>> vectors, Provenance provenance)
    : dim_(dim), projectors_(std::move(projectors)), vectors_(std::move(vectors)), provenance_(provenance) {}

SicFrame SicFrame::from_vectors(std::vector<ComplexVector> vectors, Provenance provenance) {
  if (vectors.empty()) throw DimensionError("frame has no vectors");
  const auto d = static_cast<std::size_t>(vectors.front().size());
  if (d == 0) throw DimensionError("frame vectors are empty");
  if (vectors.size() != d * d) {
    throw DimensionError("frame in dimension " + std::to_string(d) + " needs " + std::to_string(d * d) +
                         " vectors, got " + std::to_string(vectors.size()));
  }
  std::vector<ComplexMatrix> projectors;
  projectors.reserve(vectors.size());
  for (auto& v : vectors) {
    if (static_cast<std::size_t>(v.size()) != d) throw DimensionError("frame vectors differ in length");
    v /= v.norm();
    projectors.push_back(v * v.adjoint());
  }
  return SicFrame(d, std::move(projectors), std::move(vectors), provenance);
}

SicFrame SicFrame::from_projectors(std::size_t dim, std::vector<ComplexMatrix> projectors, Provenance provenance) {
  if (dim == 0) throw DimensionError("dimension must be positive");
  if (projectors.size() != dim * dim) {
    throw DimensionError("frame in dimension " + std::to_string(dim) + " needs " + std::to_string(dim * dim) +
                         " projectors, got " + std::to_string(projectors.size()));
  }
  for (const auto& p : projectors) {
    if (static_cast<std::size_t>(p.rows()) != dim || static_cast<std::size_t>(p.cols()) != dim) {
      throw DimensionError("frame projector has wrong shape");
    }
  }
  return SicFrame(dim, std::move(projectors), std::nullopt, provenance);
}

double SicFrame::overlap_residual() const {
  const double d = static_cast<double>(dim_);
  const double off = 1.0 / (d + 1.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i; j < size(); ++j) {
      const double t = hs_inner(projectors_[i], projectors_[j]).real();
      worst = std::max(worst, std::abs(t - (i == j ? 1.0 : off)));
    }
  }
  return worst;
}

Povm SicFrame::effects(double tol) const {
  std::vector<ComplexMatrix> e;
  e.reserve(size());
  for (const auto& p : projectors_) e.push_back(p / static_cast<double>(dim_));
  return Povm::from_effects(std::move(e), tol);
}

double SicFrame::working_tolerance() const {
  if (const auto* s = std::get_if<SearchedProvenance>(&provenance_)) return std::max(kDefaultTol, 10.0 * s->residual);
  return kDefaultTol;
}

double frobenius_objective(const Povm& povm) {
  const std::size_t d = povm.dim();
  if (povm.size() != d * d) {
    throw DimensionError("frobenius_objective needs d^2 = " + std::to_string(d * d) + " effects, got " +
                         std::to_string(povm.size()));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < povm.size(); ++i) {
    for (std::size_t j = 0; j < povm.size(); ++j) {
      const double t = hs_inner(povm[i], povm[j]).real();
      const double r = (i == j ? 1.0 : 0.0) - t;
      total += r * r;
    }
  }
  return total;
}

double frobenius_minimum(std::size_t dim) {
  const double d = static_cast<double>(dim);
  const double n = d * d;
  const double diag = 1.0 - 1.0 / n;
  const double off = 1.0 / (n * (d + 1.0));
  return n * diag * diag + n * (n - 1.0) * off * off;
}

SicFrame known_sic(std::size_t dim) {
  using std::numbers::pi;
  if (dim == 2) {
    const double s = 1.0 / std::sqrt(3.0);
    const double bloch[4][3] = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
    std::vector<ComplexVector> vectors;
    for (const auto& n : bloch) {
      // Eigenvector of n.sigma with eigenvalue +1: (cos(t/2), e^{i phi} sin(t/2)).
      const double theta = std::acos(n[2]);
      const double phi = std::atan2(n[1], n[0]);
      ComplexVector v(2);
      v << std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi);
      vectors.push_back(v);
    }
    return SicFrame::from_vectors(std::move(vectors), AnalyticProvenance{});
  }
  if (dim == 3) {
    const Complex w = std::polar(1.0, 2.0 * pi / 3.0);
    const Complex wb = std::conj(w);
    const Complex one(1.0, 0.0);
    const Complex zero(0.0, 0.0);
    const Complex rows[9][3] = {{one, one, zero}, {zero, one, one}, {one, zero, one},
                                {one, w, zero},   {zero, one, w},   {w, zero, one},
                                {one, wb, zero},  {zero, one, wb},  {wb, zero, one}};
    std::vector<ComplexVector> vectors;
    for (const auto& r : rows) {
      ComplexVector v(3);
      v << r[0], r[1], r[2];
      vectors.push_back(v / std::sqrt(2.0));
    }
    return SicFrame::from_vectors(std::move(vectors), AnalyticProvenance{});
  }
  throw UnsupportedError("no analytic SIC for dimension " + std::to_string(dim) + " (available: 2, 3)");
}

SicVerification verify_sic(const SicFrame& frame, double tol) {
  SicVerification report;
  report.tol = tol;
  const std::size_t d = frame.dim();
  const std::size_t n = frame.size();
  report.expected_rank = d * d;
  const auto di = static_cast<Eigen::Index>(d);

  ComplexMatrix total = ComplexMatrix::Zero(di, di);
  for (const auto& p : frame.projectors()) {
    const ComplexMatrix p2 = p * p;
    const double err = std::max({hermiticity_error(p), std::abs(p2.trace().real() - 1.0),
                                 std::abs((p2 * p).trace().real() - 1.0)});
    report.max_projector_error = std::max(report.max_projector_error, err);
    total += p;
  }
  report.completeness_error = (total / static_cast<double>(d) - ComplexMatrix::Identity(di, di)).cwiseAbs().maxCoeff();

  const double off = 1.0 / (static_cast<double>(d) + 1.0);
  Eigen::MatrixXd gram(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double t = hs_inner(frame[i], frame[j]).real();
      gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = t;
      gram(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = t;
      report.max_overlap_error = std::max(report.max_overlap_error, std::abs(t - (i == j ? 1.0 : off)));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double cutoff = 1e-8 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] > cutoff) ++report.rank;
  }

  report.pass = report.max_projector_error <= tol && report.max_overlap_error <= tol &&
                report.completeness_error <= tol && report.rank == report.expected_rank;
  return report;
}

}  // namespace sicq
