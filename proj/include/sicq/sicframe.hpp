#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "sicq/operators.hpp"
#include "sicq/rational.hpp"

namespace sicq {

enum class SearchMode { exact, weyl_heisenberg };

const char* to_string(SearchMode mode);

struct AnalyticProvenance {};

struct SearchedProvenance {
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  double residual = 0.0;
  SearchMode mode = SearchMode::exact;
  std::size_t seeds_tried = 0;
};

using Provenance = std::variant<AnalyticProvenance, SearchedProvenance>;

// A candidate SIC: d^2 operators on C^d. Construction checks shape only;
// whether the operators actually form a SIC is verify_sic's job.
class SicFrame {
 public:
  static SicFrame from_vectors(std::vector<ComplexVector> vectors, Provenance provenance);
  static SicFrame from_projectors(std::size_t dim, std::vector<ComplexMatrix> projectors, Provenance provenance);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return projectors_.size(); }
  const ComplexMatrix& operator[](std::size_t i) const { return projectors_[i]; }
  const std::vector<ComplexMatrix>& projectors() const noexcept { return projectors_; }
  // Present when the frame was built from (or loaded with) fiducial vectors.
  const std::optional<std::vector<ComplexVector>>& vectors() const noexcept { return vectors_; }
  const Provenance& provenance() const noexcept { return provenance_; }

  // Largest |tr P_i P_j - (d delta_ij + 1)/(d + 1)|.
  double overlap_residual() const;
  // Effects P_i / d.
  Povm effects(double tol = kDefaultTol) const;
  // Tolerance appropriate for checks downstream of this frame: 1e-9 for
  // analytic frames, max(1e-9, 10 x residual) for searched ones.
  double working_tolerance() const;

 private:
  SicFrame(std::size_t dim, std::vector<ComplexMatrix> projectors, std::optional<std::vector<ComplexVector>> vectors,
           Provenance provenance);
  std::size_t dim_;
  std::vector<ComplexMatrix> projectors_;
  std::optional<std::vector<ComplexVector>> vectors_;
  Provenance provenance_;
};

/// F = sum_ij (delta_ij - tr E_i E_j)^2 over d^2 effects.
double frobenius_objective(const Povm& povm);
/// d^2 (1 - 1/d^2)^2 + d^2 (d^2 - 1) (1/(d^2 (d + 1)))^2, attained exactly by SICs.
double frobenius_minimum(std::size_t dim);

/// d = 2: Bloch tetrahedron; d = 3: nine vectors built from
/// cube roots of unity.
SicFrame known_sic(std::size_t dim);

struct SearchOptions {
  SearchMode mode = SearchMode::exact;
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  // Keep iterating past target_residual until this floor (or a stall).
  double polish_residual = 1e-15;
};

struct SeedOutcome {
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  double residual = 0.0;
  std::vector<ComplexVector> vectors;
};

inline constexpr std::size_t kMinSearchDim = 2;
inline constexpr std::size_t kMaxSearchDim = 12;
inline constexpr double kDefaultSearchResidual = 1e-8;

/// Local minimisation of the Frobenius objective from one seed.
SeedOutcome search_from_seed(std::size_t dim, std::uint64_t seed, std::size_t max_iters, double target_residual,
                             const SearchOptions& options = {});

/// Multi-start search; the returned frame comes from the earliest seed in the
/// list that reaches target_residual. Throws SearchFailed (with the best
/// residual seen) when none does.
SicFrame search_sic(std::size_t dim, std::span<const std::uint64_t> seeds, std::size_t max_iters,
                    double target_residual = kDefaultSearchResidual, const SearchOptions& options = {});

struct SicVerification {
  double max_overlap_error = 0.0;
  double completeness_error = 0.0;
  double max_projector_error = 0.0;
  std::size_t rank = 0;
  std::size_t expected_rank = 0;
  double tol = 0.0;
  bool pass = false;
};

SicVerification verify_sic(const SicFrame& frame, double tol);

// Complete set of mutually unbiased bases for prime d. Projector (r, s) sits at
// index r * d + s; r = 0 is the computational basis.
class MubFrame {
 public:
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return projectors_.size(); }
  const ComplexMatrix& operator[](std::size_t i) const { return projectors_[i]; }
  const ComplexMatrix& at(std::size_t basis, std::size_t element) const { return projectors_[basis * dim_ + element]; }
  const std::vector<ComplexMatrix>& projectors() const noexcept { return projectors_; }
  const std::vector<ComplexVector>& vectors() const noexcept { return vectors_; }
  // Effects P / (d + 1).
  Povm effects(double tol = kDefaultTol) const;

  friend MubFrame build_mub(std::size_t dim);

 private:
  MubFrame(std::size_t dim, std::vector<ComplexVector> vectors);
  std::size_t dim_;
  std::vector<ComplexVector> vectors_;
  std::vector<ComplexMatrix> projectors_;
};

inline constexpr std::size_t kMaxMubDim = 11;

bool is_prime(std::size_t n);
MubFrame build_mub(std::size_t dim);

struct MubVerification {
  double within_basis_error = 0.0;
  double cross_basis_error = 0.0;
  double sum_error = 0.0;  // |sum P - (d + 1) I|
};
MubVerification verify_mub(const MubFrame& mub);

/// max entrywise |sum_{r,s} P X P / (d + 1) - ((tr X) I + X) / (d + 1)|.
double depolarize_check(const MubFrame& mub, const ComplexMatrix& x);

enum class Feasibility { feasible, infeasible, unknown };
const char* to_string(Feasibility verdict);

struct RealFeasibilityReport {
  std::size_t dim = 0;
  std::size_t required_count = 0;
  Rational required_overlap;
  Rational alpha;
  Rational beta;
  Rational delsarte_bound;
  std::optional<std::size_t> known_max;
  Feasibility verdict = Feasibility::unknown;
};

/// Minimal informationally complete sky measurement over real symmetric
/// operators: d(d+1)/2 equiangular projectors with the overlap forced by the
/// two-design constraints.
RealFeasibilityReport real_sic_feasibility(std::size_t dim);

}  // namespace sicq
