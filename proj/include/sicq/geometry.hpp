#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sicq/operators.hpp"
#include "sicq/probability.hpp"
#include "sicq/rational.hpp"
#include "sicq/sicframe.hpp"

namespace sicq {

/// e_k: 1/d in slot k (0-based), 1/(d(d+1)) elsewhere.
ProbVector basis_distribution(std::size_t dim, std::size_t k);

struct GeometryReport {
  std::size_t dim = 0;
  Rational sphere_radius_sq;  // (d-1)/(d^2(d+1))
  ProbVector center = ProbVector::uniform(1);
  std::size_t max_zeros = 0;
  std::size_t max_equidistant = 0;
  std::size_t flat_poke_threshold = 0;
};

GeometryReport bloch_geometry(std::size_t dim);

/// Squared distance from the simplex centre to a flat with n zero coordinates:
/// n/(d^2(d^2 - n)).
Rational nflat_min_distance(std::size_t dim, std::size_t n_zeros);
/// The pure-state sphere leaves the simplex across such a flat, i.e. the
/// distance is below the sphere radius.
bool nflat_pokes_out(std::size_t dim, std::size_t n_zeros);

struct EquidistantGram {
  Rational lambda0;      // (d - n)/(d^2(d+1)), multiplicity 1
  Rational lambda_rest;  // 1/(d(d+1)), multiplicity n - 1
  bool feasible = false;
  std::size_t rank = 0;
};

EquidistantGram gram_equidistant(std::size_t dim, std::size_t n_points);

/// Zeros at the given 0-based positions, 2/(d(d+1)) elsewhere. Needs exactly
/// d(d-1)/2 distinct positions.
ProbVector flat_zeros_vector(std::size_t dim, std::span<const std::size_t> zero_positions);

struct ZerosOverlap {
  std::size_t shared_nonzero = 0;
  double overlap = 0.0;
  bool admissible = false;  // overlap >= 1/(d(d+1)), i.e. 4g >= d(d+1)
};

ZerosOverlap zeros_overlap_test(const ProbVector& z1, const ProbVector& z2, std::size_t dim);

/// f(1 - c)/(1 - f c). Throws PreconditionError unless 0 < c < 1/f.
double delsarte_bound(std::int64_t f, double c);
Rational delsarte_bound(std::int64_t f, const Rational& c);

struct IsuReport {
  bool isu = false;
  double max_row_sum_error = 0.0;  // |sum_i r(j|i) - d^2/m|
  double bound = 0.0;              // (d + m)/(d^2(d+1))
  double max_posterior_purity = 0.0;
  bool bound_holds = false;
};

IsuReport isu_bound_check(const SicFrame& frame, const Povm& ground, double tol = kDefaultTol);

struct SweepSample {
  double sphere_residual = 0.0;  // |sum p^2 - 2/(d(d+1))|
  std::size_t zero_count = 0;    // entries below 1e-12
  double max_component = 0.0;
};

/// Haar-random pure states pushed through the frame. Sample i draws from its
/// own generator seeded by (seed, i), so results do not depend on the thread
/// count.
std::vector<SweepSample> sweep(const SicFrame& frame, std::size_t samples, std::uint64_t seed, unsigned threads = 0);

struct EquidistantTrials {
  std::size_t dim = 0;
  std::size_t n_points = 0;
  std::size_t trials = 0;
  std::size_t hits = 0;  // trials whose worst pairwise deviation was below 1e-6
  double best_deviation = 0.0;
};

/// Largest |<p_a|p_b> - 1/(d(d+1))| over pairs drawn from n orthonormal states
/// (n <= d), taken as columns of a random unitary.
double equidistant_construction(const SicFrame& frame, std::size_t n_points, std::uint64_t seed);

/// Random search for n mutually maximally distant pure states. Reports counts
/// only; a miss is not a proof of non-existence.
EquidistantTrials equidistant_trials(const SicFrame& frame, std::size_t n_points, std::size_t trials,
                                     std::uint64_t seed);

}  // namespace sicq
