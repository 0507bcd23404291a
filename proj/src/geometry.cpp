#include "sicq/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <thread>

#include "sicq/errors.hpp"
#include "sicq/random.hpp"
#include "sicq/sicrep.hpp"
#include "sicq/urgleichung.hpp"

namespace sicq {

namespace {

constexpr double kZeroEntry = 1e-12;

void require_dim(std::size_t dim, const char* op) {
  if (dim < 2) throw UnsupportedError(std::string(op) + " needs d >= 2");
}

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

// Zero count of a flat zeros-bound vector; throws if z is not of that form.
void require_flat_zeros(const ProbVector& z, std::size_t dim) {
  if (z.size() != dim * dim) throw DimensionError("zeros_overlap_test: vector length must be d^2");
  const double level = 2.0 / (static_cast<double>(dim) * (static_cast<double>(dim) + 1.0));
  std::size_t zeros = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] < kZeroEntry) {
      ++zeros;
    } else if (std::abs(z[i] - level) > kDefaultTol) {
      throw ValidationError("zeros_overlap_test: entry " + std::to_string(i) + " is neither 0 nor 2/(d(d+1))");
    }
  }
  if (zeros != dim * (dim - 1) / 2) {
    throw ValidationError("zeros_overlap_test: expected d(d-1)/2 zeros, found " + std::to_string(zeros));
  }
}

double pairwise_deviation(const std::vector<ProbVector>& ps, double target) {
  double worst = 0.0;
  for (std::size_t a = 0; a < ps.size(); ++a) {
    for (std::size_t b = a + 1; b < ps.size(); ++b) worst = std::max(worst, std::abs(ps[a].dot(ps[b]) - target));
  }
  return worst;
}

random::Rng sample_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return random::Rng(seq);
}

}  // namespace

ProbVector basis_distribution(std::size_t dim, std::size_t k) {
  require_dim(dim, "basis_distribution");
  if (k >= dim * dim) throw UnsupportedError("basis_distribution: index out of range");
  const double d = static_cast<double>(dim);
  Eigen::VectorXd e = Eigen::VectorXd::Constant(as_int(dim * dim), 1.0 / (d * (d + 1.0)));
  e[as_int(k)] = 1.0 / d;
  return ProbVector::from_values(e, kExactTol);
}

GeometryReport bloch_geometry(std::size_t dim) {
  require_dim(dim, "bloch_geometry");
  const std::int64_t d = as_int(dim);
  GeometryReport out;
  out.dim = dim;
  out.sphere_radius_sq = Rational(d - 1, d * d * (d + 1));
  out.center = ProbVector::uniform(dim * dim);
  out.max_zeros = dim * (dim - 1) / 2;
  out.max_equidistant = dim;
  out.flat_poke_threshold = dim * (dim - 1) / 2;
  return out;
}

Rational nflat_min_distance(std::size_t dim, std::size_t n_zeros) {
  require_dim(dim, "nflat_min_distance");
  if (n_zeros >= dim * dim) throw UnsupportedError("nflat_min_distance: need n_zeros < d^2");
  const std::int64_t d2 = as_int(dim * dim);
  const std::int64_t n = as_int(n_zeros);
  return Rational(n, d2 * (d2 - n));
}

bool nflat_pokes_out(std::size_t dim, std::size_t n_zeros) {
  return nflat_min_distance(dim, n_zeros) < bloch_geometry(dim).sphere_radius_sq;
}

EquidistantGram gram_equidistant(std::size_t dim, std::size_t n_points) {
  require_dim(dim, "gram_equidistant");
  if (n_points < 2) throw UnsupportedError("gram_equidistant needs at least two points");
  const std::int64_t d = as_int(dim);
  EquidistantGram out;
  out.lambda0 = Rational(d - as_int(n_points), d * d * (d + 1));
  out.lambda_rest = Rational(1, d * (d + 1));
  out.feasible = out.lambda0 >= 0;
  out.rank = n_points - 1 + (out.lambda0 != Rational(0) ? 1 : 0);
  return out;
}

ProbVector flat_zeros_vector(std::size_t dim, std::span<const std::size_t> zero_positions) {
  require_dim(dim, "flat_zeros_vector");
  const std::size_t want = dim * (dim - 1) / 2;
  if (zero_positions.size() != want) {
    throw ValidationError("flat_zeros_vector: expected " + std::to_string(want) + " zero positions, got " +
                          std::to_string(zero_positions.size()));
  }
  const std::set<std::size_t> distinct(zero_positions.begin(), zero_positions.end());
  if (distinct.size() != want) throw ValidationError("flat_zeros_vector: zero positions repeat");
  if (*distinct.rbegin() >= dim * dim) throw UnsupportedError("flat_zeros_vector: position out of range");
  const double d = static_cast<double>(dim);
  Eigen::VectorXd z = Eigen::VectorXd::Constant(as_int(dim * dim), 2.0 / (d * (d + 1.0)));
  for (std::size_t k : distinct) z[as_int(k)] = 0.0;
  return ProbVector::from_values(z, kExactTol);
}

ZerosOverlap zeros_overlap_test(const ProbVector& z1, const ProbVector& z2, std::size_t dim) {
  require_dim(dim, "zeros_overlap_test");
  require_flat_zeros(z1, dim);
  require_flat_zeros(z2, dim);
  ZerosOverlap out;
  for (std::size_t i = 0; i < z1.size(); ++i) {
    if (z1[i] >= kZeroEntry && z2[i] >= kZeroEntry) ++out.shared_nonzero;
  }
  out.overlap = z1.dot(z2);
  out.admissible = 4 * out.shared_nonzero >= dim * (dim + 1);
  return out;
}

double delsarte_bound(std::int64_t f, double c) {
  const double fd = static_cast<double>(f);
  if (f <= 0 || c <= 0.0 || fd * c >= 1.0) {
    throw PreconditionError("delsarte_bound: need 0 < c < 1/f, got f = " + std::to_string(f) +
                            ", c = " + std::to_string(c));
  }
  return fd * (1.0 - c) / (1.0 - fd * c);
}

Rational delsarte_bound(std::int64_t f, const Rational& c) {
  if (f <= 0 || c <= 0 || f * c >= 1) {
    throw PreconditionError("delsarte_bound: need 0 < c < 1/f, got f = " + std::to_string(f) + ", c = " +
                            to_string(c));
  }
  return f * (1 - c) / (1 - f * c);
}

IsuReport isu_bound_check(const SicFrame& frame, const Povm& ground, double tol) {
  const ConditionalMatrix r = conditional_from_frame(frame, ground);
  const double n = static_cast<double>(frame.size());
  const double m = static_cast<double>(ground.size());
  const double d = static_cast<double>(frame.dim());
  IsuReport out;
  out.bound = (d + m) / (d * d * (d + 1.0));
  const Eigen::VectorXd sums = r.row_sums();
  out.max_row_sum_error = (sums.array() - n / m).abs().maxCoeff();
  out.isu = out.max_row_sum_error <= tol;
  if (!out.isu) return out;
  for (std::size_t j = 0; j < ground.size(); ++j) {
    const double purity = ((m / n) * r.matrix().row(as_int(j))).squaredNorm();
    out.max_posterior_purity = std::max(out.max_posterior_purity, purity);
  }
  out.bound_holds = out.max_posterior_purity <= out.bound + tol;
  return out;
}

std::vector<SweepSample> sweep(const SicFrame& frame, std::size_t samples, std::uint64_t seed, unsigned threads) {
  const std::size_t d = frame.dim();
  const double target = 2.0 / (static_cast<double>(d) * (static_cast<double>(d) + 1.0));
  std::vector<SweepSample> out(samples);
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      auto rng = sample_rng(seed, i);
      const ProbVector p = rho_to_prob(frame, random::pure_state(d, rng), frame.working_tolerance());
      SweepSample& s = out[i];
      s.sphere_residual = std::abs(p.sum_of_squares() - target);
      s.zero_count = static_cast<std::size_t>((p.values().array() < kZeroEntry).count());
      s.max_component = p.values().maxCoeff();
    }
  };
  const unsigned workers = std::max(1u, threads == 0 ? std::thread::hardware_concurrency() : threads);
  if (workers == 1 || samples < 2 * workers) {
    run(0, samples);
    return out;
  }
  std::vector<std::future<void>> jobs;
  const std::size_t chunk = (samples + workers - 1) / workers;
  for (std::size_t begin = 0; begin < samples; begin += chunk) {
    jobs.push_back(std::async(std::launch::async, run, begin, std::min(samples, begin + chunk)));
  }
  for (auto& job : jobs) job.get();
  return out;
}

double equidistant_construction(const SicFrame& frame, std::size_t n_points, std::uint64_t seed) {
  const std::size_t d = frame.dim();
  if (n_points < 2 || n_points > d) throw UnsupportedError("equidistant_construction needs 2 <= n <= d");
  auto rng = sample_rng(seed, 0);
  const UnitaryMatrix u = random::unitary(d, rng);
  std::vector<ProbVector> ps;
  for (std::size_t a = 0; a < n_points; ++a) {
    const ComplexVector column = u.matrix().col(as_int(a));
    ps.push_back(rho_to_prob(frame, DensityOperator::pure(column), frame.working_tolerance()));
  }
  const double dd = static_cast<double>(d);
  return pairwise_deviation(ps, 1.0 / (dd * (dd + 1.0)));
}

EquidistantTrials equidistant_trials(const SicFrame& frame, std::size_t n_points, std::size_t trials,
                                     std::uint64_t seed) {
  const std::size_t d = frame.dim();
  if (n_points < 2) throw UnsupportedError("equidistant_trials needs at least two points");
  const double dd = static_cast<double>(d);
  EquidistantTrials out{d, n_points, trials, 0, std::numeric_limits<double>::infinity()};
  auto rng = sample_rng(seed, 0);
  std::vector<ProbVector> ps;
  for (std::size_t t = 0; t < trials; ++t) {
    ps.clear();
    for (std::size_t a = 0; a < n_points; ++a) {
      ps.push_back(rho_to_prob(frame, random::pure_state(d, rng), frame.working_tolerance()));
    }
    const double dev = pairwise_deviation(ps, 1.0 / (dd * (dd + 1.0)));
    out.best_deviation = std::min(out.best_deviation, dev);
    if (dev < 1e-6) ++out.hits;
  }
  return out;
}

}  // namespace sicq
