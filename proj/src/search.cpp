#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <thread>

#include "lbfgs.hpp"
#include "sicq/errors.hpp"
#include "sicq/sicframe.hpp"

namespace sicq {

namespace {

// Real parameter layout: vector k occupies [2 d k, 2 d (k + 1)) as
// (re_0, im_0, re_1, im_1, ...).
ComplexMatrix unpack(const Eigen::VectorXd& x, std::size_t d, std::size_t count) {
  ComplexMatrix v(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(count));
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t a = 0; a < d; ++a) {
      const auto base = static_cast<Eigen::Index>(2 * (k * d + a));
      v(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(k)) = Complex(x[base], x[base + 1]);
    }
  }
  return v;
}

void pack(const ComplexMatrix& v, Eigen::VectorXd& x) {
  const auto d = static_cast<std::size_t>(v.rows());
  for (std::size_t k = 0; k < static_cast<std::size_t>(v.cols()); ++k) {
    for (std::size_t a = 0; a < d; ++a) {
      const auto base = static_cast<Eigen::Index>(2 * (k * d + a));
      const Complex z = v(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(k));
      x[base] = z.real();
      x[base + 1] = z.imag();
    }
  }
}

void normalize_blocks(Eigen::VectorXd& x, std::size_t block) {
  const auto b = static_cast<Eigen::Index>(block);
  for (Eigen::Index k = 0; k < x.size() / b; ++k) {
    auto seg = x.segment(k * b, b);
    const double n = seg.norm();
    if (n > 0.0) seg /= n;
  }
}

// Chain rule through psi = x / |x| for each column; x columns are unit after
// retraction so this is the tangent projection.
void project_tangent(const ComplexMatrix& v, ComplexMatrix& grad) {
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    const double radial = (v.col(k).adjoint() * grad.col(k))(0, 0).real();
    grad.col(k) -= radial * v.col(k);
  }
}

// The Frobenius objective on unit vectors, shifted by its SIC minimum and
// scaled by d^4:
//   d^4 (F - F_min) = sum_{i != j} (t_ij - c)^2 + 2 c ||S - d I||^2
// with t_ij = |<psi_i|psi_j>|^2, c = 1/(d+1), S = sum_i |psi_i><psi_i|. Both
// terms are nonnegative, so the value keeps full relative precision near the
// minimum.
double exact_excess(const Eigen::VectorXd& x, Eigen::VectorXd& g, std::size_t d, double* residual) {
  const std::size_t n = d * d;
  const double c = 1.0 / (static_cast<double>(d) + 1.0);
  ComplexMatrix v = unpack(x, d, n);
  for (Eigen::Index k = 0; k < v.cols(); ++k) v.col(k) /= v.col(k).norm();
  const ComplexMatrix gram = v.adjoint() * v;
  ComplexMatrix weighted(gram.rows(), gram.cols());
  double value = 0.0;
  double worst = 0.0;
  for (Eigen::Index j = 0; j < gram.cols(); ++j) {
    for (Eigen::Index i = 0; i < gram.rows(); ++i) {
      if (i == j) {
        weighted(i, j) = 0.0;
        continue;
      }
      const double dev = std::norm(gram(i, j)) - c;
      value += dev * dev;
      worst = std::max(worst, std::abs(dev));
      weighted(i, j) = dev * gram(i, j);
    }
  }
  const auto di = static_cast<Eigen::Index>(d);
  const ComplexMatrix excess = v * v.adjoint() - static_cast<double>(d) * ComplexMatrix::Identity(di, di);
  value += 2.0 * c * excess.squaredNorm();
  if (residual) *residual = worst;

  // dL/d conj(psi) = 4 (V (D o G) + c E V); real gradient is twice that.
  ComplexMatrix grad = 8.0 * (v * weighted + c * excess * v);
  project_tangent(v, grad);
  pack(grad, g);
  return value;
}

// Weyl-Heisenberg orbit of one fiducial: displacement D_ab = X^a Z^b with
// (X^a Z^b psi)_k = w^{b (k - a)} psi_{k - a}.
ComplexVector displace(const ComplexVector& psi, std::size_t a, std::size_t b) {
  const auto d = static_cast<std::size_t>(psi.size());
  ComplexVector out(psi.size());
  for (std::size_t k = 0; k < d; ++k) {
    const std::size_t src = (k + d - a) % d;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>((b * src) % d) / static_cast<double>(d);
    out[static_cast<Eigen::Index>(k)] = std::polar(1.0, angle) * psi[static_cast<Eigen::Index>(src)];
  }
  return out;
}

ComplexVector displace_adjoint(const ComplexVector& psi, std::size_t a, std::size_t b) {
  // (X^a Z^b)^dagger = Z^{-b} X^{-a}: (Z^{-b} X^{-a} psi)_k = w^{-b k} psi_{k + a}
  const auto d = static_cast<std::size_t>(psi.size());
  ComplexVector out(psi.size());
  for (std::size_t k = 0; k < d; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>((b * k) % d) / static_cast<double>(d);
    out[static_cast<Eigen::Index>(k)] = std::polar(1.0, angle) * psi[static_cast<Eigen::Index>((k + a) % d)];
  }
  return out;
}

// Same objective restricted to a WH orbit; the orbit is always a tight frame so
// only the overlap term survives (divided by d^2, the orbit multiplicity).
double wh_excess(const Eigen::VectorXd& x, Eigen::VectorXd& g, std::size_t d, double* residual) {
  const double c = 1.0 / (static_cast<double>(d) + 1.0);
  ComplexMatrix v = unpack(x, d, 1);
  v.col(0) /= v.col(0).norm();
  const ComplexVector psi = v.col(0);
  ComplexMatrix grad = ComplexMatrix::Zero(v.rows(), 1);
  double value = 0.0;
  double worst = 0.0;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      if (a == 0 && b == 0) continue;
      const ComplexVector dpsi = displace(psi, a, b);
      const Complex z = psi.dot(dpsi);  // psi^dagger D psi
      const double dev = std::norm(z) - c;
      value += dev * dev;
      worst = std::max(worst, std::abs(dev));
      // d t / d conj(psi) = conj(z) D psi + z D^dagger psi
      grad.col(0) += 2.0 * dev * (std::conj(z) * dpsi + z * displace_adjoint(psi, a, b));
    }
  }
  if (residual) *residual = worst;
  grad *= 2.0;
  project_tangent(v, grad);
  pack(grad, g);
  return value;
}

std::vector<ComplexVector> wh_orbit(const ComplexVector& fiducial) {
  const auto d = static_cast<std::size_t>(fiducial.size());
  std::vector<ComplexVector> out;
  out.reserve(d * d);
  const ComplexVector psi = fiducial / fiducial.norm();
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) out.push_back(displace(psi, a, b));
  }
  return out;
}

double pairwise_residual(const std::vector<ComplexVector>& vectors) {
  const double c = 1.0 / (static_cast<double>(vectors.front().size()) + 1.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    worst = std::max(worst, std::abs(vectors[i].squaredNorm() - 1.0));
    for (std::size_t j = i + 1; j < vectors.size(); ++j) {
      worst = std::max(worst, std::abs(std::norm(vectors[i].dot(vectors[j])) - c));
    }
  }
  return worst;
}

void check_search_range(std::size_t dim) {
  if (dim < kMinSearchDim || dim > kMaxSearchDim) {
    throw UnsupportedError("SIC search supports 2 <= d <= 12, got d = " + std::to_string(dim));
  }
}

}  // namespace

SeedOutcome search_from_seed(std::size_t dim, std::uint64_t seed, std::size_t max_iters, double target_residual,
                             const SearchOptions& options) {
  check_search_range(dim);
  const bool wh = options.mode == SearchMode::weyl_heisenberg;
  const std::size_t count = wh ? 1 : dim * dim;

  std::seed_seq sequence{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(dim), static_cast<std::uint32_t>(options.mode)};
  std::mt19937_64 rng(sequence);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd x0(static_cast<Eigen::Index>(2 * dim * count));
  for (Eigen::Index i = 0; i < x0.size(); ++i) x0[i] = normal(rng);

  const std::size_t block = 2 * dim;
  const double floor = std::min(target_residual, options.polish_residual);
  double residual = std::numeric_limits<double>::infinity();
  detail::LbfgsProblem problem;
  problem.objective = [&](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    return wh ? wh_excess(x, g, dim, nullptr) : exact_excess(x, g, dim, nullptr);
  };
  problem.retract = [block](Eigen::VectorXd& x) { normalize_blocks(x, block); };
  problem.done = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd scratch(x.size());
    wh ? wh_excess(x, scratch, dim, &residual) : exact_excess(x, scratch, dim, &residual);
    return residual <= floor;
  };

  const detail::LbfgsResult result = detail::minimize_lbfgs(problem, std::move(x0), max_iters);

  const ComplexMatrix v = unpack(result.x, dim, count);
  SeedOutcome out;
  out.seed = seed;
  out.iterations = result.iterations;
  if (wh) {
    out.vectors = wh_orbit(v.col(0));
  } else {
    out.vectors.reserve(count);
    for (Eigen::Index k = 0; k < v.cols(); ++k) out.vectors.push_back(v.col(k) / v.col(k).norm());
  }
  out.residual = pairwise_residual(out.vectors);
  return out;
}

SicFrame search_sic(std::size_t dim, std::span<const std::uint64_t> seeds, std::size_t max_iters,
                    double target_residual, const SearchOptions& options) {
  check_search_range(dim);
  if (seeds.empty()) throw UnsupportedError("SIC search needs at least one seed");
  if (!(target_residual > 0.0)) throw UnsupportedError("target residual must be positive");

  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  double best = std::numeric_limits<double>::infinity();
  // Batches of `threads` seeds; within a batch the earliest success in list
  // order wins, so the outcome does not depend on the thread count.
  for (std::size_t start = 0; start < seeds.size(); start += threads) {
    const std::size_t stop = std::min(seeds.size(), start + threads);
    std::vector<SeedOutcome> outcomes(stop - start);
    if (stop - start == 1) {
      outcomes[0] = search_from_seed(dim, seeds[start], max_iters, target_residual, options);
    } else {
      std::vector<std::future<SeedOutcome>> jobs;
      for (std::size_t i = start; i < stop; ++i) {
        jobs.push_back(std::async(std::launch::async, [&, i] {
          return search_from_seed(dim, seeds[i], max_iters, target_residual, options);
        }));
      }
      for (std::size_t i = 0; i < jobs.size(); ++i) outcomes[i] = jobs[i].get();
    }
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      auto& o = outcomes[i];
      best = std::min(best, o.residual);
      if (o.residual <= target_residual) {
        SearchedProvenance prov{o.seed, o.iterations, o.residual, options.mode, start + i + 1};
        return SicFrame::from_vectors(std::move(o.vectors), prov);
      }
    }
  }
  throw SearchFailed("no seed reached residual " + std::to_string(target_residual) + " in dimension " +
                         std::to_string(dim) + " (best " + std::to_string(best) + ")",
                     best);
}

}  // namespace sicq
