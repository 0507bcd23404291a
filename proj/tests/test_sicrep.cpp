#include <doctest.h>

#include <numeric>

#include "frames.hpp"
#include "gen.hpp"
#include "oracles.hpp"
#include "sicq/errors.hpp"
#include "sicq/geometry.hpp"
#include "sicq/sicrep.hpp"

using namespace sicq;
using testing::density;
using testing::frame_for;

namespace {

ProbVector prob(std::initializer_list<double> v) {
  const std::vector<double> values(v);
  return ProbVector::from_values(std::span<const double>(values));
}

ProbVector flat(std::size_t d) { return ProbVector::uniform(d * d); }

std::vector<double> basis_distribution_ref(std::size_t d, std::size_t k) {
  const double dd = static_cast<double>(d);
  std::vector<double> e(d * d, 1.0 / (dd * (dd + 1.0)));
  e[k] = 1.0 / dd;
  return e;
}

}  // namespace

TEST_CASE("rho_to_prob") {
  for (std::size_t d : {2u, 3u}) {
    const SicFrame& f = frame_for(d);
    const ProbVector p = rho_to_prob(f, DensityOperator::maximally_mixed(d));
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(std::abs(p[i] - 1.0 / static_cast<double>(d * d)) < 1e-15);
    for (std::size_t k = 0; k < f.size(); ++k) {
      const ProbVector e = rho_to_prob(f, density(f[k]));
      const auto ref = basis_distribution_ref(d, k);
      for (std::size_t i = 0; i < e.size(); ++i) CHECK(std::abs(e[i] - ref[i]) < 1e-12);
    }
  }
  ComplexVector phi = ComplexVector::Zero(3);
  phi[2] = 1.0;
  const ProbVector z = rho_to_prob(frame_for(3), DensityOperator::pure(phi));
  const double want[9] = {0, 1, 1, 0, 1, 1, 0, 1, 1};
  for (std::size_t i = 0; i < 9; ++i) CHECK(std::abs(z[i] - want[i] / 6.0) < 1e-12);
  CHECK_THROWS_AS(rho_to_prob(frame_for(2), DensityOperator::maximally_mixed(3)), DimensionError);

  gen::Gen g(1);
  const SicFrame& f = frame_for(3);
  const ComplexMatrix rho = g.mixed(3);
  const ProbVector p = rho_to_prob(f, density(rho));
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(std::abs(p[i] - oracle::trace_product(oracle::from_eigen(rho), oracle::from_eigen(f[i])).real() / 3.0) < 1e-12);
  }
}

TEST_CASE("prob_to_rho") {
  const SicFrame& f = frame_for(3);
  CHECK(max_abs_diff(prob_to_rho(f, flat(3)), ComplexMatrix::Identity(3, 3) / 3.0) < 1e-12);
  for (std::size_t k = 0; k < 9; ++k) CHECK(max_abs_diff(prob_to_rho(f, basis_distribution(3, k)), f[k]) < 1e-10);
  std::vector<double> spike(9, 0.0);
  spike[0] = 1.0;
  const ComplexMatrix bad = prob_to_rho(f, ProbVector::from_values(std::span<const double>(spike)));
  CHECK(hermitian_eigenvalues(bad)[0] < 0.0);
  CHECK(std::abs(bad.trace() - 1.0) < 1e-12);
  CHECK_THROWS_AS(prob_to_rho(f, flat(2)), DimensionError);
}

TEST_CASE("validity_test") {
  const SicFrame& f = frame_for(3);
  for (std::size_t k = 0; k < 9; ++k) CHECK(validity_test(f, basis_distribution(3, k)).valid);
  CHECK(validity_test(f, flat(3)).valid);
  const ProbVector z = prob({0, 0, 0, 1 / 6.0, 1 / 6.0, 1 / 6.0, 1 / 6.0, 1 / 6.0, 1 / 6.0});
  const ValidityReport r = validity_test(f, z);
  CHECK_FALSE(r.valid);
  CHECK(std::abs(r.min_eigenvalue + 1.0 / 3.0) < 1e-12);
}

TEST_CASE("structure tensor") {
  for (std::size_t d : {2u, 3u}) {
    const SicFrame& f = frame_for(d);
    const StructureTensor s = build_structure(f);
    const double dd = static_cast<double>(d);
    CHECK(s.dense());
    for (std::size_t i = 0; i < s.size(); ++i) {
      Complex over_k = 0.0;
      for (std::size_t k = 0; k < s.size(); ++k) over_k += s.alpha(i, i, k);
      CHECK(std::abs(over_k - 1.0) < 1e-12);
      CHECK(std::abs(s.c(i, i, i) - 1.0) < 1e-12);
    }
    Complex over_i = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) over_i += s.alpha(i, 0, 0);
    CHECK(std::abs(over_i - dd) < 1e-12);

    const StructureSums sums = structure_sums(s);
    CHECK(sums.alpha_k_error < 1e-12);
    CHECK(sums.alpha_i_error < 1e-12);
    CHECK(sums.alpha_j_error < 1e-12);
    CHECK(sums.c_symmetry_error < 1e-12);

    // Triple traces by brute force.
    std::vector<oracle::Mat> ps;
    for (const auto& p : f.projectors()) ps.push_back(oracle::from_eigen(p));
    for (std::size_t i = 0; i < s.size(); i += 2) {
      for (std::size_t j = 1; j < s.size(); j += 3) {
        for (std::size_t k = 0; k < s.size(); ++k) {
          const oracle::C t = oracle::trace_product(oracle::mul(ps[i], ps[j]), ps[k]);
          const double overlap = ((i == j ? dd : 0.0) + 1.0) / (dd + 1.0);
          CHECK(std::abs(s.alpha(i, j, k) - ((dd + 1.0) * t - overlap) / dd) < 1e-12);
        }
      }
    }
  }
  auto projectors = frame_for(2).projectors();
  projectors[0] = ComplexMatrix::Identity(2, 2) / 2.0;
  CHECK_THROWS_AS(build_structure(SicFrame::from_projectors(2, projectors, AnalyticProvenance{})), ValidationError);
  CHECK_THROWS_AS(build_structure(frame_for(2)).triple(0, 0, 4), UnsupportedError);
}

TEST_CASE("structure tensor above the dense limit") {
  std::vector<std::uint64_t> seeds(16);
  std::iota(seeds.begin(), seeds.end(), 0);
  SearchOptions o;
  o.mode = SearchMode::weyl_heisenberg;
  const SicFrame f = search_sic(9, seeds, 5000, 1e-8, o);
  const StructureTensor s = build_structure(f);
  CHECK_FALSE(s.dense());
  const auto& vs = *f.vectors();
  for (std::size_t i : {0u, 5u, 80u}) {
    for (std::size_t j : {1u, 40u}) {
      for (std::size_t k : {2u, 77u}) {
        const Complex t = vs[i].dot(vs[j]) * vs[j].dot(vs[k]) * vs[k].dot(vs[i]);
        CHECK(std::abs(s.triple(i, j, k) - t) < 1e-12);
      }
    }
  }
}

TEST_CASE("purity_check") {
  gen::Gen g(9);
  for (std::size_t d = 2; d <= 5; ++d) {
    const SicFrame& f = frame_for(d);
    const StructureTensor s = build_structure(f);
    for (std::size_t k = 0; k < f.size(); k += 3) {
      const PurityReport r = purity_check(s, basis_distribution(d, k));
      CHECK(r.quadratic <= 1e-10);
      CHECK(r.cubic <= 1e-10);
      CHECK(r.fixed_point <= 1e-10);
    }
    const PurityReport mixed = purity_check(s, flat(d));
    const double dd = static_cast<double>(d);
    CHECK(std::abs(mixed.quadratic - std::abs(1.0 / (dd * dd) - 2.0 / (dd * (dd + 1.0)))) < 1e-15);
    CHECK_FALSE(mixed.pure);
    for (int t = 0; t < 20; ++t) {
      const PurityReport r = purity_check(s, rho_to_prob(f, density(g.pure(d)), f.working_tolerance()));
      CHECK(r.pure);
    }
    CHECK_THROWS_AS(purity_check(s, flat(d + 1)), DimensionError);
  }
}

TEST_CASE("magma decomposition") {
  const StructureTensor s2 = build_structure(frame_for(2));
  const MagmaReport r2 = magma_decomposition_check(s2, 0);
  CHECK(r2.rank == 2);
  CHECK(r2.idempotency_residual <= 1e-9);
  CHECK(r2.pass);
  const StructureTensor s3 = build_structure(frame_for(3));
  for (std::size_t k = 0; k < 9; ++k) CHECK(magma_decomposition_check(s3, k).rank == 4);
  gen::Gen g(31);
  for (int t = 0; t < 20; ++t) {
    const ProbVector p = rho_to_prob(frame_for(3), density(g.pure(3)));
    for (std::size_t k = 0; k < 9; ++k) CHECK(magma_quadratic_residual(s3, p, k) <= 1e-9);
  }
  CHECK_THROWS_AS(magma_decomposition_check(s3, 9), UnsupportedError);
}

TEST_CASE("square-root parameterization") {
  for (std::size_t d : {2u, 3u}) {
    const SicFrame& f = frame_for(d);
    const StructureTensor s = build_structure(f);
    const auto n = static_cast<Eigen::Index>(d * d);
    for (std::size_t k = 0; k < d * d; ++k) {
      Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
      b[static_cast<Eigen::Index>(k)] = 1.0;
      const ProbVector p = sqrt_parameterize(s, SqrtParam::from_values(d, b));
      CHECK((p.values() - basis_distribution(d, k).values()).cwiseAbs().maxCoeff() < 1e-12);
    }
    const double t = std::pow(static_cast<double>(d), -1.5);
    const ProbVector p = sqrt_parameterize(s, SqrtParam::from_values(d, Eigen::VectorXd::Constant(n, t)));
    CHECK((p.values() - flat(d).values()).cwiseAbs().maxCoeff() < 1e-12);
    gen::Gen g(d);
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::VectorXd b(n);
      for (auto& x : b) x = g.normal();
      const SqrtParam sp = SqrtParam::project(d, b);
      CHECK(std::abs(SqrtParam::constraint(d, sp.values()) - static_cast<double>(d + 1)) < 1e-12);
      CHECK(validity_test(f, sqrt_parameterize(s, sp)).valid);
    }
    CHECK_THROWS_AS(SqrtParam::from_values(d, Eigen::VectorXd::Ones(n)), ValidationError);
  }
}

TEST_CASE("sic_inner") {
  gen::Gen g(12);
  for (std::size_t d : {2u, 3u, 4u}) {
    const double dd = static_cast<double>(d);
    const ProbVector e = basis_distribution(d, 1);
    CHECK(std::abs(sic_inner(e, e, d) - 1.0) < 1e-12);
    CHECK(std::abs(sic_inner(flat(d), flat(d), d) - 1.0 / dd) < 1e-12);
    const SicFrame& f = frame_for(d);
    for (int t = 0; t < 20; ++t) {
      const ComplexMatrix rho = g.state(d);
      const ComplexMatrix sigma = g.state(d);
      const double direct = hs_inner(rho, sigma).real();
      const double via = sic_inner(rho_to_prob(f, density(rho), f.working_tolerance()),
                                   rho_to_prob(f, density(sigma), f.working_tolerance()), d);
      CHECK(std::abs(via - direct) < 1e-10);
      CHECK(via >= -1e-12);
      CHECK(via <= 1.0 + 1e-12);
    }
  }
  CHECK_THROWS_AS(sic_inner(flat(2), flat(3), 2), DimensionError);
}

TEST_CASE("state-space properties over random states") {
  gen::Gen g(4242);
  for (std::size_t d = 2; d <= 5; ++d) {
    const SicFrame& f = frame_for(d);
    const double tol = f.working_tolerance();
    const double dd = static_cast<double>(d);
    const StructureTensor s = build_structure(f);
    for (int t = 0; t < 50; ++t) {
      const ComplexMatrix rho = g.state(d);
      const ProbVector p = rho_to_prob(f, density(rho), tol);
      const ComplexMatrix back = prob_to_rho(f, p);
      CHECK(max_abs_diff(back, rho) <= 1e-10);
      const ProbVector again = rho_to_prob(f, DensityOperator::from_matrix(back, tol), tol);
      CHECK((again.values() - p.values()).cwiseAbs().maxCoeff() <= 1e-10);
      const ProbVector q = rho_to_prob(f, density(g.state(d)), tol);
      CHECK(p.dot(q) >= 1.0 / (dd * (dd + 1.0)) - 1e-12);
    }
    std::size_t most_zeros = 0;
    double largest = 0.0;
    for (int t = 0; t < 10000; ++t) {
      const ProbVector p = rho_to_prob(f, density(g.pure(d)), tol);
      most_zeros = std::max(most_zeros, static_cast<std::size_t>((p.values().array() < 1e-12).count()));
      largest = std::max(largest, p.values().maxCoeff());
    }
    CHECK(most_zeros <= d * (d - 1) / 2);
    CHECK(largest <= 1.0 / dd + 1e-12);
    int agree = 0;
    for (int t = 0; t < 200; ++t) {
      const ProbVector p = rho_to_prob(f, density(t % 2 ? g.pure(d) : g.mixed(d)), tol);
      if (purity_check(s, p).pure == is_rank_one_projector(prob_to_rho(f, p))) ++agree;
    }
    CHECK(agree == 200);
  }
}
