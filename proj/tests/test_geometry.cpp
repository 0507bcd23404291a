#include <doctest.h>

#include <algorithm>
#include <set>

#include "frames.hpp"
#include "gen.hpp"
#include "oracles.hpp"
#include "sicq/errors.hpp"
#include "sicq/geometry.hpp"
#include "sicq/sicrep.hpp"

using namespace sicq;
using testing::frame_for;

TEST_CASE("basis distributions") {
  const ProbVector e = basis_distribution(3, 4);
  CHECK(e[4] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(e[0] == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
  CHECK_THROWS_AS(basis_distribution(3, 9), UnsupportedError);
  for (std::size_t d = 2; d <= 6; ++d) {
    const ProbVector a = basis_distribution(d, 0);
    const ProbVector b = basis_distribution(d, 1);
    const double dd = static_cast<double>(d);
    CHECK(std::abs(a.dot(b) - (dd + 2.0) / (dd * (dd + 1.0) * (dd + 1.0))) < 1e-15);
    CHECK(std::abs(sic_inner(a, b, d) - 1.0 / (dd + 1.0)) < 1e-14);
  }
}

TEST_CASE("bloch_geometry constants are exact") {
  for (std::int64_t d = 2; d <= 20; ++d) {
    const GeometryReport g = bloch_geometry(static_cast<std::size_t>(d));
    CHECK(g.sphere_radius_sq == oracle::basis_radius_sq(d));
    CHECK(g.sphere_radius_sq == Rational(d - 1, d * d * (d + 1)));
    CHECK(g.max_zeros == static_cast<std::size_t>(d * (d - 1) / 2));
    CHECK(g.max_equidistant == static_cast<std::size_t>(d));
    CHECK(g.center.size() == static_cast<std::size_t>(d * d));
    CHECK(std::abs(g.center[0] - 1.0 / static_cast<double>(d * d)) < 1e-15);
  }
  const GeometryReport two = bloch_geometry(2);
  CHECK(two.sphere_radius_sq == Rational(1, 12));
  CHECK_THROWS_AS(bloch_geometry(1), UnsupportedError);
}

TEST_CASE("flats") {
  for (std::int64_t d = 2; d <= 8; ++d) {
    for (std::int64_t n = 1; n < d * d; ++n) {
      const Rational dist = nflat_min_distance(static_cast<std::size_t>(d), static_cast<std::size_t>(n));
      CHECK(dist == oracle::flat_distance_sq(d, n));
      CHECK(nflat_pokes_out(static_cast<std::size_t>(d), static_cast<std::size_t>(n)) ==
            (dist < oracle::basis_radius_sq(d)));
    }
    // The zeros bound flat sits exactly at the sphere radius.
    CHECK(nflat_min_distance(static_cast<std::size_t>(d), static_cast<std::size_t>(d * (d - 1) / 2)) ==
          oracle::basis_radius_sq(d));
  }
  CHECK(nflat_min_distance(3, 2) == Rational(2, 63));
  CHECK_THROWS_AS(nflat_min_distance(3, 9), UnsupportedError);
}

TEST_CASE("equidistant Gram") {
  for (std::int64_t d = 2; d <= 10; ++d) {
    for (std::int64_t n = 2; n <= d + 2; ++n) {
      const EquidistantGram g = gram_equidistant(static_cast<std::size_t>(d), static_cast<std::size_t>(n));
      CHECK(g.lambda0 == Rational(d - n, d * d * (d + 1)));
      CHECK(g.lambda_rest == Rational(1, d * (d + 1)));
      CHECK(g.feasible == (n <= d));
      CHECK(g.rank == static_cast<std::size_t>(n - 1 + (n != d ? 1 : 0)));
      // Centred Gram built by hand: <p_a - c|p_b - c> with |p - c|^2 = r^2
      // and pairwise inner products at 1/(d(d+1)).
      const double dd = static_cast<double>(d);
      const double r2 = to_double(oracle::basis_radius_sq(d));
      const double off = 1.0 / (dd * (dd + 1.0)) - 1.0 / (dd * dd);
      Eigen::MatrixXd gm = Eigen::MatrixXd::Constant(n, n, off);
      gm.diagonal().setConstant(r2);
      const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gm).eigenvalues();
      CHECK(std::abs(ev.minCoeff() - to_double(g.lambda0)) < 1e-14);
      CHECK(std::abs(ev.maxCoeff() - to_double(g.lambda_rest)) < 1e-14);
    }
  }
  CHECK_THROWS_AS(gram_equidistant(3, 1), UnsupportedError);
}

TEST_CASE("zeros vectors and overlaps") {
  const std::size_t col[3] = {0, 3, 6};
  const ProbVector z = flat_zeros_vector(3, col);
  CHECK(z[0] == 0.0);
  CHECK(std::abs(z[1] - 1.0 / 6.0) < 1e-15);
  const std::size_t repeated[3] = {0, 0, 6};
  CHECK_THROWS_AS(flat_zeros_vector(3, repeated), ValidationError);
  const std::size_t two[2] = {0, 1};
  CHECK_THROWS_AS(flat_zeros_vector(3, two), ValidationError);
  const std::size_t far[3] = {0, 1, 9};
  CHECK_THROWS_AS(flat_zeros_vector(3, far), UnsupportedError);

  // d = 4: six zeros each, disjoint sets share only 4 nonzero slots.
  const std::size_t a[6] = {0, 1, 2, 3, 4, 5};
  const std::size_t b[6] = {6, 7, 8, 9, 10, 11};
  const ZerosOverlap disjoint = zeros_overlap_test(flat_zeros_vector(4, a), flat_zeros_vector(4, b), 4);
  CHECK(disjoint.shared_nonzero == 4);
  CHECK(std::abs(disjoint.overlap - 4.0 * 0.01) < 1e-15);
  CHECK_FALSE(disjoint.admissible);
  const ZerosOverlap same = zeros_overlap_test(flat_zeros_vector(4, a), flat_zeros_vector(4, a), 4);
  CHECK(same.shared_nonzero == 10);
  CHECK(same.admissible);
  CHECK_THROWS_AS(zeros_overlap_test(basis_distribution(4, 0), flat_zeros_vector(4, a), 4), ValidationError);
  CHECK_THROWS_AS(zeros_overlap_test(flat_zeros_vector(3, col), flat_zeros_vector(4, a), 4), DimensionError);

  // Admissibility reduces to 4g >= d(d+1), checked against every shared count.
  gen::Gen g(5);
  for (std::size_t d = 3; d <= 6; ++d) {
    const std::size_t zeros = d * (d - 1) / 2;
    for (int t = 0; t < 50; ++t) {
      std::vector<std::size_t> perm1(d * d), perm2(d * d);
      for (std::size_t i = 0; i < d * d; ++i) perm1[i] = perm2[i] = i;
      for (std::size_t i = d * d - 1; i > 0; --i) {
        std::swap(perm1[i], perm1[g.below(i + 1)]);
        std::swap(perm2[i], perm2[g.below(i + 1)]);
      }
      const std::vector<std::size_t> z1(perm1.begin(), perm1.begin() + static_cast<std::ptrdiff_t>(zeros));
      const std::vector<std::size_t> z2(perm2.begin(), perm2.begin() + static_cast<std::ptrdiff_t>(zeros));
      const std::set<std::size_t> s1(z1.begin(), z1.end()), s2(z2.begin(), z2.end());
      std::size_t shared = 0;
      for (std::size_t i = 0; i < d * d; ++i) shared += (!s1.count(i) && !s2.count(i));
      const ZerosOverlap r = zeros_overlap_test(flat_zeros_vector(d, z1), flat_zeros_vector(d, z2), d);
      CHECK(r.shared_nonzero == shared);
      CHECK(r.admissible == (4 * shared >= d * (d + 1)));
    }
  }
}

TEST_CASE("excision in d = 3") {
  const SicFrame& f = frame_for(3);
  const std::size_t columns[3][3] = {{0, 3, 6}, {1, 4, 7}, {2, 5, 8}};
  for (const auto& c : columns) CHECK(validity_test(f, flat_zeros_vector(3, c)).valid);
  const std::size_t span[3] = {0, 1, 2};
  CHECK_FALSE(validity_test(f, flat_zeros_vector(3, span)).valid);
}

TEST_CASE("delsarte bound") {
  for (std::int64_t d = 2; d <= 20; ++d) {
    CHECK(delsarte_bound(d - 1, Rational(1, d + 1)) == Rational(d * (d - 1), 2));
    CHECK(std::abs(delsarte_bound(d - 1, 1.0 / static_cast<double>(d + 1)) - static_cast<double>(d * (d - 1)) / 2.0) <
          1e-12);
  }
  CHECK(delsarte_bound(3, Rational(1, 5)) == Rational(6));
  CHECK_THROWS_AS(delsarte_bound(3, Rational(1, 3)), PreconditionError);
  CHECK_THROWS_AS(delsarte_bound(3, Rational(0)), PreconditionError);
  CHECK_THROWS_AS(delsarte_bound(3, 0.5), PreconditionError);
}

TEST_CASE("isu bound") {
  gen::Gen g(6);
  for (std::size_t d = 2; d <= 4; ++d) {
    const SicFrame& f = frame_for(d);
    const double dd = static_cast<double>(d);
    const IsuReport vn = isu_bound_check(f, Povm::von_neumann(g.unitary(d)), f.working_tolerance());
    CHECK(vn.isu);
    CHECK(std::abs(vn.bound - 2.0 / (dd * (dd + 1.0))) < 1e-15);
    CHECK(std::abs(vn.max_posterior_purity - vn.bound) < 1e-10);
    CHECK(vn.bound_holds);
    const IsuReport sky = isu_bound_check(f, f.effects(), f.working_tolerance());
    CHECK(sky.isu);
    CHECK(sky.bound_holds);
    const IsuReport lumpy = isu_bound_check(f, Povm::from_effects(g.povm(d, 3)), f.working_tolerance());
    CHECK_FALSE(lumpy.isu);
  }
}

TEST_CASE("sweep") {
  for (std::size_t d = 2; d <= 4; ++d) {
    const SicFrame& f = frame_for(d);
    const auto one = sweep(f, 300, 17, 1);
    const auto many = sweep(f, 300, 17, 3);
    REQUIRE(one.size() == 300);
    const double dd = static_cast<double>(d);
    for (std::size_t i = 0; i < one.size(); ++i) {
      CHECK(one[i].sphere_residual == many[i].sphere_residual);
      CHECK(one[i].sphere_residual <= 1e-9);
      CHECK(one[i].zero_count <= d * (d - 1) / 2);
      CHECK(one[i].max_component <= 1.0 / dd + 1e-12);
    }
    CHECK(sweep(f, 10, 18, 1)[0].max_component != one[0].max_component);
  }
}

TEST_CASE("equidistant states") {
  for (std::size_t d = 2; d <= 4; ++d) {
    const SicFrame& f = frame_for(d);
    for (std::size_t n = 2; n <= d; ++n) CHECK(equidistant_construction(f, n, 3 + n) <= 1e-10);
    CHECK_THROWS_AS(equidistant_construction(f, d + 1, 1), UnsupportedError);
    const EquidistantTrials t = equidistant_trials(f, d + 1, 500, 9);
    CHECK(t.trials == 500);
    CHECK(t.hits == 0);
    CHECK(t.best_deviation > 1e-6);
    CHECK(equidistant_trials(f, d + 1, 500, 9).best_deviation == t.best_deviation);
  }
}
