#include <doctest.h>

#include <cmath>
#include <numbers>

#include "frames.hpp"
#include "gen.hpp"
#include "oracles.hpp"
#include "sicq/errors.hpp"
#include "sicq/sicrep.hpp"
#include "sicq/urgleichung.hpp"

using namespace sicq;
using testing::density;
using testing::frame_for;

namespace {

double max_diff(const ProbVector& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<oracle::Mat> to_oracle(const std::vector<ComplexMatrix>& ms) {
  std::vector<oracle::Mat> out;
  for (const auto& m : ms) out.push_back(oracle::from_eigen(m));
  return out;
}

}  // namespace

TEST_CASE("conditional matrix construction") {
  Eigen::MatrixXd r(2, 2);
  r << 0.25, 1.0, 0.75, 0.0;
  const ConditionalMatrix c = ConditionalMatrix::from_matrix(r);
  CHECK(c(1, 0) == 0.75);
  CHECK(c.row_sums()[0] == 1.25);
  r(0, 0) = 0.3;
  CHECK_THROWS_AS(ConditionalMatrix::from_matrix(r), ValidationError);
  r << -0.5, 1.0, 1.5, 0.0;
  CHECK_THROWS_AS(ConditionalMatrix::from_matrix(r), ValidationError);
  CHECK_THROWS_AS(ConditionalMatrix::from_matrix(Eigen::MatrixXd()), DimensionError);

  const SicFrame& f = frame_for(3);
  gen::Gen g(2);
  const Povm ground = Povm::from_effects(g.povm(3, 5));
  const ConditionalMatrix fc = conditional_from_frame(f, ground);
  CHECK(fc.rows() == 5);
  CHECK(fc.cols() == 9);
  for (std::size_t j = 0; j < 5; ++j) {
    for (std::size_t i = 0; i < 9; ++i) {
      CHECK(std::abs(fc(j, i) - oracle::trace_product(oracle::from_eigen(f[i]), oracle::from_eigen(ground[j])).real()) <
            1e-12);
    }
  }
  CHECK_THROWS_AS(conditional_from_frame(f, Povm::trivial(2)), DimensionError);
}

TEST_CASE("urgleichung_vn reproduces the Born rule") {
  gen::Gen g(77);
  for (std::size_t d = 2; d <= 6; ++d) {
    const SicFrame& f = frame_for(d);
    const double tol = f.working_tolerance();
    for (int t = 0; t < 40; ++t) {
      const Povm ground = Povm::von_neumann(g.unitary(d));
      const ConditionalMatrix r = conditional_from_frame(f, ground);
      const Eigen::VectorXd rows = r.row_sums();
      CHECK((rows.array() - static_cast<double>(d)).abs().maxCoeff() <= 1e-9);
      const ComplexMatrix rho = g.state(d);
      const ProbVector q = urgleichung_vn(rho_to_prob(f, density(rho), tol), r, d);
      CHECK(max_diff(q, oracle::born(oracle::from_eigen(rho), to_oracle(ground.effects()))) <= 1e-9);
    }
  }
}

TEST_CASE("urgleichung_general reproduces the Born rule") {
  gen::Gen g(78);
  for (std::size_t d = 2; d <= 5; ++d) {
    const SicFrame& f = frame_for(d);
    const double tol = f.working_tolerance();
    for (int t = 0; t < 40; ++t) {
      const Povm ground = Povm::from_effects(g.povm(d, 2 + g.below(2 * d)));
      const ComplexMatrix rho = g.state(d);
      const ProbVector q = urgleichung_general(rho_to_prob(f, density(rho), tol), conditional_from_frame(f, ground), d);
      CHECK(max_diff(q, oracle::born(oracle::from_eigen(rho), to_oracle(ground.effects()))) <= 1e-9);
    }
  }
  // Fine-grained SIC ground measurement: the ground outcomes are the sky outcomes.
  const SicFrame& f = frame_for(3);
  const ComplexMatrix rho = g.mixed(3);
  const ProbVector p = rho_to_prob(f, density(rho));
  const ProbVector q = urgleichung_general(p, conditional_from_frame(f, f.effects()), 3);
  CHECK((q.values() - p.values()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("urgleichung_mub reproduces the Born rule") {
  gen::Gen g(79);
  for (std::size_t d : {2u, 3u, 5u, 7u}) {
    const MubFrame mub = build_mub(d);
    const Povm sky = mub.effects();
    for (int t = 0; t < 20; ++t) {
      const Povm ground = Povm::from_effects(g.povm(d, 3));
      const ComplexMatrix rho = g.state(d);
      const ProbVector p = born_direct(density(rho), sky);
      const ProbVector q = urgleichung_mub(p, conditional_from_frame(mub, ground), d);
      CHECK(max_diff(q, oracle::born(oracle::from_eigen(rho), to_oracle(ground.effects()))) <= 1e-9);
    }
  }
}

TEST_CASE("quantum and classical totals differ") {
  const SicFrame& f = frame_for(2);
  ComplexMatrix basis = ComplexMatrix::Identity(2, 2);
  const ConditionalMatrix r = conditional_from_frame(f, Povm::von_neumann(basis));
  const ProbVector p = rho_to_prob(f, DensityOperator::pure(basis.col(0)));
  const ProbVector q = urgleichung_vn(p, r, 2);
  const ProbVector s = classical_ltp(p, r);
  CHECK(std::abs(q[0] - 1.0) < 1e-12);
  CHECK(std::abs(s[0] - 1.0) > 0.1);
  CHECK(std::abs(s.values().sum() - 1.0) < 1e-12);
}

TEST_CASE("urgleichung errors") {
  const SicFrame& f = frame_for(3);
  const ConditionalMatrix r = conditional_from_frame(f, Povm::von_neumann(ComplexMatrix::Identity(3, 3)));
  std::vector<double> spike(9, 0.0);
  spike[0] = 1.0;
  const ProbVector bad = ProbVector::from_values(std::span<const double>(spike));
  CHECK_THROWS_AS(urgleichung_vn(bad, r, 3), UrungleichungViolation);
  CHECK_THROWS_AS(urgleichung_general(bad, r, 3), UrungleichungViolation);
  CHECK_THROWS_AS(urgleichung_vn(ProbVector::uniform(4), r, 3), DimensionError);
  CHECK_THROWS_AS(classical_ltp(ProbVector::uniform(4), r), DimensionError);
  const ConditionalMatrix coarse = conditional_from_frame(f, Povm::trivial(3));
  CHECK_THROWS_AS(urgleichung_vn(ProbVector::uniform(9), coarse, 3), PreconditionError);
  CHECK(std::abs(urgleichung_general(ProbVector::uniform(9), coarse, 3)[0] - 1.0) < 1e-12);
}

TEST_CASE("unitary evolution") {
  gen::Gen g(80);
  for (std::size_t d = 2; d <= 5; ++d) {
    const SicFrame& f = frame_for(d);
    const double tol = f.working_tolerance();
    for (int t = 0; t < 20; ++t) {
      const UnitaryMatrix u = UnitaryMatrix::from_matrix(g.unitary(d));
      const ConditionalMatrix r = unitary_to_stochastic(f, u);
      CHECK((r.row_sums().array() - 1.0).abs().maxCoeff() <= 1e-9);
      CHECK((r.matrix().colwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-9);
      const ComplexMatrix rho = g.state(d);
      const ProbVector p = rho_to_prob(f, density(rho), tol);
      const ProbVector q = evolve(p, r, d);
      const ProbVector want = rho_to_prob(f, DensityOperator::from_matrix(u.conjugate(rho), tol), tol);
      CHECK((q.values() - want.values()).cwiseAbs().maxCoeff() <= 1e-9);
      CHECK((evolve(f, u, p).values() - q.values()).cwiseAbs().maxCoeff() <= 1e-12);
    }
    const ConditionalMatrix id = unitary_to_stochastic(f, UnitaryMatrix::identity(d));
    const ProbVector p = rho_to_prob(f, density(g.mixed(d)), tol);
    CHECK((evolve(p, id, d).values() - p.values()).cwiseAbs().maxCoeff() <= 1e-9);
  }
  CHECK_THROWS_AS(unitary_to_stochastic(frame_for(2), UnitaryMatrix::identity(3)), DimensionError);
}

TEST_CASE("tetrahedron rotation permutes the frame") {
  const SicFrame& f = frame_for(2);
  // 120 degrees about the Bloch vector of P_0.
  const ComplexMatrix& p0 = f[0];
  const double nx = 2.0 * p0(1, 0).real();
  const double ny = 2.0 * p0(1, 0).imag();
  const double nz = 2.0 * p0(0, 0).real() - 1.0;
  ComplexMatrix ns(2, 2);
  ns << nz, Complex(nx, -ny), Complex(nx, ny), -nz;
  const double half = std::numbers::pi / 3.0;
  const UnitaryMatrix u =
      UnitaryMatrix::from_matrix(std::cos(half) * ComplexMatrix::Identity(2, 2) - Complex(0, std::sin(half)) * ns);
  const ConditionalMatrix r = unitary_to_stochastic(f, u);
  std::vector<std::size_t> image(4);
  for (std::size_t i = 0; i < 4; ++i) {
    int hits = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      if (std::abs(r(j, i) - 0.5) < 1e-12) {
        image[i] = j;
        ++hits;
      } else {
        CHECK(std::abs(r(j, i) - 1.0 / 6.0) < 1e-12);
      }
    }
    CHECK(hits == 1);
  }
  CHECK(image[0] == 0);
  for (std::size_t i = 1; i < 4; ++i) {
    CHECK(image[i] != i);
    CHECK(image[image[image[i]]] == i);
  }
  const std::vector<double> in = {0.4, 0.3, 0.2, 0.1};
  const ProbVector p = ProbVector::from_values(std::span<const double>(in));
  const ProbVector q = evolve(p, r, 2);
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(q[image[i]] - p[i]) < 1e-12);
}

TEST_CASE("solve_generalized") {
  for (std::int64_t m = 2; m <= 12; ++m) {
    const GeneralizedParams s = solve_generalized(m);
    CHECK(s.m == m);
    CHECK(s.n == m * m);
    CHECK(s.alpha == Rational(m + 1));
    CHECK(s.beta == Rational(1, m));
    CHECK(Rational(s.n) * s.beta == s.alpha - 1);
    CHECK(s.alpha * m == Rational(s.n) * Rational(m + 1) * s.beta);
    CHECK(s.alpha * m == Rational(s.n) + Rational(s.n) * s.beta);
  }
  for (std::int64_t m = 2; m <= 50; ++m) {
    const GeneralizedParams s = solve_generalized(m);
    const auto cg = certainty_gram(m, s.n, s.alpha, s.beta);
    CHECK(cg.lambda0 == Rational(0));
  }
  const GeneralizedParams four = solve_generalized(4);
  CHECK(four.n == 16);
  CHECK(four.alpha == Rational(5));
  CHECK(four.beta == Rational(1, 4));
  CHECK_THROWS_AS(solve_generalized(1), UnsupportedError);
  CHECK_THROWS_AS(solve_generalized(-3), UnsupportedError);
}

TEST_CASE("certainty Gram eigenvalues") {
  for (std::int64_t d = 2; d <= 10; ++d) {
    const Rational alpha(d + 1);
    const Rational beta(1, d);
    const auto up = certainty_gram(d + 1, d * d, alpha, beta);
    CHECK(up.lambda0 == Rational(1, d * d));
    CHECK(up.lambda_rest == Rational((d + 1) * (d + 1), d * d));
    const auto down = certainty_gram(d - 1, d * d, alpha, beta);
    CHECK(down.lambda0 == Rational(-1, d * d));
    CHECK(down.lambda_rest == Rational(d * d - 1, d * d));
    const auto dbl = certainty_gram(d + 1, d * d, static_cast<double>(d + 1), 1.0 / static_cast<double>(d));
    CHECK(std::abs(dbl.lambda0 - 1.0 / static_cast<double>(d * d)) < 1e-12);
  }
  // Hand-built (m+1) x (m+1) Gram: alpha m/n on the diagonal block structure
  // G = (alpha m/n) I - beta J, whose eigenvalues are alpha m/n (m-fold) and
  // alpha m/n - (m+1) beta on the all-ones vector.
  for (std::int64_t m = 2; m <= 6; ++m) {
    const GeneralizedParams s = solve_generalized(m);
    const auto cg = certainty_gram(m, s.n, s.alpha, s.beta);
    const double a = to_double(s.alpha) * static_cast<double>(m) / static_cast<double>(s.n);
    const double b = to_double(s.beta);
    const Eigen::MatrixXd gm = a * Eigen::MatrixXd::Identity(m + 1, m + 1) - b * Eigen::MatrixXd::Ones(m + 1, m + 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gm);
    CHECK(std::abs(es.eigenvalues()[0] - to_double(cg.lambda0)) < 1e-12);
    CHECK(std::abs(es.eigenvalues()[m] - to_double(cg.lambda_rest)) < 1e-12);
  }
  CHECK_THROWS_AS(certainty_gram(3, 4, Rational(2), Rational(1, 3)), ValidationError);
  CHECK_THROWS_AS(certainty_gram(0, 4, Rational(2), Rational(1, 4)), ValidationError);
  CHECK_THROWS_AS(certainty_gram(3, 4, 2.0, 1.0 / 3.0), ValidationError);
}
