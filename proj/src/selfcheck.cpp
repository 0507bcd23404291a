#include "sicq/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "sicq/errors.hpp"
#include "sicq/geometry.hpp"
#include "sicq/random.hpp"
#include "sicq/sicrep.hpp"
#include "sicq/urgleichung.hpp"

namespace sicq {

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::skip:
      return "skip";
    case CheckStatus::report:
      return "report";
  }
  return "fail";
}

const char* to_string(Comparison cmp) { return cmp == Comparison::le ? "le" : "ge"; }

namespace {

using random::Rng;

constexpr std::size_t kSweepSamples = 10000;
constexpr std::size_t kEquidistantTrials = 100000;

class Rows {
 public:
  Rows(std::vector<CheckRow>& rows, std::size_t dim) : rows_(rows), dim_(dim) {}

  void le(const std::string& suite, const std::string& invariant, double residual, double threshold) {
    add(suite, invariant, residual, threshold, Comparison::le, residual <= threshold ? CheckStatus::pass : CheckStatus::fail);
  }
  void ge(const std::string& suite, const std::string& invariant, double residual, double threshold) {
    add(suite, invariant, residual, threshold, Comparison::ge, residual >= threshold ? CheckStatus::pass : CheckStatus::fail);
  }
  void report(const std::string& suite, const std::string& invariant, double value, const std::string& note) {
    add(suite, invariant, value, 0.0, Comparison::le, CheckStatus::report, note);
  }
  void skip(const std::string& suite, const std::string& invariant, const std::string& note) {
    add(suite, invariant, 0.0, 0.0, Comparison::le, CheckStatus::skip, note);
  }
  // Runs body; an exception becomes a failed row.
  void guarded(const std::string& suite, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      add(suite, "exception", 0.0, 0.0, Comparison::le, CheckStatus::fail, e.what());
    }
  }

 private:
  void add(const std::string& suite, const std::string& invariant, double residual, double threshold, Comparison cmp,
           CheckStatus status, std::string note = {}) {
    rows_.push_back({suite, invariant, dim_, residual, threshold, cmp, status, std::move(note)});
  }
  std::vector<CheckRow>& rows_;
  std::size_t dim_;
};

Rng suite_rng(std::uint64_t seed, std::size_t dim, std::uint32_t suite) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(dim), suite};
  return Rng(seq);
}

DensityOperator any_state(std::size_t d, std::size_t index, Rng& rng) {
  return index % 2 == 0 ? random::pure_state(d, rng) : random::mixed_state(d, rng);
}

std::size_t pick_outcomes(Rng& rng) { return std::uniform_int_distribution<std::size_t>(2, 10)(rng); }

Povm random_basis(std::size_t d, Rng& rng) { return Povm::von_neumann(random::unitary(d, rng).matrix()); }

void mub_suite(Rows& rows, std::size_t d, std::uint64_t seed) {
  rows.guarded("mub", [&] {
    const MubFrame mub = build_mub(d);
    const MubVerification v = verify_mub(mub);
    rows.le("mub", "within_basis_overlap", v.within_basis_error, kExactTol);
    rows.le("mub", "cross_basis_overlap", v.cross_basis_error, kExactTol);
    rows.le("mub", "projector_sum", v.sum_error, kExactTol);
    auto rng = suite_rng(seed, d, 1);
    double dep = 0.0;
    for (int t = 0; t < 20; ++t) dep = std::max(dep, depolarize_check(mub, random::ginibre(d, d, rng)));
    rows.le("mub", "depolarizing_identity", dep, kExactTol);
    const Povm sky = mub.effects();
    double born = 0.0;
    for (std::size_t t = 0; t < 50; ++t) {
      const DensityOperator rho = any_state(d, t, rng);
      const Povm ground = random::povm(d, pick_outcomes(rng), rng);
      const ProbVector p = born_direct(rho, sky);
      const ProbVector q = urgleichung_mub(p, conditional_from_frame(mub, ground), d);
      born = std::max(born, (q.values() - born_direct(rho, ground).values()).cwiseAbs().maxCoeff());
    }
    rows.le("mub", "urgleichung_vs_born", born, 1e-10);
  });
}

void operator_suite(Rows& rows, std::size_t d, std::uint64_t seed) {
  rows.guarded("operators", [&] {
    auto rng = suite_rng(seed, d, 2);
    double sum_err = 0.0;
    double covariance = 0.0;
    for (std::size_t t = 0; t < 50; ++t) {
      const DensityOperator rho = any_state(d, t, rng);
      const Povm f = random::povm(d, pick_outcomes(rng), rng);
      double raw = 0.0;
      for (const auto& e : f.effects()) raw += hs_inner(rho.matrix(), e).real();
      sum_err = std::max(sum_err, std::abs(raw - 1.0));
      const UnitaryMatrix u = random::unitary(d, rng);
      const DensityOperator moved = DensityOperator::from_matrix(u.conjugate(rho.matrix()));
      const ProbVector a = born_direct(moved, f.conjugated(u));
      covariance = std::max(covariance, (a.values() - born_direct(rho, f).values()).cwiseAbs().maxCoeff());
    }
    rows.le("operators", "born_sum", sum_err, kExactTol);
    rows.le("operators", "unitary_covariance", covariance, 1e-10);
    std::size_t disagreements = 0;
    std::normal_distribution<double> shift(0.0, 2.0);
    for (int t = 0; t < 100; ++t) {
      const ComplexMatrix h = random::hermitian(d, rng) +
                              std::abs(shift(rng)) * static_cast<double>(d) * ComplexMatrix::Identity(d, d);
      if (is_psd(h) != is_psd_cholesky(h)) ++disagreements;
    }
    rows.le("operators", "psd_eigen_vs_cholesky", static_cast<double>(disagreements), 0.0);
  });
}

void frame_suite(Rows& rows, const SicFrame& frame, std::uint64_t seed) {
  const std::size_t d = frame.dim();
  const double dd = static_cast<double>(d);
  const std::size_t n = frame.size();
  rows.guarded("sicframe", [&] {
    const Povm effects = frame.effects(frame.working_tolerance());
    rows.le("sicframe", "frobenius_minimum", std::abs(frobenius_objective(effects) - frobenius_minimum(d)), 1e-10);
    Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = hs_inner(effects[i], effects[j]).real();
      }
    }
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    auto rng = suite_rng(seed, d, 3);
    double worst = 0.0;
    for (std::size_t t = 0; t < 50; ++t) {
      const ProbVector p = rho_to_prob(frame, any_state(d, t, rng), frame.working_tolerance());
      const Eigen::VectorXd a = lu.solve(p.values());
      ComplexMatrix rho = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
      for (std::size_t i = 0; i < n; ++i) rho += a[static_cast<Eigen::Index>(i)] * effects[i];
      worst = std::max(worst, max_abs_diff(rho, prob_to_rho(frame, p)));
    }
    rows.le("sicframe", "reconstruction_vs_linear_solve", worst, 1e-9);
  });

  const double tol = frame.working_tolerance();
  rows.guarded("sicrep", [&] {
    auto rng = suite_rng(seed, d, 4);
    double prob_trip = 0.0;
    double rho_trip = 0.0;
    double inner = 0.0;
    for (std::size_t t = 0; t < 50; ++t) {
      const DensityOperator rho = any_state(d, t, rng);
      const ProbVector p = rho_to_prob(frame, rho, tol);
      const ComplexMatrix back = prob_to_rho(frame, p);
      rho_trip = std::max(rho_trip, max_abs_diff(back, rho.matrix()));
      const ProbVector again = rho_to_prob(frame, DensityOperator::from_matrix(back, tol), tol);
      prob_trip = std::max(prob_trip, (again.values() - p.values()).cwiseAbs().maxCoeff());
      const DensityOperator sigma = any_state(d, t + 1, rng);
      const double direct = hs_inner(rho.matrix(), sigma.matrix()).real();
      inner = std::max(inner, std::abs(sic_inner(p, rho_to_prob(frame, sigma, tol), d) - direct));
    }
    rows.le("sicrep", "roundtrip_prob", prob_trip, 1e-10);
    rows.le("sicrep", "roundtrip_rho", rho_trip, 1e-10);
    rows.le("sicrep", "sic_inner_vs_hs_inner", inner, 1e-10);

    double floor_gap = 0.0;
    for (std::size_t t = 0; t < 100; ++t) {
      const ProbVector p = rho_to_prob(frame, any_state(d, t, rng), tol);
      const ProbVector q = rho_to_prob(frame, random::pure_state(d, rng), tol);
      floor_gap = std::max(floor_gap, 1.0 / (dd * (dd + 1.0)) - p.dot(q));
    }
    rows.le("sicrep", "overlap_floor", std::max(0.0, floor_gap), kExactTol);

    const StructureTensor s = build_structure(frame);
    const StructureSums sums = structure_sums(s);
    rows.le("sicrep", "alpha_sum_over_k", sums.alpha_k_error, 1e-9);
    rows.le("sicrep", "alpha_sum_over_i", sums.alpha_i_error, 1e-9);
    rows.le("sicrep", "alpha_sum_over_j", sums.alpha_j_error, 1e-9);
    rows.le("sicrep", "c_symmetry", sums.c_symmetry_error, 1e-12);

    std::size_t mismatches = 0;
    for (std::size_t t = 0; t < 200; ++t) {
      const ProbVector p = rho_to_prob(frame, any_state(d, t, rng), tol);
      const bool pure = purity_check(s, p).pure;
      if (pure != is_rank_one_projector(prob_to_rho(frame, p))) ++mismatches;
    }
    rows.le("sicrep", "purity_iff_rank_one", static_cast<double>(mismatches), 0.0);

    double idem = 0.0;
    double rank_gap = 0.0;
    double quad = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const MagmaReport mr = magma_decomposition_check(s, k);
      idem = std::max({idem, mr.idempotency_residual, mr.symmetry_residual, mr.m_residual});
      rank_gap = std::max(rank_gap, std::abs(static_cast<double>(mr.rank) - static_cast<double>(mr.expected_rank)));
    }
    for (int t = 0; t < 20; ++t) {
      const ProbVector p = rho_to_prob(frame, random::pure_state(d, rng), tol);
      for (std::size_t k = 0; k < n; ++k) quad = std::max(quad, magma_quadratic_residual(s, p, k));
    }
    rows.le("sicrep", "magma_projector", idem, 1e-9);
    rows.le("sicrep", "magma_rank", rank_gap, 0.0);
    rows.le("sicrep", "magma_quadratic", quad, 1e-9);

    std::size_t invalid = 0;
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
      Eigen::VectorXd b(static_cast<Eigen::Index>(n));
      for (auto& x : b) x = normal(rng);
      const ProbVector p = sqrt_parameterize(s, SqrtParam::project(d, b), tol);
      if (!validity_test(frame, p, tol).valid) ++invalid;
    }
    rows.le("sicrep", "sqrt_parameterization_valid", static_cast<double>(invalid), 0.0);
  });

  rows.guarded("urgleichung", [&] {
    auto rng = suite_rng(seed, d, 5);
    double oracle = 0.0;
    double fixed = 0.0;
    double vn_general = 0.0;
    double band = 0.0;
    double ltp_relation = 0.0;
    const Povm sky = frame.effects(tol);
    const ConditionalMatrix rs = conditional_from_frame(frame, sky);
    for (std::size_t t = 0; t < 100; ++t) {
      const DensityOperator rho = any_state(d, t, rng);
      const ProbVector p = rho_to_prob(frame, rho, tol);
      const Povm ground = random::povm(d, pick_outcomes(rng), rng);
      const ProbVector q = urgleichung_general(p, conditional_from_frame(frame, ground), d);
      oracle = std::max(oracle, (q.values() - born_direct(rho, ground).values()).cwiseAbs().maxCoeff());
      fixed = std::max(fixed, (urgleichung_general(p, rs, d).values() - p.values()).cwiseAbs().maxCoeff());
      const ConditionalMatrix rv = conditional_from_frame(frame, random_basis(d, rng));
      const ProbVector qv = urgleichung_vn(p, rv, d);
      vn_general = std::max(vn_general, (qv.values() - urgleichung_general(p, rv, d).values()).cwiseAbs().maxCoeff());
      const ProbVector sv = classical_ltp(p, rv);
      const double lo = 1.0 / (dd + 1.0);
      band = std::max({band, lo - sv.values().minCoeff(), sv.values().maxCoeff() - 2.0 * lo});
      ltp_relation = std::max(
          ltp_relation, ((dd + 1.0) * sv.values() - Eigen::VectorXd::Ones(sv.values().size()) - qv.values()).cwiseAbs().maxCoeff());
    }
    rows.le("urgleichung", "general_vs_born", oracle, 1e-10);
    rows.le("urgleichung", "sky_fixed_point", fixed, 1e-12);
    rows.le("urgleichung", "vn_vs_general", vn_general, 1e-12);
    rows.le("urgleichung", "urungleichung_band", std::max(0.0, band), tol);
    rows.le("urgleichung", "vn_from_classical", ltp_relation, 1e-12);

    double doubly = 0.0;
    double evolution = 0.0;
    double composition = 0.0;
    for (std::size_t t = 0; t < 50; ++t) {
      const UnitaryMatrix u = random::unitary(d, rng);
      const ConditionalMatrix r = unitary_to_stochastic(frame, u);
      doubly = std::max({doubly, (r.matrix().rowwise().sum().array() - 1.0).abs().maxCoeff(),
                         (r.matrix().colwise().sum().array() - 1.0).abs().maxCoeff()});
      const DensityOperator rho = any_state(d, t, rng);
      const ProbVector p = rho_to_prob(frame, rho, tol);
      const ProbVector moved = rho_to_prob(frame, DensityOperator::from_matrix(u.conjugate(rho.matrix())), tol);
      evolution = std::max(evolution, (evolve(p, r, d).values() - moved.values()).cwiseAbs().maxCoeff());
      const UnitaryMatrix u2 = random::unitary(d, rng);
      const ProbVector seq = evolve(frame, u2, evolve(frame, u, p));
      composition = std::max(composition, (seq.values() - evolve(frame, u2 * u, p).values()).cwiseAbs().maxCoeff());
    }
    rows.le("urgleichung", "doubly_stochastic", doubly, 1e-12);
    rows.le("urgleichung", "evolution_vs_conjugation", evolution, 1e-10);
    rows.le("urgleichung", "evolution_composition", composition, 1e-9);

    // The measured basis contains the state itself: the urgleichung gives
    // certainty while the classical rule cannot.
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(frame[0]);
    const Povm ground = Povm::von_neumann(eig.eigenvectors());
    const ConditionalMatrix r = conditional_from_frame(frame, ground);
    const ProbVector e0 = basis_distribution(d, 0);
    const double gap = (classical_ltp(e0, r).values() - urgleichung_vn(e0, r, d).values()).cwiseAbs().maxCoeff();
    rows.ge("urgleichung", "unperformed_measurement_witness", gap, 0.01);
  });

  rows.guarded("geometry", [&] {
    const GeometryReport g = bloch_geometry(d);
    const double r2 = to_double(g.sphere_radius_sq);
    double on_sphere = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const Eigen::VectorXd diff = basis_distribution(d, k).values() - g.center.values();
      on_sphere = std::max(on_sphere, std::abs(diff.squaredNorm() - r2));
    }
    rows.le("geometry", "basis_on_sphere", on_sphere, 1e-14);
    double basis_vs_frame = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const ProbVector p = rho_to_prob(frame, DensityOperator::from_matrix(frame[k], tol), tol);
      basis_vs_frame = std::max(basis_vs_frame, (p.values() - basis_distribution(d, k).values()).cwiseAbs().maxCoeff());
    }
    rows.le("geometry", "basis_distribution_vs_frame", basis_vs_frame, 1e-10);

    const auto samples = sweep(frame, kSweepSamples, seed);
    double sphere = 0.0;
    double component = 0.0;
    double zeros = 0.0;
    for (const auto& s : samples) {
      sphere = std::max(sphere, s.sphere_residual);
      component = std::max(component, s.max_component - 1.0 / dd);
      zeros = std::max(zeros, static_cast<double>(s.zero_count) - static_cast<double>(g.max_zeros));
    }
    rows.le("geometry", "pure_states_on_sphere", sphere, 1e-9);
    rows.le("sicrep", "component_bound", std::max(0.0, component), kExactTol);
    rows.le("sicrep", "zeros_bound", std::max(0.0, zeros), 0.0);

    const Rational bound = delsarte_bound(static_cast<std::int64_t>(d) - 1, Rational(1, static_cast<std::int64_t>(d) + 1));
    rows.le("geometry", "delsarte_zeros_bound_exact", bound == Rational(static_cast<std::int64_t>(g.max_zeros)) ? 0.0 : 1.0, 0.0);

    double construct = 0.0;
    for (std::size_t m = 2; m <= d; ++m) {
      construct = std::max(construct, equidistant_construction(frame, m, seed + m));
    }
    rows.le("geometry", "equidistant_construction", construct, 1e-10);
    const EquidistantTrials trials = equidistant_trials(frame, d + 1, kEquidistantTrials, seed);
    rows.report("geometry", "equidistant_beyond_d", trials.best_deviation,
                std::to_string(trials.hits) + " hits in " + std::to_string(trials.trials) + " trials of " +
                    std::to_string(trials.n_points) + " states");

    auto rng = suite_rng(seed, d, 6);
    const IsuReport vn = isu_bound_check(frame, random_basis(d, rng), tol);
    rows.le("geometry", "isu_von_neumann_flag", vn.isu ? 0.0 : 1.0, 0.0);
    rows.le("geometry", "isu_von_neumann_tight", std::abs(vn.max_posterior_purity - 2.0 / (dd * (dd + 1.0))), 1e-10);
    const IsuReport self = isu_bound_check(frame, frame.effects(tol), tol);
    rows.le("geometry", "isu_sky_bound", self.isu && self.bound_holds ? 0.0 : 1.0, 0.0);

    if (d == 3 && std::holds_alternative<AnalyticProvenance>(frame.provenance())) {
      const std::size_t columns[3][3] = {{0, 3, 6}, {1, 4, 7}, {2, 5, 8}};
      double worst_column = -1.0;
      for (const auto& zeros_at : columns) {
        const ValidityReport v = validity_test(frame, flat_zeros_vector(3, zeros_at), tol);
        worst_column = std::max(worst_column, -v.min_eigenvalue);
      }
      rows.le("geometry", "excision_column_vectors_valid", std::max(0.0, worst_column), tol);
      const std::size_t span[3] = {0, 1, 2};
      const ValidityReport bad = validity_test(frame, flat_zeros_vector(3, span), tol);
      rows.ge("geometry", "excision_spanning_vector_invalid", -bad.min_eigenvalue, tol);
    }
  });
}

void verify_rows(Rows& rows, const SicFrame& frame, bool& verified) {
  const SicVerification v = verify_sic(frame, frame.working_tolerance());
  rows.le("sicframe", "overlap", v.max_overlap_error, v.tol);
  rows.le("sicframe", "completeness", v.completeness_error, v.tol);
  rows.le("sicframe", "rank_one_projectors", v.max_projector_error, v.tol);
  rows.le("sicframe", "linear_independence_rank_gap",
          std::abs(static_cast<double>(v.expected_rank) - static_cast<double>(v.rank)), 0.0);
  verified = v.pass;
}

}  // namespace

SelfcheckReport selfcheck(const SelfcheckOptions& options) {
  SelfcheckReport out;
  for (std::size_t d : options.dims) {
    Rows rows(out.rows, d);
    if (d < 2) {
      rows.skip("sicframe", "frame", "dimension below 2");
      continue;
    }
    operator_suite(rows, d, options.seed);
    if (is_prime(d) && d <= kMaxMubDim) mub_suite(rows, d, options.seed);

    std::optional<SicFrame> frame;
    std::string source;
    if (options.frame_override && options.frame_override->dim() == d) {
      frame = options.frame_override;
      source = "frame file";
    } else if (d <= 3) {
      frame = known_sic(d);
    } else if (d <= kMaxSearchDim) {
      std::vector<std::uint64_t> seeds(options.search_seeds);
      std::iota(seeds.begin(), seeds.end(), options.seed);
      try {
        SearchOptions so;
        so.threads = options.threads;
        frame = search_sic(d, seeds, options.max_iters, kDefaultSearchResidual, so);
      } catch (const SearchFailed& e) {
        source = e.what();
      }
    } else {
      source = "no analytic frame and outside the search range";
    }
    if (!frame) {
      rows.skip("sicframe", "frame", source);
      continue;
    }
    bool verified = false;
    verify_rows(rows, *frame, verified);
    if (!verified) {
      rows.skip("frame-dependent", "all", "frame failed verification");
      continue;
    }
    frame_suite(rows, *frame, options.seed);
  }
  for (const auto& row : out.rows) {
    if (row.status == CheckStatus::pass) ++out.passed;
    if (row.status == CheckStatus::fail) ++out.failed;
    if (row.status == CheckStatus::skip) ++out.skipped;
  }
  out.overall = out.failed > 0 ? CheckStatus::fail : (out.skipped > 0 ? CheckStatus::skip : CheckStatus::pass);
  return out;
}

}  // namespace sicq
