#include "sicq/sicq.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sicq/errors.hpp"
#include "sicq/geometry.hpp"
#include "sicq/io.hpp"
#include "sicq/selfcheck.hpp"
#include "sicq/sicframe.hpp"
#include "sicq/sicrep.hpp"
#include "sicq/urgleichung.hpp"

struct sicq_frame {
  sicq::SicFrame frame;
};
struct sicq_mub {
  sicq::MubFrame mub;
};
struct sicq_operator {
  sicq::ComplexMatrix matrix;
};
struct sicq_povm {
  sicq::Povm povm;
};

namespace {

using sicq::io::Json;

thread_local std::string last_error;
thread_local std::size_t last_offset = 0;
thread_local double last_residual = 0.0;

sicq_status fail(sicq_status code, const std::string& message) {
  last_error = message;
  return code;
}

// Runs body and maps library exceptions onto status codes.
template <typename F>
sicq_status guard(F&& body) {
  last_error.clear();
  last_offset = 0;
  try {
    body();
    return SICQ_OK;
  } catch (const sicq::ParseError& e) {
    last_offset = e.byte_offset();
    return fail(SICQ_ERR_PARSE, e.what());
  } catch (const sicq::SearchFailed& e) {
    last_residual = e.best_residual();
    return fail(SICQ_ERR_SEARCH_FAILED, e.what());
  } catch (const sicq::UrungleichungViolation& e) {
    return fail(SICQ_ERR_URUNGLEICHUNG, e.what());
  } catch (const sicq::DimensionError& e) {
    return fail(SICQ_ERR_DIMENSION, e.what());
  } catch (const sicq::ValidationError& e) {
    return fail(SICQ_ERR_VALIDATION, e.what());
  } catch (const sicq::UnsupportedError& e) {
    return fail(SICQ_ERR_UNSUPPORTED, e.what());
  } catch (const sicq::PreconditionError& e) {
    return fail(SICQ_ERR_PRECONDITION, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(SICQ_ERR_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(SICQ_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SICQ_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

char* dup_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void emit(const Json& j, char** out) { *out = dup_string(j.dump()); }

sicq::ProbVector prob_from(const double* p, std::size_t n, double tol) {
  require(p != nullptr || n == 0, "probability array is null");
  return sicq::ProbVector::from_values(std::span<const double>(p, n), tol);
}

void copy_out(const sicq::ProbVector& p, double* out, std::size_t out_len) {
  require(out != nullptr, "output array is null");
  require(out_len >= p.size(), "output array too small");
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i];
}

Json prob_array(const sicq::ProbVector& p) { return p.to_vector(); }

}  // namespace

extern "C" {

const char* sicq_version(void) { return SICQ_VERSION; }
const char* sicq_last_error(void) { return last_error.c_str(); }
size_t sicq_last_error_offset(void) { return last_offset; }
double sicq_last_search_residual(void) { return last_residual; }
void sicq_string_free(char* s) { std::free(s); }

sicq_status sicq_frame_known(size_t dim, sicq_frame** out) {
  return guard([&] {
    require(out != nullptr, "out is null");
    *out = new sicq_frame{sicq::known_sic(dim)};
  });
}

sicq_status sicq_frame_search(size_t dim, const uint64_t* seeds, size_t n_seeds, size_t max_iters,
                              double target_residual, sicq_search_mode mode, unsigned threads, sicq_frame** out) {
  return guard([&] {
    require(out != nullptr, "out is null");
    require(seeds != nullptr && n_seeds > 0, "seed list is empty");
    require(mode == SICQ_SEARCH_EXACT || mode == SICQ_SEARCH_WEYL_HEISENBERG, "unknown search mode");
    sicq::SearchOptions options;
    options.mode = mode == SICQ_SEARCH_EXACT ? sicq::SearchMode::exact : sicq::SearchMode::weyl_heisenberg;
    options.threads = threads;
    *out = new sicq_frame{
        sicq::search_sic(dim, std::span<const std::uint64_t>(seeds, n_seeds), max_iters, target_residual, options)};
  });
}

sicq_status sicq_frame_from_json(const char* json, sicq_frame** out) {
  return guard([&] {
    require(json != nullptr && out != nullptr, "null argument");
    *out = new sicq_frame{sicq::io::frame_from_json(sicq::io::parse(json))};
  });
}

sicq_status sicq_frame_to_json(const sicq_frame* frame, char** out) {
  return guard([&] {
    require(frame != nullptr && out != nullptr, "null argument");
    emit(sicq::io::frame_to_json(frame->frame), out);
  });
}

void sicq_frame_free(sicq_frame* frame) { delete frame; }
size_t sicq_frame_dim(const sicq_frame* frame) { return frame ? frame->frame.dim() : 0; }
double sicq_frame_working_tolerance(const sicq_frame* frame) {
  return frame ? frame->frame.working_tolerance() : sicq::kDefaultTol;
}

sicq_status sicq_frame_verify(const sicq_frame* frame, double tol, char** report, int* pass) {
  return guard([&] {
    require(frame != nullptr && report != nullptr, "null argument");
    const sicq::SicVerification v = sicq::verify_sic(frame->frame, tol);
    if (pass) *pass = v.pass ? 1 : 0;
    emit({{"max_overlap_error", v.max_overlap_error},
          {"completeness_error", v.completeness_error},
          {"max_projector_error", v.max_projector_error},
          {"rank", v.rank},
          {"expected_rank", v.expected_rank},
          {"tol", v.tol},
          {"pass", v.pass}},
         report);
  });
}

sicq_status sicq_mub_build(size_t dim, sicq_mub** out) {
  return guard([&] {
    require(out != nullptr, "out is null");
    *out = new sicq_mub{sicq::build_mub(dim)};
  });
}

sicq_status sicq_mub_to_json(const sicq_mub* mub, char** out) {
  return guard([&] {
    require(mub != nullptr && out != nullptr, "null argument");
    Json j = sicq::io::mub_to_json(mub->mub);
    const sicq::MubVerification v = sicq::verify_mub(mub->mub);
    j["verification"] = {{"within_basis_error", v.within_basis_error},
                         {"cross_basis_error", v.cross_basis_error},
                         {"sum_error", v.sum_error}};
    emit(j, out);
  });
}

void sicq_mub_free(sicq_mub* mub) { delete mub; }

sicq_status sicq_mub_depolarize_check(const sicq_mub* mub, const sicq_operator* x, double* deviation) {
  return guard([&] {
    require(mub != nullptr && x != nullptr && deviation != nullptr, "null argument");
    *deviation = sicq::depolarize_check(mub->mub, x->matrix);
  });
}

sicq_status sicq_real_feasibility(size_t dim, char** report) {
  return guard([&] {
    require(report != nullptr, "null argument");
    const sicq::RealFeasibilityReport r = sicq::real_sic_feasibility(dim);
    using sicq::io::rational_to_json;
    emit({{"dim", r.dim},
          {"required_count", r.required_count},
          {"required_overlap", rational_to_json(r.required_overlap)},
          {"alpha", rational_to_json(r.alpha)},
          {"beta", rational_to_json(r.beta)},
          {"delsarte_bound", rational_to_json(r.delsarte_bound)},
          {"known_max", r.known_max ? Json(*r.known_max) : Json(nullptr)},
          {"verdict", sicq::to_string(r.verdict)}},
         report);
  });
}

sicq_status sicq_operator_from_json(const char* json, sicq_operator** out) {
  return guard([&] {
    require(json != nullptr && out != nullptr, "null argument");
    *out = new sicq_operator{sicq::io::operator_from_json(sicq::io::parse(json))};
  });
}

void sicq_operator_free(sicq_operator* op) { delete op; }
size_t sicq_operator_dim(const sicq_operator* op) { return op ? static_cast<size_t>(op->matrix.rows()) : 0; }

sicq_status sicq_povm_from_json(const char* json, double tol, sicq_povm** out) {
  return guard([&] {
    require(json != nullptr && out != nullptr, "null argument");
    *out = new sicq_povm{sicq::io::povm_from_json(sicq::io::parse(json), tol)};
  });
}

void sicq_povm_free(sicq_povm* povm) { delete povm; }
size_t sicq_povm_size(const sicq_povm* povm) { return povm ? povm->povm.size() : 0; }

sicq_status sicq_state_to_prob(const sicq_frame* frame, const sicq_operator* rho, double tol, double* out,
                               size_t out_len) {
  return guard([&] {
    require(frame != nullptr && rho != nullptr, "null argument");
    const auto state = sicq::DensityOperator::from_matrix(rho->matrix, tol);
    copy_out(sicq::rho_to_prob(frame->frame, state, tol), out, out_len);
  });
}

sicq_status sicq_prob_to_rho(const sicq_frame* frame, const double* p, size_t n, double tol, char** out) {
  return guard([&] {
    require(frame != nullptr && out != nullptr, "null argument");
    emit(sicq::io::operator_to_json(sicq::prob_to_rho(frame->frame, prob_from(p, n, tol))), out);
  });
}

sicq_status sicq_state_validate(const sicq_frame* frame, const double* p, size_t n, double tol, char** report,
                                int* valid) {
  return guard([&] {
    require(frame != nullptr && report != nullptr, "null argument");
    const sicq::ProbVector pv = prob_from(p, n, tol);
    if (pv.size() != frame->frame.size()) throw sicq::DimensionError("probability vector length must be d^2");
    const sicq::ValidityReport v = sicq::validity_test(frame->frame, pv, tol);
    if (valid) *valid = v.valid ? 1 : 0;
    emit({{"min_eigenvalue", v.min_eigenvalue}, {"trace_error", v.trace_error}, {"valid", v.valid}}, report);
  });
}

sicq_status sicq_state_purity(const sicq_frame* frame, const double* p, size_t n, double tol, char** report,
                              int* pure) {
  return guard([&] {
    require(frame != nullptr && report != nullptr, "null argument");
    const sicq::StructureTensor s = sicq::build_structure(frame->frame);
    const sicq::PurityReport r = sicq::purity_check(s, prob_from(p, n, tol), tol);
    if (pure) *pure = r.pure ? 1 : 0;
    emit({{"quadratic", r.quadratic}, {"cubic", r.cubic}, {"fixed_point", r.fixed_point}, {"pure", r.pure}}, report);
  });
}

sicq_status sicq_sic_inner(const double* p, const double* q, size_t n, size_t dim, double* out) {
  return guard([&] {
    require(out != nullptr, "null argument");
    *out = sicq::sic_inner(prob_from(p, n, sicq::kDefaultTol), prob_from(q, n, sicq::kDefaultTol), dim);
  });
}

sicq_status sicq_born(const sicq_frame* frame, const sicq_operator* rho, const sicq_povm* povm, double tol,
                      int compare, char** report) {
  return guard([&] {
    require(frame != nullptr && rho != nullptr && povm != nullptr && report != nullptr, "null argument");
    const auto state = sicq::DensityOperator::from_matrix(rho->matrix, tol);
    const sicq::ProbVector p = sicq::rho_to_prob(frame->frame, state, tol);
    const sicq::ConditionalMatrix r = sicq::conditional_from_frame(frame->frame, povm->povm);
    const sicq::ProbVector q = sicq::urgleichung_general(p, r, frame->frame.dim());
    Json j = {{"q", prob_array(q)}};
    if (compare) {
      const sicq::ProbVector direct = sicq::born_direct(state, povm->povm, tol);
      j["oracle"] = prob_array(direct);
      j["max_deviation"] = (q.values() - direct.values()).cwiseAbs().maxCoeff();
    }
    emit(j, report);
  });
}

sicq_status sicq_evolve(const sicq_frame* frame, const sicq_operator* unitary, const double* p, size_t n, double tol,
                        double* out, size_t out_len) {
  return guard([&] {
    require(frame != nullptr && unitary != nullptr, "null argument");
    const auto u = sicq::UnitaryMatrix::from_matrix(unitary->matrix, tol);
    copy_out(sicq::evolve(frame->frame, u, prob_from(p, n, tol)), out, out_len);
  });
}

sicq_status sicq_geometry_report(size_t dim, char** report) {
  return guard([&] {
    require(report != nullptr, "null argument");
    const sicq::GeometryReport g = sicq::bloch_geometry(dim);
    Json flats = Json::array();
    for (std::size_t n = 0; n < dim * dim; ++n) {
      flats.push_back({{"n_zeros", n},
                       {"distance_sq", sicq::io::rational_to_json(sicq::nflat_min_distance(dim, n))},
                       {"pokes_out", sicq::nflat_pokes_out(dim, n)}});
    }
    emit({{"dim", g.dim},
          {"sphere_radius_sq", sicq::io::rational_to_json(g.sphere_radius_sq)},
          {"center", sicq::io::prob_to_json(g.center)},
          {"max_zeros", g.max_zeros},
          {"max_equidistant", g.max_equidistant},
          {"flat_poke_threshold", g.flat_poke_threshold},
          {"flats", std::move(flats)}},
         report);
  });
}

sicq_status sicq_geometry_sweep(const sicq_frame* frame, size_t samples, uint64_t seed, unsigned threads,
                                char** report) {
  return guard([&] {
    require(frame != nullptr && report != nullptr, "null argument");
    Json rows = Json::array();
    for (const auto& s : sicq::sweep(frame->frame, samples, seed, threads)) {
      rows.push_back({{"sphere_residual", s.sphere_residual},
                      {"zero_count", s.zero_count},
                      {"max_component", s.max_component}});
    }
    emit({{"samples", samples}, {"rows", std::move(rows)}}, report);
  });
}

sicq_status sicq_solve_general(int64_t m, char** report) {
  return guard([&] {
    require(report != nullptr, "null argument");
    const sicq::GeneralizedParams g = sicq::solve_generalized(m);
    const auto gram = sicq::certainty_gram(g.m, g.n, g.alpha, g.beta);
    using sicq::io::rational_to_json;
    emit({{"m", g.m},
          {"n", g.n},
          {"alpha", rational_to_json(g.alpha)},
          {"beta", rational_to_json(g.beta)},
          {"certainty_gram", {{"lambda0", rational_to_json(gram.lambda0)},
                              {"lambda_rest", rational_to_json(gram.lambda_rest)}}}},
         report);
  });
}

sicq_status sicq_selfcheck(const size_t* dims, size_t n_dims, const char* frame_json, uint64_t seed,
                           unsigned threads, char** report, int* overall) {
  return guard([&] {
    require(report != nullptr, "null argument");
    require(dims != nullptr || n_dims == 0, "dimension list is null");
    sicq::SelfcheckOptions options;
    options.dims.assign(dims, dims + n_dims);
    options.seed = seed;
    options.threads = threads;
    if (frame_json) options.frame_override = sicq::io::frame_from_json(sicq::io::parse(frame_json));
    const sicq::SelfcheckReport r = sicq::selfcheck(options);
    Json rows = Json::array();
    for (const auto& row : r.rows) {
      Json j = {{"suite", row.suite},
                {"invariant", row.invariant},
                {"dim", row.dim},
                {"max_residual", row.max_residual},
                {"threshold", row.threshold},
                {"comparison", sicq::to_string(row.comparison)},
                {"status", sicq::to_string(row.status)}};
      if (!row.note.empty()) j["note"] = row.note;
      rows.push_back(std::move(j));
    }
    if (overall) {
      *overall = r.overall == sicq::CheckStatus::fail   ? SICQ_CHECK_FAIL
                 : r.overall == sicq::CheckStatus::skip ? SICQ_CHECK_SKIP
                                                         : SICQ_CHECK_PASS;
    }
    emit({{"rows", std::move(rows)},
          {"passed", r.passed},
          {"failed", r.failed},
          {"skipped", r.skipped},
          {"overall", sicq::to_string(r.overall)}},
         report);
  });
}

}  // extern "C"
