#include <doctest.h>

#include <cstdlib>
#include <string>
#include <vector>

#include <json.hpp>

#include "sicq/sicq.h"

using nlohmann::json;

namespace {

json take(char* s) {
  REQUIRE(s != nullptr);
  json j = json::parse(s);
  sicq_string_free(s);
  return j;
}

const char* kMixed2 = R"({"dim": 2, "matrix": [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]})";
const char* kKet0 = R"({"dim": 2, "matrix": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]})";
const char* kZBasis = R"({"dim": 2, "effects": [[[[1, 0], [0, 0]], [[0, 0], [0, 0]]],
                                              [[[0, 0], [0, 0]], [[0, 0], [1, 0]]]]})";

}  // namespace

TEST_CASE("frames through the C API") {
  CHECK(std::string(sicq_version()).size() > 0);
  sicq_frame* f = nullptr;
  REQUIRE(sicq_frame_known(3, &f) == SICQ_OK);
  CHECK(sicq_frame_dim(f) == 3);
  char* report = nullptr;
  int pass = 0;
  REQUIRE(sicq_frame_verify(f, 1e-12, &report, &pass) == SICQ_OK);
  CHECK(pass == 1);
  CHECK(take(report)["max_overlap_error"].get<double>() <= 1e-12);

  char* text = nullptr;
  REQUIRE(sicq_frame_to_json(f, &text) == SICQ_OK);
  sicq_frame* g = nullptr;
  CHECK(sicq_frame_from_json(text, &g) == SICQ_OK);
  sicq_string_free(text);
  CHECK(sicq_frame_dim(g) == 3);
  sicq_frame_free(g);
  sicq_frame_free(f);

  CHECK(sicq_frame_known(4, &f) == SICQ_ERR_UNSUPPORTED);
  CHECK(sicq_frame_known(2, nullptr) == SICQ_ERR_ARGUMENT);
  CHECK(sicq_frame_from_json("{\"dim\": 2,", &f) == SICQ_ERR_PARSE);
  CHECK(sicq_last_error_offset() > 0);
  CHECK(std::string(sicq_last_error()).size() > 0);

  const uint64_t seeds[] = {0, 1, 2, 3};
  REQUIRE(sicq_frame_search(2, seeds, 4, 5000, 1e-8, SICQ_SEARCH_EXACT, 1, &f) == SICQ_OK);
  CHECK(sicq_frame_working_tolerance(f) >= 1e-9);
  sicq_frame_free(f);
  CHECK(sicq_frame_search(4, seeds, 1, 1, 1e-8, SICQ_SEARCH_EXACT, 1, &f) == SICQ_ERR_SEARCH_FAILED);
  CHECK(sicq_last_search_residual() > 1e-8);
}

TEST_CASE("states and measurements through the C API") {
  sicq_frame* f = nullptr;
  REQUIRE(sicq_frame_known(2, &f) == SICQ_OK);
  sicq_operator* mixed = nullptr;
  sicq_operator* ket = nullptr;
  REQUIRE(sicq_operator_from_json(kMixed2, &mixed) == SICQ_OK);
  REQUIRE(sicq_operator_from_json(kKet0, &ket) == SICQ_OK);
  CHECK(sicq_operator_dim(ket) == 2);

  double p[4];
  REQUIRE(sicq_state_to_prob(f, mixed, 1e-9, p, 4) == SICQ_OK);
  for (double x : p) CHECK(std::abs(x - 0.25) < 1e-15);
  CHECK(sicq_state_to_prob(f, mixed, 1e-9, p, 3) == SICQ_ERR_ARGUMENT);

  char* report = nullptr;
  REQUIRE(sicq_prob_to_rho(f, p, 4, 1e-9, &report) == SICQ_OK);
  CHECK(take(report)["matrix"][0][0][0].get<double>() == doctest::Approx(0.5));
  int valid = 0;
  REQUIRE(sicq_state_validate(f, p, 4, 1e-9, &report, &valid) == SICQ_OK);
  take(report);
  CHECK(valid == 1);
  int pure = 1;
  REQUIRE(sicq_state_purity(f, p, 4, 1e-9, &report, &pure) == SICQ_OK);
  take(report);
  CHECK(pure == 0);
  double inner = 0.0;
  REQUIRE(sicq_sic_inner(p, p, 4, 2, &inner) == SICQ_OK);
  CHECK(std::abs(inner - 0.5) < 1e-12);
  CHECK(sicq_sic_inner(p, p, 4, 3, &inner) == SICQ_ERR_DIMENSION);

  sicq_povm* z = nullptr;
  REQUIRE(sicq_povm_from_json(kZBasis, 1e-9, &z) == SICQ_OK);
  CHECK(sicq_povm_size(z) == 2);
  REQUIRE(sicq_born(f, ket, z, 1e-9, 1, &report) == SICQ_OK);
  const json born = take(report);
  CHECK(born["q"][0].get<double>() == doctest::Approx(1.0));
  CHECK(born["max_deviation"].get<double>() <= 1e-10);

  sicq_operator* x = nullptr;
  REQUIRE(sicq_operator_from_json(R"({"dim": 2, "matrix": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]})", &x) == SICQ_OK);
  double pk[4];
  double moved[4];
  REQUIRE(sicq_state_to_prob(f, ket, 1e-9, pk, 4) == SICQ_OK);
  REQUIRE(sicq_evolve(f, x, pk, 4, 1e-9, moved, 4) == SICQ_OK);
  REQUIRE(sicq_born(f, ket, z, 1e-9, 0, &report) == SICQ_OK);
  take(report);
  double back[4];
  REQUIRE(sicq_evolve(f, x, moved, 4, 1e-9, back, 4) == SICQ_OK);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(back[i] - pk[i]) < 1e-12);
  CHECK(sicq_evolve(f, mixed, pk, 4, 1e-9, moved, 4) == SICQ_ERR_VALIDATION);

  sicq_povm* broken = nullptr;
  CHECK(sicq_povm_from_json(R"({"dim": 2, "effects": []})", 1e-9, &broken) != SICQ_OK);

  sicq_povm_free(z);
  sicq_operator_free(x);
  sicq_operator_free(ket);
  sicq_operator_free(mixed);
  sicq_frame_free(f);
}

TEST_CASE("reports through the C API") {
  char* report = nullptr;
  REQUIRE(sicq_solve_general(4, &report) == SICQ_OK);
  const json s = take(report);
  CHECK(s["n"] == 16);
  CHECK(s["alpha"] == 5);
  CHECK(s["beta"] == "1/4");
  CHECK(sicq_solve_general(1, &report) == SICQ_ERR_UNSUPPORTED);

  REQUIRE(sicq_geometry_report(3, &report) == SICQ_OK);
  const json g = take(report);
  CHECK(g["sphere_radius_sq"] == "1/18");
  CHECK(g["max_zeros"] == 3);

  REQUIRE(sicq_real_feasibility(4, &report) == SICQ_OK);
  const json r = take(report);
  CHECK(r["required_count"] == 10);
  CHECK(r["known_max"] == 6);
  CHECK(r["verdict"] == "infeasible");

  sicq_mub* mub = nullptr;
  REQUIRE(sicq_mub_build(3, &mub) == SICQ_OK);
  REQUIRE(sicq_mub_to_json(mub, &report) == SICQ_OK);
  CHECK(take(report)["verification"]["cross_basis_error"].get<double>() <= 1e-12);
  sicq_operator* x = nullptr;
  REQUIRE(sicq_operator_from_json(R"({"dim": 3, "matrix": [[[1,0],[2,1],[0,0]],[[0,0],[0,0],[0,-3]],[[1,1],[0,0],[4,0]]]})",
                                  &x) == SICQ_OK);
  double dev = 1.0;
  REQUIRE(sicq_mub_depolarize_check(mub, x, &dev) == SICQ_OK);
  CHECK(dev <= 1e-12);
  sicq_operator_free(x);
  sicq_mub_free(mub);
  CHECK(sicq_mub_build(4, &mub) == SICQ_ERR_UNSUPPORTED);

  sicq_frame* f = nullptr;
  REQUIRE(sicq_frame_known(2, &f) == SICQ_OK);
  REQUIRE(sicq_geometry_sweep(f, 20, 1, 1, &report) == SICQ_OK);
  CHECK(take(report)["rows"].size() == 20);
  sicq_frame_free(f);

  const size_t dims[] = {2};
  int overall = -1;
  REQUIRE(sicq_selfcheck(dims, 1, nullptr, 0, 1, &report, &overall) == SICQ_OK);
  CHECK(overall == SICQ_CHECK_PASS);
  CHECK(take(report)["failed"] == 0);
}
