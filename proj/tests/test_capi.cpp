// Exercises the shared library exactly as a C consumer would: only tfim.h is visible.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "tfim/tfim.h"

namespace {

const char* kTriangle =
    R"({"n":3,"edges":[{"u":0,"v":1,"w":1,"J":1},{"u":1,"v":2,"w":1,"J":1},)"
    R"({"u":0,"v":2,"w":1,"J":1}],"fields":[0.6,0.6,0.6]})";

struct Text {
  char* ptr = nullptr;
  ~Text() { tfim_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

}  // namespace

TEST_CASE("instance lifecycle") {
  tfim_instance* inst = nullptr;
  REQUIRE(tfim_instance_parse(kTriangle, &inst) == TFIM_OK);
  CHECK(tfim_instance_size(inst) == 3);
  CHECK(tfim_instance_edge_count(inst) == 3);

  double w = 0, h = 0;
  CHECK(tfim_instance_shift_constants(inst, &w, &h) == TFIM_OK);
  CHECK(w == 3.0);
  CHECK(h == doctest::Approx(1.8));

  int frustrated = -1;
  CHECK(tfim_instance_is_frustrated(inst, &frustrated) == TFIM_OK);
  CHECK(frustrated == 1);

  Text json;
  CHECK(tfim_instance_to_json(inst, &json.ptr) == TFIM_OK);
  tfim_instance* again = nullptr;
  REQUIRE(tfim_instance_parse(json.ptr, &again) == TFIM_OK);
  CHECK(tfim_instance_size(again) == 3);
  tfim_instance_free(again);

  tfim_instance* tri = nullptr;
  REQUIRE(tfim_instance_triangle(0.6, &tri) == TFIM_OK);
  Text a, b;
  tfim_instance_to_json(tri, &a.ptr);
  tfim_instance_to_json(inst, &b.ptr);
  CHECK(a.str() == b.str());
  tfim_instance_free(tri);
  tfim_instance_free(inst);
  tfim_instance_free(nullptr);
}

TEST_CASE("parse errors carry a path") {
  tfim_instance* inst = nullptr;
  CHECK(tfim_instance_parse(R"({"n":2,"edges":[{"u":0,"v":0,"w":1,"J":1}],"fields":[0,0]})", &inst) == TFIM_ERR_PARSE);
  CHECK(std::string(tfim_last_error()).find("edges[0]") != std::string::npos);
  CHECK(inst == nullptr);
  CHECK(tfim_instance_parse("{not json", &inst) == TFIM_ERR_PARSE);
  CHECK(tfim_instance_load("/nonexistent/instance.json", &inst) == TFIM_ERR_PARSE);
  CHECK(tfim_instance_parse(nullptr, &inst) == TFIM_ERR_USAGE);
}

TEST_CASE("relaxation and oracles") {
  tfim_instance* inst = nullptr;
  REQUIRE(tfim_instance_parse(kTriangle, &inst) == TFIM_OK);

  tfim_sdp* sdp = nullptr;
  REQUIRE(tfim_sdp_solve(inst, 1e-7, &sdp) == TFIM_OK);
  const double expected = 2.25 + 0.9 + 0.45 * std::sqrt(3.0);
  CHECK(tfim_sdp_objective(sdp) == doctest::Approx(expected).epsilon(1e-6));
  CHECK(tfim_sdp_edge_value(sdp) + tfim_sdp_field_value(sdp) ==
        doctest::Approx(tfim_sdp_objective(sdp)).epsilon(1e-12));
  double x[3];
  CHECK(tfim_sdp_x(sdp, x, 3) == TFIM_OK);
  CHECK(x[0] == doctest::Approx(std::sqrt(0.75)).epsilon(1e-5));
  CHECK(tfim_sdp_x(sdp, x, 2) == TFIM_ERR_USAGE);
  Text sj;
  CHECK(tfim_sdp_to_json(sdp, &sj.ptr) == TFIM_OK);
  CHECK(sj.str().find("\"C\"") != std::string::npos);
  tfim_sdp_free(sdp);

  CHECK(tfim_sdp_solve(inst, -1.0, &sdp) == TFIM_ERR_USAGE);

  double top = 0;
  CHECK(tfim_lambda_max(inst, 14, &top) == TFIM_OK);
  CHECK(top == doctest::Approx(3.6).epsilon(1e-12));
  CHECK(tfim_lambda_max(inst, 2, &top) == TFIM_ERR_USAGE);

  const double split[9] = {1, 0, 0, 0.6, 0, 0.8, 0.6, 0, -0.8};
  double value = 0;
  CHECK(tfim_evaluate_product_state(inst, split, 3, &value) == TFIM_OK);
  CHECK(value == doctest::Approx(3.38).epsilon(1e-14));
  const double too_long[9] = {1, 1, 0, 0, 0, 0, 0, 0, 0};
  CHECK(tfim_evaluate_product_state(inst, too_long, 3, &value) == TFIM_ERR_USAGE);
  CHECK(tfim_evaluate_product_state(inst, split, 2, &value) == TFIM_ERR_USAGE);
  tfim_instance_free(inst);
}

TEST_CASE("reports") {
  tfim_instance* inst = nullptr;
  REQUIRE(tfim_instance_parse(kTriangle, &inst) == TFIM_OK);

  tfim_round_options ro;
  tfim_round_options_init(&ro);
  CHECK(ro.trials == 1000);
  CHECK(ro.q < 0);
  ro.trials = 20;
  Text round;
  CHECK(tfim_report_round(inst, &ro, &round.ptr) == TFIM_OK);
  CHECK(round.str().find("\"AlgC\"") != std::string::npos);
  ro.algo = "nope";
  Text bad;
  CHECK(tfim_report_round(inst, &ro, &bad.ptr) == TFIM_ERR_USAGE);
  CHECK(bad.ptr == nullptr);

  Text exact;
  CHECK(tfim_report_exact(inst, 14, 32, 1, &exact.ptr) == TFIM_OK);
  CHECK(exact.str().find("\"lambda_max\": 3.6") != std::string::npos);
  Text refused;
  CHECK(tfim_report_exact(inst, 2, 32, 1, &refused.ptr) == TFIM_ERR_USAGE);

  Text constants;
  CHECK(tfim_report_constants(&constants.ptr) == TFIM_OK);
  CHECK(constants.str().find("\"alpha_gw\": 0.8785672") != std::string::npos);

  Text csv, js, wrong;
  CHECK(tfim_report_curve(11, "csv", &csv.ptr) == TFIM_OK);
  CHECK(csv.str().rfind("p,q_opt,ratio", 0) == 0);
  CHECK(tfim_report_curve(11, "json", &js.ptr) == TFIM_OK);
  CHECK(js.str().find("\"features\"") != std::string::npos);
  CHECK(tfim_report_curve(11, "xml", &wrong.ptr) == TFIM_ERR_USAGE);
  CHECK(tfim_report_curve(1, "csv", &wrong.ptr) == TFIM_ERR_USAGE);

  Text tri;
  CHECK(tfim_report_triangle(0.6, 100, 100, 1, 1e-7, &tri.ptr) == TFIM_OK);
  CHECK(tri.str().find("\"passed\": true") != std::string::npos);

  tfim_bench_options bo;
  tfim_bench_options_init(&bo);
  bo.instances = 2;
  bo.n = 4;
  bo.trials = 10;
  Text bench;
  CHECK(tfim_report_bench(&bo, "csv", &bench.ptr) == TFIM_OK);
  const std::string rows = bench.str();
  CHECK(std::count(rows.begin(), rows.end(), '\n') == 3);
  tfim_instance_free(inst);
}
