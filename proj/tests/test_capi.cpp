#include <doctest.h>

#include <json.hpp>

#include <string>

#include "flagcount.h"

namespace {

// Takes ownership of a C string result and converts it to std::string.
std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  fc_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("c api: field lifecycle and arithmetic") {
  fc_field* f = nullptr;
  REQUIRE(fc_field_new(9, &f) == FC_OK);
  REQUIRE(f != nullptr);
  CHECK(fc_field_order(f) == 9);
  CHECK(fc_field_characteristic(f) == 3);
  CHECK(fc_field_extension_degree(f) == 2);

  char* desc = nullptr;
  REQUIRE(fc_field_describe(f, &desc) == FC_OK);
  CHECK(take(desc).find("9") != std::string::npos);

  uint32_t r = 0;
  // 1 + 2 = 0 in characteristic 3.
  CHECK(fc_field_add(f, 1, 2, &r) == FC_OK);
  CHECK(r == 0);
  CHECK(fc_field_mul(f, 2, 2, &r) == FC_OK);
  CHECK(r == 1);
  CHECK(fc_field_neg(f, 1, &r) == FC_OK);
  CHECK(r == 2);
  // a * inv(a) = 1 for every nonzero a.
  for (uint32_t a = 1; a < 9; ++a) {
    uint32_t ia = 0, prod = 0;
    CHECK(fc_field_inv(f, a, &ia) == FC_OK);
    CHECK(fc_field_mul(f, a, ia, &prod) == FC_OK);
    CHECK(prod == 1);
  }
  // Fermat: a^(q-1) = 1; negative exponents go through the inverse.
  CHECK(fc_field_pow(f, 5, 8, &r) == FC_OK);
  CHECK(r == 1);
  uint32_t direct = 0, via_neg = 0;
  CHECK(fc_field_pow(f, 5, 3, &direct) == FC_OK);
  CHECK(fc_field_pow(f, 5, -5, &via_neg) == FC_OK);
  CHECK(direct == via_neg);  // 5^3 = 5^(8-5) = 5^-5

  CHECK(fc_field_div(f, 1, 0, &r) == FC_ERR_DIVISION_BY_ZERO);
  CHECK(std::string(fc_last_error()).find("division") != std::string::npos);
  CHECK(fc_field_inv(f, 0, &r) == FC_ERR_DIVISION_BY_ZERO);

  fc_field_free(f);
}

TEST_CASE("c api: field construction errors") {
  fc_field* f = nullptr;
  CHECK(fc_field_new(6, &f) == FC_ERR_NOT_PRIME_POWER);
  CHECK(f == nullptr);
  CHECK(std::string(fc_last_error()).find("6") != std::string::npos);
  CHECK(fc_field_new(512, &f) == FC_ERR_CAP_EXCEEDED);
  CHECK(fc_field_new(257, &f) == FC_ERR_CAP_EXCEEDED);
  // 256 = 2^8 is the last supported order for info handles.
  REQUIRE(fc_field_new(256, &f) == FC_OK);
  CHECK(fc_field_order(f) == 256);
  fc_field_free(f);
  CHECK(fc_field_new(2, nullptr) == FC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("c api: closed formulas") {
  char* s = nullptr;
  REQUIRE(fc_omega_order(2, "2,1", &s) == FC_OK);
  CHECK(take(s) == "24");
  REQUIRE(fc_gl_order(2, 3, &s) == FC_OK);
  CHECK(take(s) == "168");
  REQUIRE(fc_fiber_order(2, 2, 1, 0, &s) == FC_OK);
  CHECK(take(s) == "6");
  REQUIRE(fc_np_order(2, 2, 2, &s) == FC_OK);
  CHECK(take(s) == "2");
  REQUIRE(fc_pairs_closed(3, 1, 2, &s) == FC_OK);
  CHECK(take(s) == "432");
  REQUIRE(fc_total_closed(2, 1, 2, &s) == FC_OK);
  CHECK(take(s) == "80");
  REQUIRE(fc_sigma_closed(2, 1, &s) == FC_OK);
  CHECK(take(s) == "10");
  REQUIRE(fc_primitive_closed(3, 1, &s) == FC_OK);
  CHECK(take(s) == "24");
  REQUIRE(fc_mobius_closed(2, 1, &s) == FC_OK);
  CHECK(take(s) == "-2");

  CHECK(fc_omega_order(2, "1,2", &s) == FC_ERR_INVALID_ARGUMENT);
  CHECK(fc_omega_order(6, "2,1", &s) == FC_ERR_NOT_PRIME_POWER);
  CHECK(fc_pairs_closed(2, 2, 2, &s) == FC_ERR_INVALID_ARGUMENT);
  CHECK(fc_total_closed(2, 3, 2, &s) == FC_ERR_INVALID_ARGUMENT);
  CHECK(fc_omega_order(2, nullptr, &s) == FC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("c api: symbolic classes") {
  char* s = nullptr;
  REQUIRE(fc_class_omega("2,1", &s) == FC_OK);
  CHECK(take(s) == "L^6 - L^5 - L^4 + L^3");
  REQUIRE(fc_class_gl(2, &s) == FC_OK);
  CHECK(take(s) == "L^4 - L^3 - L^2 + L");
  REQUIRE(fc_class_np(2, 2, &s) == FC_OK);
  CHECK(take(s) == "L^2 - L");
  CHECK(fc_class_omega("1,1", &s) == FC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("c api: tower count with and without census") {
  char* s = nullptr;
  REQUIRE(fc_count_tower(2, "2,1", nullptr, 1, 0, &s) == FC_OK);
  auto j = nlohmann::json::parse(take(s));
  CHECK(j["total"] == "24");
  CHECK(j["nodes_checked"] == 31);
  CHECK_FALSE(j.contains("census"));

  REQUIRE(fc_count_tower(2, "3,2", "", 4, 1, &s) == FC_OK);
  j = nlohmann::json::parse(take(s));
  CHECK(j["total"] == "384");
  REQUIRE(j.contains("census"));
  REQUIRE(j["census"].contains("1"));
  CHECK(j["census"]["1"].size() == 3);
  bool saw_depth2 = false;
  for (const auto& stratum : j["census"]["1"]) {
    if (stratum["splitting"] == "(0,2)" && stratum["depth"] == 2) {
      saw_depth2 = true;
      CHECK(stratum["base_points"] == 8);
      CHECK(stratum["fiber_counts"]["8"] == "8");
    }
  }
  CHECK(saw_depth2);

  CHECK(fc_count_tower(2, "3,2,1", "10", 1, 0, &s) ==
        FC_ERR_BUDGET_EXCEEDED);
  CHECK(std::string(fc_last_error()).find("budget") != std::string::npos);
  CHECK(fc_count_tower(2, "1,2", nullptr, 1, 0, &s) ==
        FC_ERR_INVALID_ARGUMENT);
  CHECK(fc_count_tower(2, "2,1", "xyz", 1, 0, &s) == FC_ERR_INVALID_ARGUMENT);
  CHECK(fc_count_tower(2, "2,1", nullptr, 0, 0, &s) ==
        FC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("c api: pair counts") {
  char* s = nullptr;
  REQUIRE(fc_count_pairs(2, 1, 2, "naive", nullptr, &s) == FC_OK);
  auto j = nlohmann::json::parse(take(s));
  CHECK(j["count"] == "24");

  REQUIRE(fc_count_pairs(2, 2, 3, "linear_solve", nullptr, &s) == FC_OK);
  j = nlohmann::json::parse(take(s));
  CHECK(j["count"] == "384");
  CHECK(j["q_enumerated"] == j["q_matching"]);

  CHECK(fc_count_pairs(2, 1, 2, "guess", nullptr, &s) ==
        FC_ERR_INVALID_ARGUMENT);
  CHECK(fc_count_pairs(2, 2, 1, "naive", nullptr, &s) ==
        FC_ERR_INVALID_ARGUMENT);
  CHECK(fc_count_pairs(2, 1, 9, "naive", "100", &s) ==
        FC_ERR_BUDGET_EXCEEDED);
}

TEST_CASE("c api: section counts and censuses") {
  char* s = nullptr;
  REQUIRE(fc_sections_count(2, "1,1", 0, "1,0", &s) == FC_OK);
  CHECK(take(s) == "2");
  // Summand order does not matter.
  REQUIRE(fc_sections_count(2, "0,2", 1, "1,1", &s) == FC_OK);
  std::string a = take(s);
  REQUIRE(fc_sections_count(2, "2,0", 1, "1,1", &s) == FC_OK);
  CHECK(a == take(s));

  REQUIRE(fc_sections_census(2, "1,1", 0, "1,0", &s) == FC_OK);
  auto j = nlohmann::json::parse(take(s));
  CHECK(j["0"] == "2");
  CHECK(j["1"] == "2");

  CHECK(fc_sections_count(2, "1,1", 0, "0,0", &s) == FC_ERR_INVALID_ARGUMENT);
  CHECK(fc_sections_count(2, "1,1", 0, "1,5", &s) == FC_ERR_INVALID_ARGUMENT);
  CHECK(fc_sections_count(2, "1,x", 0, "1,0", &s) == FC_ERR_INVALID_ARGUMENT);
  CHECK(fc_sections_census(2, "1,1", -5, "1,0", &s) ==
        FC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("c api: suite runs and reports") {
  fc_report* rep = nullptr;
  REQUIRE(fc_suite_run("tower", "qs = 2\ndegrees = 2,1\n", &rep) == FC_OK);
  REQUIRE(rep != nullptr);
  CHECK(fc_report_row_count(rep) == 1);
  CHECK(fc_report_all_match(rep) == 1);
  CHECK(std::string(fc_report_out_path(rep)).empty());
  CHECK(std::string(fc_report_format(rep)) == "csv");

  char* s = nullptr;
  REQUIRE(fc_report_render(rep, "csv", &s) == FC_OK);
  std::string csv = take(s);
  CHECK(csv.find("suite,q,n,degrees,level,stratum,expected,observed,match,"
                 "millis") == 0);
  CHECK(csv.find("tower,2,2,\"2,1\",,,24,24,true,0") != std::string::npos);
  REQUIRE(fc_report_render_mismatches(rep, "csv", &s) == FC_OK);
  // All rows matched, so only the header remains.
  CHECK(take(s) ==
        "suite,q,n,degrees,level,stratum,expected,observed,match,millis\n");
  CHECK(fc_report_render(rep, "yaml", &s) == FC_ERR_INVALID_ARGUMENT);
  fc_report_free(rep);

  CHECK(fc_suite_run("bogus", "", &rep) == FC_ERR_INVALID_ARGUMENT);
  CHECK(fc_suite_run("tower", "qs = 2\nbad_key = 1\n", &rep) ==
        FC_ERR_CONFIG);
  CHECK(fc_last_error_line() == 2);
}

TEST_CASE("c api: sweep runs use the strict key set") {
  fc_report* rep = nullptr;
  const char* cfg =
      "qs = 2\n"
      "degrees = 2,1\n"
      "suites = tower\n"
      "format = json\n"
      "out = report.json\n";
  REQUIRE(fc_sweep_run(cfg, &rep) == FC_OK);
  CHECK(fc_report_row_count(rep) == 1);
  CHECK(fc_report_all_match(rep) == 1);
  CHECK(std::string(fc_report_out_path(rep)) == "report.json");
  CHECK(std::string(fc_report_format(rep)) == "json");
  char* s = nullptr;
  REQUIRE(fc_report_render(rep, fc_report_format(rep), &s) == FC_OK);
  auto j = nlohmann::json::parse(take(s));
  REQUIRE(j.is_array());
  CHECK(j[0]["observed"] == "24");
  fc_report_free(rep);

  // threads is not a sweep key.
  CHECK(fc_sweep_run("qs = 2\nthreads = 4\n", &rep) == FC_ERR_CONFIG);
  CHECK(fc_last_error_line() == 2);
  // Non-monotonic degrees are a config error naming the line.
  CHECK(fc_sweep_run("degrees = 1,2\n", &rep) == FC_ERR_CONFIG);
  CHECK(fc_last_error_line() == 1);

  // An empty suite list is a valid, empty run.
  REQUIRE(fc_sweep_run("", &rep) == FC_OK);
  CHECK(fc_report_row_count(rep) == 0);
  CHECK(fc_report_all_match(rep) == 1);
  fc_report_free(rep);
}
