#include <doctest.h>

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "suites.hpp"

using namespace flagcount;

TEST_CASE("config parsing: full round trip") {
  const std::string text =
      "# comment line\n"
      "qs = 2, 3\n"
      "n = 2\n"
      "degrees = 3,2,1 ; 2,1\n"
      "suites = tower, symbolic\n"
      "budget = 123456789012345678901234567890\n"
      "seed = 42\n"
      "out = /tmp/report.csv\n"
      "format = json\n";
  SuiteConfig cfg = parse_config_text(text, /*strict=*/true);
  CHECK(cfg.qs == std::vector<std::uint32_t>{2, 3});
  CHECK(cfg.n == 2);
  REQUIRE(cfg.degrees.size() == 2);
  CHECK(cfg.degrees[0] == DegreeVector({3, 2, 1}));
  CHECK(cfg.degrees[1] == DegreeVector({2, 1}));
  CHECK(cfg.suites == std::vector<std::string>{"tower", "symbolic"});
  CHECK(cfg.budget == Bigint("123456789012345678901234567890"));
  CHECK(cfg.seed == 42);
  CHECK(cfg.out == "/tmp/report.csv");
  CHECK(cfg.format == "json");
  // Untouched keys keep their defaults.
  CHECK(cfg.max_d == 3);
  CHECK(cfg.n_max == 5);
  CHECK(cfg.threads == 1);
  CHECK_FALSE(cfg.timing);
}

TEST_CASE("config parsing: extended keys only outside strict mode") {
  const std::string text =
      "threads = 4\n"
      "max_d = 2\n"
      "n_max = 3\n"
      "timing = true\n";
  SuiteConfig cfg = parse_config_text(text, /*strict=*/false);
  CHECK(cfg.threads == 4);
  CHECK(cfg.max_d == 2);
  CHECK(cfg.n_max == 3);
  CHECK(cfg.timing);

  CHECK_THROWS_AS(parse_config_text(text, /*strict=*/true), ConfigError);
  try {
    parse_config_text("qs = 2\nthreads = 4\n", /*strict=*/true);
  } catch (const ConfigError& e) {
    CHECK(e.line == 2);
    CHECK(std::string(e.what()).find("threads") != std::string::npos);
  }
}

TEST_CASE("config parsing: errors carry the offending line") {
  auto expect_line = [](const std::string& text, int line) {
    try {
      parse_config_text(text, /*strict=*/true);
      FAIL("expected ConfigError for: " << text);
    } catch (const ConfigError& e) {
      CHECK(e.line == line);
    }
  };
  expect_line("qs = 2\nbogus_key = 1\n", 2);
  expect_line("no equals sign here\n", 1);
  expect_line("qs = 2\n\n# c\ndegrees = 1,2\n", 4);  // increasing: rejected
  expect_line("degrees = 2,x\n", 1);
  expect_line("qs = 6\n", 1);   // not a prime power
  expect_line("qs = 2,\n", 1);  // trailing comma
  expect_line("format = yaml\n", 1);
  expect_line("suites = tower, nonsense\n", 1);
  expect_line("seed = twelve\n", 1);
}

TEST_CASE("suite names") {
  CHECK(is_suite_name("appendix"));
  CHECK(is_suite_name("sections"));
  CHECK(is_suite_name("tower"));
  CHECK(is_suite_name("census"));
  CHECK(is_suite_name("symbolic"));
  CHECK(is_suite_name("all"));
  CHECK_FALSE(is_suite_name("towers"));
  SuiteConfig cfg;
  CHECK_THROWS_AS(run_suite("towers", cfg), std::invalid_argument);
}

TEST_CASE("tower suite: explicit grid gives one matching row per case") {
  SuiteConfig cfg;
  cfg.qs = {2, 3, 4};
  cfg.degrees = {DegreeVector({2, 1}), DegreeVector({3, 1}),
                 DegreeVector({3, 2})};
  Report rep = run_suite("tower", cfg);
  CHECK(rep.rows.size() == 9);
  CHECK(rep.all_match());
  for (const ReportRow& r : rep.rows) {
    CHECK(r.suite == "tower");
    CHECK(r.n == 2);
    CHECK(r.millis == 0);
  }
  // Rows are sorted by q then degrees; the first is q=2, degrees "2,1".
  CHECK(rep.rows.front().q == 2);
  CHECK(rep.rows.front().degrees == "2,1");
  CHECK(rep.rows.front().expected == "24");
  CHECK(rep.rows.front().observed == "24");
}

TEST_CASE("tower suite report is byte-identical across runs and threads") {
  SuiteConfig cfg;
  cfg.qs = {2};
  cfg.degrees = {DegreeVector({3, 1})};
  Report a = run_suite("tower", cfg);
  cfg.threads = 4;
  Report b = run_suite("tower", cfg);
  CHECK(render_report(a, "csv") == render_report(b, "csv"));
  CHECK(render_report(a, "json") == render_report(b, "json"));
}

TEST_CASE("census suite: default run checks every stratum") {
  SuiteConfig cfg;
  Report rep = run_suite("census", cfg);
  CHECK(rep.all_match());
  // Root transition (1 stratum), level-1 transition (3 strata), plus the
  // two-splitting-strata row.
  CHECK(rep.rows.size() == 5);
  std::size_t fiber_rows = 0;
  bool saw_strata_row = false;
  for (const ReportRow& r : rep.rows) {
    if (r.suite == "fiber_count") {
      ++fiber_rows;
      CHECK(r.degrees == "3,2");
      if (r.level == 1) CHECK(r.expected == "8");
      if (r.level == 2) CHECK(r.expected == "48");
    }
    if (r.suite == "strata_nonempty") {
      saw_strata_row = true;
      CHECK(r.expected == "2");
      CHECK(r.observed == "2");
      CHECK(r.level == 1);
    }
  }
  CHECK(fiber_rows == 4);
  CHECK(saw_strata_row);
}

TEST_CASE("appendix suite: all identities hold on the default grid") {
  SuiteConfig cfg;
  Report rep = run_suite("appendix", cfg);
  CHECK(rep.all_match());
  // Per q: mobius 4, n_primitive 3, sigma 3, n_total 8, per_q 8, pairs 3,
  // pairs_per_q 3.
  CHECK(rep.rows.size() == 2 * (4 + 3 + 3 + 8 + 8 + 3 + 3));
  bool saw_naive = false, saw_ls = false;
  for (const ReportRow& r : rep.rows) {
    if (r.suite == "pairs") {
      if (r.stratum == "naive") saw_naive = true;
      if (r.stratum == "linear_solve") saw_ls = true;
      if (r.q == 2 && r.degrees == "1,2") CHECK(r.expected == "24");
      if (r.q == 3 && r.degrees == "1,2") CHECK(r.expected == "432");
    }
  }
  CHECK(saw_naive);
  CHECK(saw_ls);
}

TEST_CASE("sections suite: all identities hold on the default grid") {
  SuiteConfig cfg;
  cfg.qs = {2};  // keep the unit-test run fast; acceptance runs {2,3}
  Report rep = run_suite("sections", cfg);
  CHECK(rep.all_match());
  std::size_t np_rows = 0, census_rows = 0;
  for (const ReportRow& r : rep.rows) {
    if (r.suite == "np") ++np_rows;
    if (r.suite == "census_total" || r.suite == "census_part") ++census_rows;
  }
  CHECK(np_rows > 50);
  CHECK(census_rows > 100);
}

TEST_CASE("symbolic suite: identities, alpha, and evaluation") {
  SuiteConfig cfg;
  Report rep = run_suite("symbolic", cfg);
  CHECK(rep.all_match());
  std::size_t poly = 0, alpha = 0, eval = 0;
  for (const ReportRow& r : rep.rows) {
    if (r.suite == "omega_poly") {
      ++poly;
      CHECK(r.q == -1);
    }
    if (r.suite == "alpha") ++alpha;
    if (r.suite == "omega_eval") {
      ++eval;
      if (r.q == 2 && r.degrees == "2,1") CHECK(r.observed == "24");
    }
  }
  CHECK(poly == 20);
  CHECK(alpha == 20);
  CHECK(eval == 16);

  // The sampled vectors follow the seed.
  SuiteConfig other = cfg;
  other.seed = 9999;
  Report rep2 = run_suite("symbolic", other);
  CHECK(rep2.all_match());
  CHECK(render_report(rep, "csv") != render_report(rep2, "csv"));
}

TEST_CASE("run_suites merges the requested suites; empty list is empty") {
  SuiteConfig cfg;
  cfg.suites = {};
  Report rep = run_suites(cfg);
  CHECK(rep.rows.empty());
  CHECK(rep.all_match());
  CHECK(render_report(rep, "csv") ==
        "suite,q,n,degrees,level,stratum,expected,observed,match,millis\n");

  cfg.suites = {"tower", "symbolic"};
  cfg.qs = {2};
  cfg.degrees = {DegreeVector({2, 1})};
  Report merged = run_suites(cfg);
  bool saw_tower = false, saw_poly = false;
  for (const ReportRow& r : merged.rows) {
    if (r.suite == "tower") saw_tower = true;
    if (r.suite == "omega_poly") saw_poly = true;
  }
  CHECK(saw_tower);
  CHECK(saw_poly);
  // Sorted by suite name first.
  for (std::size_t i = 1; i < merged.rows.size(); ++i) {
    CHECK(merged.rows[i - 1].suite <= merged.rows[i].suite);
  }
}

TEST_CASE("CSV rendering: exact header, quoting, and null columns") {
  Report rep;
  ReportRow row;
  row.suite = "fiber_count";
  row.q = 2;
  row.n = 2;
  row.degrees = "3,2";
  row.level = 1;
  row.stratum = "(0,2) depth 0";
  row.expected = "8";
  row.observed = "8";
  row.match = true;
  row.millis = 0;
  rep.rows.push_back(row);
  ReportRow sym;
  sym.suite = "omega_poly";
  sym.n = 1;
  sym.degrees = "2";
  sym.expected = "L^3 - L^2";
  sym.observed = "L^3 - L^2";
  sym.match = true;
  rep.rows.push_back(sym);

  const std::string csv = render_report(rep, "csv");
  CHECK(csv ==
        "suite,q,n,degrees,level,stratum,expected,observed,match,millis\n"
        "fiber_count,2,2,\"3,2\",1,\"(0,2) depth 0\",8,8,true,0\n"
        "omega_poly,,1,2,,,L^3 - L^2,L^3 - L^2,true,0\n");

  ReportRow bad = row;
  bad.observed = "7";
  bad.match = false;
  rep.rows = {bad};
  CHECK(render_report(rep, "csv").find(",false,") != std::string::npos);
  CHECK_FALSE(rep.all_match());
  CHECK(rep.mismatches().rows.size() == 1);

  CHECK_THROWS_AS(render_report(rep, "xml"), std::invalid_argument);
}

TEST_CASE("JSON rendering: typed fields with nulls") {
  SuiteConfig cfg;
  cfg.qs = {2};
  cfg.degrees = {DegreeVector({2, 1})};
  Report rep = run_suite("tower", cfg);
  const std::string text = render_report(rep, "json");
  nlohmann::json parsed = nlohmann::json::parse(text);
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 1);
  const auto& row = parsed[0];
  CHECK(row["suite"] == "tower");
  CHECK(row["q"] == 2);
  CHECK(row["n"] == 2);
  CHECK(row["degrees"] == "2,1");
  CHECK(row["level"].is_null());
  CHECK(row["stratum"].is_null());
  CHECK(row["expected"] == "24");
  CHECK(row["observed"] == "24");
  CHECK(row["match"] == true);
  CHECK(row["millis"] == 0);
}
