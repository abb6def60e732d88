#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "formulas.hpp"

namespace flagcount {

// Everything a verification run needs.  Defaults reproduce the standard
// grids; explicit qs/degrees override them where a suite supports it.
struct SuiteConfig {
  std::vector<std::uint32_t> qs;      // empty = suite default
  std::vector<DegreeVector> degrees;  // empty = suite default
  std::uint32_t n = 0;                // informational; 0 = unset
  std::int64_t max_d = 3;             // caps the small brute-force degrees
  std::uint32_t n_max = 5;            // symbolic suite: max vector length
  Bigint budget{1000000000};          // refuse runs estimated above this
  std::uint64_t seed = 1729;          // symbolic suite degree sampling
  unsigned threads = 1;               // worker count; never changes results
  bool timing = false;                // when false, millis is always 0
  std::string out;                    // report path; empty = stdout
  std::string format = "csv";         // "csv" or "json"
  std::vector<std::string> suites;    // which suites to run
};

// Parses `key = value` lines ('#' starts a comment).  In strict mode only
// the sweep-file keys {qs, n, degrees, suites, budget, seed, out, format}
// are accepted; otherwise {threads, max_d, n_max, timing} are also allowed.
// Degree vectors are semicolon-separated comma-lists in the decreasing
// convention.  Malformed input raises ConfigError carrying the 1-based line.
SuiteConfig parse_config_text(const std::string& text, bool strict);

// One check: a closed-form expectation against an independent observation.
// Numeric parameter fields use -1 for "not applicable"; string fields use
// the empty string.
struct ReportRow {
  std::string suite;
  std::int64_t q = -1;
  std::int64_t n = -1;
  std::string degrees;
  std::int64_t level = -1;
  std::string stratum;
  std::string expected;
  std::string observed;
  bool match = false;
  std::int64_t millis = 0;
};

struct Report {
  std::vector<ReportRow> rows;
  bool all_match() const;
  Report mismatches() const;
};

// The five named suites, in canonical order.  "all" expands to these.
const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& name);

// Runs one named suite ("appendix", "sections", "tower", "census",
// "symbolic", or "all").  Rows come back sorted by (suite, q, n, degrees,
// level, stratum); the result is identical for any worker count.
Report run_suite(const std::string& name, const SuiteConfig& cfg);

// Runs every suite listed in cfg.suites and merges the rows (sorted).
Report run_suites(const SuiteConfig& cfg);

// Renders "csv" (fixed header, RFC 4180 quoting) or "json" (array of
// objects, same field names, counts as decimal strings).
std::string render_report(const Report& report, const std::string& format);

}  // namespace flagcount
