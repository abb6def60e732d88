// Command-line front end for the flag-map counting library.  Talks to the
// core exclusively through the C interface in flagcount.h.
//
// Exit codes: 0 success; 1 verification mismatch, budget refusal, or
// internal failure; 2 usage or configuration error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "flagcount.h"

namespace {

std::string take(char* s) {
  std::string out = s == nullptr ? "" : s;
  fc_string_free(s);
  return out;
}

// Prints the library's diagnostic and converts its status to an exit code.
int fail_status(fc_status st) {
  if (st == FC_ERR_CONFIG && fc_last_error_line() > 0) {
    std::cerr << "config error at line " << fc_last_error_line() << ": "
              << fc_last_error() << "\n";
  } else if (st == FC_ERR_BUDGET_EXCEEDED) {
    std::cerr << "refused: " << fc_last_error() << "\n";
  } else {
    std::cerr << "error: " << fc_last_error() << "\n";
  }
  switch (st) {
    case FC_OK:
      return 0;
    case FC_ERR_BUDGET_EXCEEDED:
    case FC_ERR_INTERNAL:
      return 1;
    default:
      return 2;
  }
}

int usage_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 2;
}

bool parse_ints(const std::string& text, std::vector<long long>& out) {
  out.clear();
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stoll(tok, &pos));
      while (pos < tok.size() &&
             std::isspace(static_cast<unsigned char>(tok[pos]))) {
        ++pos;
      }
      if (pos != tok.size()) return false;
    } catch (const std::exception&) {
      return false;
    }
  }
  return !out.empty();
}

int write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) return usage_error("cannot open output file '" + path + "'");
  f << text;
  return 0;
}

// Renders a finished report, writes it, and prints mismatches to stderr.
int finish_report(fc_report* rep, const std::string& format_flag,
                  const std::string& out_flag) {
  const std::string format =
      !format_flag.empty() ? format_flag : std::string(fc_report_format(rep));
  const std::string out_path =
      !out_flag.empty() ? out_flag : std::string(fc_report_out_path(rep));
  char* rendered = nullptr;
  fc_status st = fc_report_render(rep, format.c_str(), &rendered);
  if (st != FC_OK) {
    fc_report_free(rep);
    return fail_status(st);
  }
  const int wr = write_output(take(rendered), out_path);
  if (wr != 0) {
    fc_report_free(rep);
    return wr;
  }
  if (fc_report_all_match(rep) != 0) {
    fc_report_free(rep);
    return 0;
  }
  char* mism = nullptr;
  if (fc_report_render_mismatches(rep, format.c_str(), &mism) == FC_OK) {
    std::cerr << "mismatched rows:\n" << take(mism);
  }
  fc_report_free(rep);
  return 1;
}

struct FormulaArgs {
  std::string kind;
  std::uint32_t q = 0;
  bool has_q = false;
  std::string degrees;
  std::uint32_t n = 0;
  bool has_n = false;
  std::uint32_t level = 0;
  bool has_level = false;
  bool symbolic = false;
};

// The status must be computed before this is called so that `s` is filled.
int print_value(fc_status st, char** s) {
  if (st != FC_OK) return fail_status(st);
  std::cout << take(*s) << "\n";
  return 0;
}

int run_formula(const FormulaArgs& a) {
  char* s = nullptr;
  fc_status st = FC_OK;
  std::vector<long long> d;
  const bool has_degrees = !a.degrees.empty();
  if (has_degrees && !parse_ints(a.degrees, d)) {
    return usage_error("bad --degrees '" + a.degrees + "'");
  }

  if (a.kind == "omega") {
    if (!has_degrees) return usage_error("omega needs --degrees");
    if (a.symbolic) {
      st = fc_class_omega(a.degrees.c_str(), &s);
      return print_value(st, &s);
    }
    if (!a.has_q) return usage_error("omega needs --q or --symbolic");
    st = fc_omega_order(a.q, a.degrees.c_str(), &s);
    return print_value(st, &s);
  }
  if (a.kind == "gl") {
    if (!a.has_n) return usage_error("gl needs --n");
    if (a.symbolic) {
      st = fc_class_gl(a.n, &s);
      return print_value(st, &s);
    }
    if (!a.has_q) return usage_error("gl needs --q or --symbolic");
    st = fc_gl_order(a.q, a.n, &s);
    return print_value(st, &s);
  }
  if (a.kind == "np") {
    if (!has_degrees || d.size() != 1) {
      return usage_error("np needs --degrees <d> (one entry)");
    }
    if (!a.has_n) return usage_error("np needs --n (the rank)");
    if (a.symbolic) {
      st = fc_class_np(d[0], a.n, &s);
      return print_value(st, &s);
    }
    if (!a.has_q) return usage_error("np needs --q or --symbolic");
    st = fc_np_order(a.q, d[0], a.n, &s);
    return print_value(st, &s);
  }
  if (a.symbolic) {
    return usage_error("--symbolic applies to omega, gl, and np only");
  }
  if (!a.has_q) return usage_error(a.kind + " needs --q");
  if (a.kind == "fiber") {
    if (!a.has_level) return usage_error("fiber needs --level");
    if (!has_degrees || d.size() != 2) {
      return usage_error("fiber needs --degrees <d_k,d_next>");
    }
    st = fc_fiber_order(a.q, a.level, d[0], d[1], &s);
    return print_value(st, &s);
  }
  if (a.kind == "pairs") {
    if (!has_degrees || d.size() != 2) {
      return usage_error("pairs needs --degrees <d1,d2> with d1 < d2");
    }
    st = fc_pairs_closed(a.q, d[0], d[1], &s);
    return print_value(st, &s);
  }
  if (a.kind == "ntotal") {
    if (!has_degrees || d.size() != 2) {
      return usage_error("ntotal needs --degrees <d_a,d_b>");
    }
    st = fc_total_closed(a.q, d[0], d[1], &s);
    return print_value(st, &s);
  }
  if (!has_degrees || d.size() != 1) {
    return usage_error(a.kind + " needs --degrees <d> (one entry)");
  }
  if (a.kind == "sigma") {
    st = fc_sigma_closed(a.q, d[0], &s);
    return print_value(st, &s);
  }
  if (a.kind == "npr") {
    st = fc_primitive_closed(a.q, d[0], &s);
    return print_value(st, &s);
  }
  if (a.kind == "mobius") {
    st = fc_mobius_closed(a.q, d[0], &s);
    return print_value(st, &s);
  }
  return usage_error("unknown formula '" + a.kind + "'");
}

struct VerifyArgs {
  std::string suite;
  std::string qs;
  std::string degrees;
  std::string budget;
  std::string seed;
  std::string max_d;
  std::string n_max;
  std::string threads;
  bool timing = false;
  std::string format;
  std::string out;
};

std::string compose_config(const VerifyArgs& v) {
  std::string cfg;
  if (!v.qs.empty()) cfg += "qs = " + v.qs + "\n";
  if (!v.degrees.empty()) cfg += "degrees = " + v.degrees + "\n";
  if (!v.budget.empty()) cfg += "budget = " + v.budget + "\n";
  if (!v.seed.empty()) cfg += "seed = " + v.seed + "\n";
  if (!v.max_d.empty()) cfg += "max_d = " + v.max_d + "\n";
  if (!v.n_max.empty()) cfg += "n_max = " + v.n_max + "\n";
  if (!v.threads.empty()) cfg += "threads = " + v.threads + "\n";
  if (v.timing) cfg += "timing = true\n";
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact point counts of based-map spaces to flag varieties"};
  app.require_subcommand(1);

  // ------------------------------------------------------------- formula
  FormulaArgs fa;
  CLI::App* formula = app.add_subcommand(
      "formula", "Evaluate a closed counting formula");
  formula->add_option("kind", fa.kind,
                      "one of omega|gl|fiber|np|pairs|ntotal|sigma|npr|mobius")
      ->required();
  CLI::Option* fa_q =
      formula->add_option("--q", fa.q, "field order")
          ->check(CLI::PositiveNumber);
  formula->add_option("--degrees", fa.degrees, "comma-separated degrees");
  CLI::Option* fa_n = formula->add_option("--n", fa.n, "rank parameter");
  CLI::Option* fa_level =
      formula->add_option("--level", fa.level, "tower level k");
  formula->add_flag("--symbolic", fa.symbolic,
                    "print the class as a polynomial in L");

  // -------------------------------------------------------------- verify
  VerifyArgs va;
  std::string verify_suite;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run a verification suite and report expected vs observed");
  verify->add_option("--suite", verify_suite,
                     "appendix|sections|tower|census|symbolic|all")
      ->required();
  verify->add_option("--q", va.qs, "comma-separated field orders");
  verify->add_option("--degrees", va.degrees,
                     "semicolon-separated degree vectors (decreasing)");
  verify->add_option("--budget", va.budget, "work budget (integer)");
  verify->add_option("--seed", va.seed, "seed for sampled degree vectors");
  verify->add_option("--max-d", va.max_d, "cap for small brute-force degrees");
  verify->add_option("--n-max", va.n_max, "max degree-vector length");
  verify->add_option("--threads", va.threads, "worker count (speed only)");
  verify->add_flag("--timing", va.timing, "record wall times in reports");
  verify->add_option("--format", va.format, "csv|json");
  verify->add_option("--out", va.out, "report path (default stdout)");

  // --------------------------------------------------------------- sweep
  std::string sweep_path;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Run the suites described by a config file");
  sweep->add_option("config", sweep_path, "path to a key = value config file")
      ->required();

  // --------------------------------------------------------------- count
  CLI::App* count = app.add_subcommand("count", "Exhaustive enumeration");
  count->require_subcommand(1);
  std::uint32_t ct_q = 0;
  std::string ct_degrees, ct_budget;
  unsigned ct_threads = 1;
  bool ct_census = false;
  CLI::App* count_tower_cmd =
      count->add_subcommand("tower", "count based flag maps level by level");
  count_tower_cmd->add_option("--q", ct_q, "field order")->required();
  count_tower_cmd->add_option("--degrees", ct_degrees,
                              "decreasing degree vector")
      ->required();
  count_tower_cmd->add_option("--budget", ct_budget, "work budget");
  count_tower_cmd->add_option("--threads", ct_threads,
                              "worker count (speed only)");
  count_tower_cmd->add_flag("--census", ct_census,
                            "print the full stratum census as JSON");
  std::uint32_t cp_q = 0;
  std::string cp_degrees, cp_budget, cp_method = "naive";
  bool cp_stats = false;
  CLI::App* count_pairs_cmd = count->add_subcommand(
      "pairs", "count primitive intersecting polynomial pairs");
  count_pairs_cmd->add_option("--q", cp_q, "field order")->required();
  count_pairs_cmd->add_option("--degrees", cp_degrees, "d1,d2 with d1 < d2")
      ->required();
  count_pairs_cmd
      ->add_option("--method", cp_method, "naive|linear_solve")
      ->check(CLI::IsMember({"naive", "linear_solve"}));
  count_pairs_cmd->add_option("--budget", cp_budget, "work budget");
  count_pairs_cmd->add_flag("--stats", cp_stats,
                            "print solver statistics as JSON");

  // ------------------------------------------------------------ sections
  CLI::App* sections =
      app.add_subcommand("sections", "Based sections of bundles on the line");
  sections->require_subcommand(1);
  std::uint32_t se_q = 0;
  std::string se_type, se_base;
  std::int64_t se_twist = 0;
  CLI::App* sections_count_cmd = sections->add_subcommand(
      "count", "count nowhere-vanishing canonical based sections");
  CLI::App* sections_census_cmd = sections->add_subcommand(
      "census", "all canonical based sections grouped by gcd degree");
  for (CLI::App* sub : {sections_count_cmd, sections_census_cmd}) {
    sub->add_option("--q", se_q, "field order")->required();
    sub->add_option("--type", se_type, "splitting summands, e.g. 0,2")
        ->required();
    sub->add_option("--twist", se_twist, "twist applied to every summand");
    sub->add_option("--base", se_base, "basepoint fiber vector, e.g. 1,0")
        ->required();
  }

  // --------------------------------------------------------------- field
  CLI::App* field = app.add_subcommand("field", "Finite field utilities");
  field->require_subcommand(1);
  std::uint32_t fi_q = 0;
  CLI::App* field_info =
      field->add_subcommand("info", "print the canonical field construction");
  field_info->add_option("--q", fi_q, "field order")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (formula->parsed()) {
    fa.has_q = fa_q->count() > 0;
    fa.has_n = fa_n->count() > 0;
    fa.has_level = fa_level->count() > 0;
    return run_formula(fa);
  }

  if (verify->parsed()) {
    fc_report* rep = nullptr;
    const fc_status st =
        fc_suite_run(verify_suite.c_str(), compose_config(va).c_str(), &rep);
    if (st != FC_OK) return fail_status(st);
    return finish_report(rep, va.format, va.out);
  }

  if (sweep->parsed()) {
    std::ifstream in(sweep_path, std::ios::binary);
    if (!in) return usage_error("cannot read config file '" + sweep_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    fc_report* rep = nullptr;
    const fc_status st = fc_sweep_run(buf.str().c_str(), &rep);
    if (st != FC_OK) return fail_status(st);
    return finish_report(rep, "", "");
  }

  if (count_tower_cmd->parsed()) {
    char* s = nullptr;
    const fc_status st =
        fc_count_tower(ct_q, ct_degrees.c_str(), ct_budget.c_str(),
                       ct_threads, ct_census ? 1 : 0, &s);
    if (st != FC_OK) return fail_status(st);
    const std::string text = take(s);
    if (ct_census) {
      std::cout << text;
    } else {
      std::cout << nlohmann::json::parse(text)["total"].get<std::string>()
                << "\n";
    }
    return 0;
  }

  if (count_pairs_cmd->parsed()) {
    std::vector<long long> d;
    if (!parse_ints(cp_degrees, d) || d.size() != 2) {
      return usage_error("count pairs needs --degrees <d1,d2>");
    }
    char* s = nullptr;
    const fc_status st = fc_count_pairs(cp_q, d[0], d[1], cp_method.c_str(),
                                        cp_budget.c_str(), &s);
    if (st != FC_OK) return fail_status(st);
    const std::string text = take(s);
    if (cp_stats) {
      std::cout << text;
    } else {
      std::cout << nlohmann::json::parse(text)["count"].get<std::string>()
                << "\n";
    }
    return 0;
  }

  if (sections_count_cmd->parsed()) {
    char* s = nullptr;
    const fc_status st = fc_sections_count(se_q, se_type.c_str(), se_twist,
                                           se_base.c_str(), &s);
    return print_value(st, &s);
  }

  if (sections_census_cmd->parsed()) {
    char* s = nullptr;
    const fc_status st = fc_sections_census(se_q, se_type.c_str(), se_twist,
                                            se_base.c_str(), &s);
    if (st != FC_OK) return fail_status(st);
    std::cout << take(s);
    return 0;
  }

  if (field_info->parsed()) {
    fc_field* f = nullptr;
    const fc_status st = fc_field_new(fi_q, &f);
    if (st != FC_OK) return fail_status(st);
    char* s = nullptr;
    const fc_status ds = fc_field_describe(f, &s);
    if (ds != FC_OK) {
      fc_field_free(f);
      return fail_status(ds);
    }
    std::cout << take(s) << "\n";
    std::cout << "order " << fc_field_order(f) << ", characteristic "
              << fc_field_characteristic(f) << ", extension degree "
              << fc_field_extension_degree(f) << "\n";
    fc_field_free(f);
    return 0;
  }

  return usage_error("no subcommand given");
}
