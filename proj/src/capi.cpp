#include "flagcount.h"

#include <cctype>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bundles.hpp"
#include "errors.hpp"
#include "flagmaps.hpp"
#include "formulas.hpp"
#include "gf.hpp"
#include "motivic.hpp"
#include "suites.hpp"

using namespace flagcount;

extern "C" {
struct fc_field {
  Field impl;
};
struct fc_report {
  Report rep;
  std::string out_path;
  std::string format;
};
}

namespace {

thread_local std::string g_error;
thread_local int g_error_line = -1;

void clear_error() {
  g_error.clear();
  g_error_line = -1;
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p != nullptr) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <typename Fn>
fc_status wrap(Fn&& fn) {
  clear_error();
  try {
    fn();
    return FC_OK;
  } catch (const NotPrimePowerError& e) {
    g_error = e.what();
    return FC_ERR_NOT_PRIME_POWER;
  } catch (const FieldCapError& e) {
    g_error = e.what();
    return FC_ERR_CAP_EXCEEDED;
  } catch (const BudgetError& e) {
    g_error = e.what();
    return FC_ERR_BUDGET_EXCEEDED;
  } catch (const ConfigError& e) {
    g_error = e.what();
    g_error_line = e.line;
    return FC_ERR_CONFIG;
  } catch (const std::domain_error& e) {
    g_error = e.what();
    return FC_ERR_DIVISION_BY_ZERO;
  } catch (const std::invalid_argument& e) {
    g_error = e.what();
    return FC_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_error = e.what();
    return FC_ERR_INTERNAL;
  } catch (...) {
    g_error = "unknown error";
    return FC_ERR_INTERNAL;
  }
}

fc_status fail_invalid(const char* msg) {
  clear_error();
  g_error = msg;
  return FC_ERR_INVALID_ARGUMENT;
}

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// The closed formulas are polynomial in q, but their counting meaning
// requires a prime power; reject anything else up front.
void validate_q(std::uint32_t q) {
  Field probe(q, 256);
  (void)probe;
}

Bigint parse_budget(const char* budget) {
  if (budget == nullptr || *budget == '\0') return Bigint(1000000000);
  try {
    return Bigint(std::string(budget));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad budget '" + std::string(budget) + "'");
  }
}

std::vector<std::int64_t> parse_int_list(const char* text, const char* what) {
  require(text != nullptr, "missing list argument");
  std::vector<std::int64_t> out;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(what) + ": bad entry '" + tok +
                                  "'");
    }
    while (pos < tok.size() &&
           std::isspace(static_cast<unsigned char>(tok[pos]))) {
      ++pos;
    }
    if (pos != tok.size()) {
      throw std::invalid_argument(std::string(what) + ": bad entry '" + tok +
                                  "'");
    }
    out.push_back(v);
  }
  require(!out.empty(), "empty list argument");
  return out;
}

FiberVector parse_basepoint(const Field& f, const char* text) {
  FiberVector v;
  for (std::int64_t x : parse_int_list(text, "basepoint")) {
    require(x >= 0 && static_cast<std::uint64_t>(x) < f.order(),
            "basepoint entry out of field range");
    v.push_back(static_cast<std::uint32_t>(x));
  }
  return v;
}

void emit(char** out, const std::string& s) {
  require(out != nullptr, "null output pointer");
  *out = dup_string(s);
  if (*out == nullptr) throw std::runtime_error("out of memory");
}

}  // namespace

extern "C" {

const char* fc_last_error(void) { return g_error.c_str(); }

int fc_last_error_line(void) { return g_error_line; }

void fc_string_free(char* s) { std::free(s); }

/* ------------------------------------------------------------ fields --- */

fc_status fc_field_new(uint32_t q, fc_field** out) {
  if (out == nullptr) return fail_invalid("null output pointer");
  *out = nullptr;
  return wrap([&] {
    // Info/arithmetic handles allow the full supported range; enumeration
    // entry points keep the tighter default cap.
    *out = new fc_field{Field(q, 256)};
  });
}

void fc_field_free(fc_field* f) { delete f; }

uint32_t fc_field_order(const fc_field* f) {
  return f == nullptr ? 0 : f->impl.order();
}

uint32_t fc_field_characteristic(const fc_field* f) {
  return f == nullptr ? 0 : f->impl.characteristic();
}

uint32_t fc_field_extension_degree(const fc_field* f) {
  return f == nullptr ? 0 : f->impl.extension_degree();
}

fc_status fc_field_describe(const fc_field* f, char** out) {
  if (f == nullptr) return fail_invalid("null field handle");
  return wrap([&] { emit(out, f->impl.describe()); });
}

#define FC_FIELD_BINOP(name, expr)                                       \
  fc_status name(const fc_field* f, uint32_t a, uint32_t b,              \
                 uint32_t* out) {                                        \
    if (f == nullptr) return fail_invalid("null field handle");          \
    if (out == nullptr) return fail_invalid("null output pointer");      \
    return wrap([&] { *out = (expr); });                                 \
  }

FC_FIELD_BINOP(fc_field_add, f->impl.add(a, b))
FC_FIELD_BINOP(fc_field_sub, f->impl.sub(a, b))
FC_FIELD_BINOP(fc_field_mul, f->impl.mul(a, b))
FC_FIELD_BINOP(fc_field_div, f->impl.div(a, b))
#undef FC_FIELD_BINOP

fc_status fc_field_neg(const fc_field* f, uint32_t a, uint32_t* out) {
  if (f == nullptr) return fail_invalid("null field handle");
  if (out == nullptr) return fail_invalid("null output pointer");
  return wrap([&] { *out = f->impl.neg(a); });
}

fc_status fc_field_inv(const fc_field* f, uint32_t a, uint32_t* out) {
  if (f == nullptr) return fail_invalid("null field handle");
  if (out == nullptr) return fail_invalid("null output pointer");
  return wrap([&] { *out = f->impl.inv(a); });
}

fc_status fc_field_pow(const fc_field* f, uint32_t a, int64_t e,
                       uint32_t* out) {
  if (f == nullptr) return fail_invalid("null field handle");
  if (out == nullptr) return fail_invalid("null output pointer");
  return wrap([&] {
    if (e >= 0) {
      *out = f->impl.pow(a, static_cast<std::uint64_t>(e));
    } else {
      *out = f->impl.pow(f->impl.inv(a), static_cast<std::uint64_t>(-e));
    }
  });
}

/* ---------------------------------------------------- closed formulas --- */

fc_status fc_omega_order(uint32_t q, const char* degrees, char** out) {
  return wrap([&] {
    validate_q(q);
    require(degrees != nullptr, "missing degrees");
    emit(out, omega_order(q, DegreeVector::parse(degrees)).str());
  });
}

fc_status fc_gl_order(uint32_t q, uint32_t n, char** out) {
  return wrap([&] {
    validate_q(q);
    emit(out, gl_order(q, n).str());
  });
}

fc_status fc_fiber_order(uint32_t q, uint32_t level, int64_t d_k,
                         int64_t d_next, char** out) {
  return wrap([&] {
    validate_q(q);
    emit(out, fiber_order(q, level, d_k, d_next).str());
  });
}

fc_status fc_np_order(uint32_t q, int64_t d, uint32_t r, char** out) {
  return wrap([&] {
    validate_q(q);
    emit(out, np_order(q, d, r).str());
  });
}

fc_status fc_pairs_closed(uint32_t q, int64_t d1, int64_t d2, char** out) {
  return wrap([&] {
    validate_q(q);
    require(d1 >= 1 && d1 < d2, "pair degrees must satisfy 1 <= d1 < d2");
    emit(out, n_pairs_closed(q, static_cast<std::uint64_t>(d1),
                             static_cast<std::uint64_t>(d2))
                  .str());
  });
}

fc_status fc_total_closed(uint32_t q, int64_t d_a, int64_t d_b, char** out) {
  return wrap([&] {
    validate_q(q);
    require(d_a >= 0 && d_a <= d_b && d_b >= 1,
            "total degrees must satisfy 0 <= d_a <= d_b, d_b >= 1");
    emit(out, n_total_closed(q, static_cast<std::uint64_t>(d_a),
                             static_cast<std::uint64_t>(d_b))
                  .str());
  });
}

fc_status fc_sigma_closed(uint32_t q, int64_t d, char** out) {
  return wrap([&] {
    validate_q(q);
    require(d >= 0, "degree must be >= 0");
    emit(out, sigma_closed(q, static_cast<std::uint64_t>(d)).str());
  });
}

fc_status fc_primitive_closed(uint32_t q, int64_t d, char** out) {
  return wrap([&] {
    validate_q(q);
    require(d >= 0, "degree must be >= 0");
    emit(out, n_primitive_closed(q, static_cast<std::uint64_t>(d)).str());
  });
}

fc_status fc_mobius_closed(uint32_t q, int64_t k, char** out) {
  return wrap([&] {
    validate_q(q);
    require(k >= 0, "degree must be >= 0");
    emit(out, mobius_sum_closed(q, static_cast<std::uint64_t>(k)).str());
  });
}

fc_status fc_class_omega(const char* degrees, char** out) {
  return wrap([&] {
    require(degrees != nullptr, "missing degrees");
    emit(out, class_omega_closed(DegreeVector::parse(degrees)).str());
  });
}

fc_status fc_class_gl(uint32_t n, char** out) {
  return wrap([&] { emit(out, class_gl(n).str()); });
}

fc_status fc_class_np(int64_t d, uint32_t r, char** out) {
  return wrap([&] { emit(out, class_np(d, r).str()); });
}

/* ------------------------------------------------------- enumerations --- */

fc_status fc_count_tower(uint32_t q, const char* degrees, const char* budget,
                         unsigned threads, int with_census, char** out_json) {
  return wrap([&] {
    require(degrees != nullptr, "missing degrees");
    require(threads >= 1, "threads must be >= 1");
    Field f(q);
    DegreeVector dv = DegreeVector::parse(degrees);
    TowerOptions opts;
    opts.budget = parse_budget(budget);
    opts.threads = threads;
    opts.with_census = with_census != 0;
    TowerResult r = count_tower(f, dv, opts);
    nlohmann::ordered_json j;
    j["total"] = r.total.str();
    j["nodes_checked"] = r.nodes_checked;
    if (opts.with_census) {
      nlohmann::ordered_json levels = nlohmann::ordered_json::object();
      for (const auto& [level, lc] : r.census) {
        nlohmann::ordered_json strata = nlohmann::ordered_json::array();
        for (const auto& [key, rec] : lc) {
          nlohmann::ordered_json s;
          s["splitting"] = key.st.to_string_ascending();
          s["depth"] = key.depth;
          s["base_points"] = rec.base_points;
          nlohmann::ordered_json counts = nlohmann::ordered_json::object();
          for (const auto& [count, mult] : rec.fiber_counts) {
            counts[std::to_string(count)] = std::to_string(mult);
          }
          s["fiber_counts"] = std::move(counts);
          strata.push_back(std::move(s));
        }
        levels[std::to_string(level)] = std::move(strata);
      }
      j["census"] = std::move(levels);
    }
    emit(out_json, j.dump(2) + "\n");
  });
}

fc_status fc_count_pairs(uint32_t q, int64_t d1, int64_t d2,
                         const char* method, const char* budget,
                         char** out_json) {
  return wrap([&] {
    require(method != nullptr, "missing method");
    PairMethod m;
    if (std::string(method) == "naive") {
      m = PairMethod::kNaive;
    } else if (std::string(method) == "linear_solve") {
      m = PairMethod::kLinearSolve;
    } else {
      throw std::invalid_argument("method must be naive or linear_solve");
    }
    Field f(q);
    PairCount pc = count_pairs_n2(f, d1, d2, m, parse_budget(budget));
    nlohmann::ordered_json j;
    j["count"] = pc.count.str();
    j["q_enumerated"] = std::to_string(pc.q_enumerated);
    j["q_matching"] = std::to_string(pc.q_matching);
    emit(out_json, j.dump(2) + "\n");
  });
}

fc_status fc_sections_count(uint32_t q, const char* splitting, int64_t twist,
                            const char* basepoint, char** out) {
  return wrap([&] {
    Field f(q);
    SplittingType st(parse_int_list(splitting, "splitting"));
    FiberVector p = parse_basepoint(f, basepoint);
    emit(out, std::to_string(count_np_brute(f, st, twist, p)));
  });
}

fc_status fc_sections_census(uint32_t q, const char* splitting, int64_t twist,
                             const char* basepoint, char** out_json) {
  return wrap([&] {
    Field f(q);
    SplittingType st(parse_int_list(splitting, "splitting"));
    FiberVector p = parse_basepoint(f, basepoint);
    auto census = gcd_stratum_census(f, st, twist, p);
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, count] : census) {
      j[std::to_string(k)] = std::to_string(count);
    }
    emit(out_json, j.dump(2) + "\n");
  });
}

/* ------------------------------------------------------ verification --- */

fc_status fc_suite_run(const char* suite, const char* config_text,
                       fc_report** out) {
  if (out == nullptr) return fail_invalid("null output pointer");
  *out = nullptr;
  return wrap([&] {
    require(suite != nullptr, "missing suite name");
    SuiteConfig cfg = parse_config_text(
        config_text == nullptr ? "" : config_text, /*strict=*/false);
    Report rep = run_suite(suite, cfg);
    *out = new fc_report{std::move(rep), cfg.out, cfg.format};
  });
}

fc_status fc_sweep_run(const char* config_text, fc_report** out) {
  if (out == nullptr) return fail_invalid("null output pointer");
  *out = nullptr;
  return wrap([&] {
    SuiteConfig cfg = parse_config_text(
        config_text == nullptr ? "" : config_text, /*strict=*/true);
    Report rep = run_suites(cfg);
    *out = new fc_report{std::move(rep), cfg.out, cfg.format};
  });
}

size_t fc_report_row_count(const fc_report* r) {
  return r == nullptr ? 0 : r->rep.rows.size();
}

int fc_report_all_match(const fc_report* r) {
  return (r != nullptr && r->rep.all_match()) ? 1 : 0;
}

fc_status fc_report_render(const fc_report* r, const char* format,
                           char** out) {
  if (r == nullptr) return fail_invalid("null report handle");
  return wrap([&] {
    require(format != nullptr, "missing format");
    emit(out, render_report(r->rep, format));
  });
}

fc_status fc_report_render_mismatches(const fc_report* r, const char* format,
                                      char** out) {
  if (r == nullptr) return fail_invalid("null report handle");
  return wrap([&] {
    require(format != nullptr, "missing format");
    emit(out, render_report(r->rep.mismatches(), format));
  });
}

const char* fc_report_out_path(const fc_report* r) {
  return r == nullptr ? "" : r->out_path.c_str();
}

const char* fc_report_format(const fc_report* r) {
  return r == nullptr ? "" : r->format.c_str();
}

void fc_report_free(fc_report* r) { delete r; }

}  // extern "C"
