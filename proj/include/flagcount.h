/* C interface to the flag-map counting library.
 *
 * Conventions:
 *   - Every function that can fail returns fc_status; FC_OK is 0.
 *   - On failure, fc_last_error() returns a thread-local message that stays
 *     valid until the next library call on the same thread.  For config
 *     errors, fc_last_error_line() returns the offending 1-based line.
 *   - Strings returned through char** out parameters are heap-allocated;
 *     release them with fc_string_free().  They are NUL-terminated UTF-8.
 *   - Counts are returned as decimal strings so that arbitrarily large
 *     exact integers survive the boundary.
 *   - Degree vectors are comma-separated and strictly decreasing
 *     ("3,2,1"); the polynomial-pair entry points take their two degrees
 *     as separate increasing arguments (d1 < d2).
 *   - Budgets are decimal strings; NULL or "" selects the default of 10^9
 *     primitive operations.
 */
#ifndef FLAGCOUNT_H
#define FLAGCOUNT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fc_status {
  FC_OK = 0,
  FC_ERR_INVALID_ARGUMENT = 1,
  FC_ERR_NOT_PRIME_POWER = 2,
  FC_ERR_CAP_EXCEEDED = 3,
  FC_ERR_DIVISION_BY_ZERO = 4,
  FC_ERR_BUDGET_EXCEEDED = 5,
  FC_ERR_CONFIG = 6,
  FC_ERR_INTERNAL = 7
} fc_status;

/* Message for the most recent failing call on this thread ("" if none). */
const char* fc_last_error(void);
/* 1-based config line for the most recent FC_ERR_CONFIG; -1 otherwise. */
int fc_last_error_line(void);
/* Frees a string returned through a char** out parameter. */
void fc_string_free(char* s);

/* ------------------------------------------------------------ fields --- */

/* A small finite field F_q, q a prime power up to 256.  Elements are
 * indices 0..q-1 in the canonical enumeration (0, 1, x, x+1, ... for the
 * deterministic lexicographically-least irreducible modulus). */
typedef struct fc_field fc_field;

fc_status fc_field_new(uint32_t q, fc_field** out);
void fc_field_free(fc_field* f);

uint32_t fc_field_order(const fc_field* f);
uint32_t fc_field_characteristic(const fc_field* f);
uint32_t fc_field_extension_degree(const fc_field* f);
/* One-line description including the modulus polynomial. */
fc_status fc_field_describe(const fc_field* f, char** out);

fc_status fc_field_add(const fc_field* f, uint32_t a, uint32_t b,
                       uint32_t* out);
fc_status fc_field_sub(const fc_field* f, uint32_t a, uint32_t b,
                       uint32_t* out);
fc_status fc_field_mul(const fc_field* f, uint32_t a, uint32_t b,
                       uint32_t* out);
fc_status fc_field_div(const fc_field* f, uint32_t a, uint32_t b,
                       uint32_t* out);
fc_status fc_field_neg(const fc_field* f, uint32_t a, uint32_t* out);
fc_status fc_field_inv(const fc_field* f, uint32_t a, uint32_t* out);
fc_status fc_field_pow(const fc_field* f, uint32_t a, int64_t e,
                       uint32_t* out);

/* ---------------------------------------------------- closed formulas --- */

/* Number of based maps of multidegree `degrees` ("d1,d2,...", strictly
 * decreasing) from the line to the full flag variety. */
fc_status fc_omega_order(uint32_t q, const char* degrees, char** out);
/* Order of the general linear group GL_n(F_q). */
fc_status fc_gl_order(uint32_t q, uint32_t n, char** out);
/* Fiber size of the level-k forgetful map: q^((k+1)d_k - k d_next - k)
 * (q^k - 1). */
fc_status fc_fiber_order(uint32_t q, uint32_t level, int64_t d_k,
                         int64_t d_next, char** out);
/* Nowhere-vanishing based sections of a rank-r degree-d bundle:
 * q^(d-r+1) (q^(r-1) - 1). */
fc_status fc_np_order(uint32_t q, int64_t d, uint32_t r, char** out);
/* Primitive intersecting polynomial pairs, degrees d1 < d2. */
fc_status fc_pairs_closed(uint32_t q, int64_t d1, int64_t d2, char** out);
/* All intersecting pairs (no primitivity), degrees d_a <= d_b, d_b >= 1. */
fc_status fc_total_closed(uint32_t q, int64_t d_a, int64_t d_b, char** out);
/* Sum of q^deg(gcd) over normalized triples of degree d. */
fc_status fc_sigma_closed(uint32_t q, int64_t d, char** out);
/* Primitive normalized triples of degree d. */
fc_status fc_primitive_closed(uint32_t q, int64_t d, char** out);
/* Sum of the polynomial Moebius function over monic degree-k polynomials. */
fc_status fc_mobius_closed(uint32_t q, int64_t k, char** out);

/* Symbolic classes as canonical polynomials in the Lefschetz class L,
 * e.g. "L^6 - L^5 - L^4 + L^3". */
fc_status fc_class_omega(const char* degrees, char** out);
fc_status fc_class_gl(uint32_t n, char** out);
fc_status fc_class_np(int64_t d, uint32_t r, char** out);

/* ------------------------------------------------------- enumerations --- */

/* Exhaustive count of based flag maps by the level-by-level tower walk.
 * Returns JSON: {"total": "<decimal>", "nodes_checked": <int>, "census":
 * {"<level>": [{"splitting": "(0,2)", "depth": 0, "base_points": 16,
 * "fiber_counts": {"8": "16"}}, ...], ...}} (census present only when
 * with_census is nonzero).  Refuses oversized runs with
 * FC_ERR_BUDGET_EXCEEDED. */
fc_status fc_count_tower(uint32_t q, const char* degrees, const char* budget,
                         unsigned threads, int with_census, char** out_json);

/* Count of primitive intersecting polynomial pairs by enumeration.
 * method is "naive" or "linear_solve".  Returns JSON: {"count": "...",
 * "q_enumerated": "...", "q_matching": "..."} (the last two are 0 for
 * naive runs). */
fc_status fc_count_pairs(uint32_t q, int64_t d1, int64_t d2,
                         const char* method, const char* budget,
                         char** out_json);

/* Brute-force count of nowhere-vanishing canonical based sections of the
 * bundle with splitting summands `splitting` ("a1,a2,..."; any order;
 * negative entries allowed) twisted by `twist`, based at the fiber vector
 * `basepoint` ("v1,v2,...", entries in 0..q-1, not all zero). */
fc_status fc_sections_count(uint32_t q, const char* splitting, int64_t twist,
                            const char* basepoint, char** out);

/* All canonical based sections grouped by the degree of the gcd of their
 * components.  Requires every twisted summand >= 0.  Returns JSON mapping
 * gcd degree to a decimal count: {"0": "2", "1": "2"}. */
fc_status fc_sections_census(uint32_t q, const char* splitting, int64_t twist,
                             const char* basepoint, char** out_json);

/* ------------------------------------------------------ verification --- */

/* A table of expected-vs-observed rows produced by a verification run. */
typedef struct fc_report fc_report;

/* Runs one suite ("appendix", "sections", "tower", "census", "symbolic",
 * or "all").  config_text uses `key = value` lines; besides the sweep keys
 * {qs, n, degrees, suites, budget, seed, out, format} it also accepts
 * {threads, max_d, n_max, timing}.  Pass "" for all defaults. */
fc_status fc_suite_run(const char* suite, const char* config_text,
                       fc_report** out);

/* Runs every suite named by the `suites` key of a strict sweep config
 * (only the eight sweep keys are permitted). */
fc_status fc_sweep_run(const char* config_text, fc_report** out);

size_t fc_report_row_count(const fc_report* r);
/* 1 when every row matched, else 0. */
int fc_report_all_match(const fc_report* r);
/* Renders the full report; format is "csv" or "json". */
fc_status fc_report_render(const fc_report* r, const char* format,
                           char** out);
/* Renders only the non-matching rows. */
fc_status fc_report_render_mismatches(const fc_report* r, const char* format,
                                      char** out);
/* Output path ("" = standard output) and format requested by the config.
 * The returned pointers belong to the report. */
const char* fc_report_out_path(const fc_report* r);
const char* fc_report_format(const fc_report* r);
void fc_report_free(fc_report* r);

#ifdef __cplusplus
}
#endif

#endif /* FLAGCOUNT_H */
