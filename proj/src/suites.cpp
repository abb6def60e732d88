#include "suites.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <utility>

#include <json.hpp>

#include "bundles.hpp"
#include "errors.hpp"
#include "flagmaps.hpp"
#include "gf.hpp"
#include "motivic.hpp"

namespace flagcount {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string tok;
  std::istringstream is(s);
  while (std::getline(is, tok, sep)) out.push_back(trim(tok));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

std::uint64_t parse_u64(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty number");
  std::size_t pos = 0;
  unsigned long long v = std::stoull(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

std::int64_t parse_i64(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty number");
  std::size_t pos = 0;
  long long v = std::stoll(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

// Measures wall time between rows; disabled timers always report 0 so that
// reports are byte-identical across runs.
class RowTimer {
 public:
  explicit RowTimer(bool enabled) : enabled_(enabled) { mark(); }
  void mark() {
    if (enabled_) last_ = std::chrono::steady_clock::now();
  }
  std::int64_t take() {
    if (!enabled_) return 0;
    auto now = std::chrono::steady_clock::now();
    auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(now - last_)
            .count();
    last_ = now;
    return static_cast<std::int64_t>(ms);
  }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point last_;
};

ReportRow make_row(std::string suite, std::int64_t q, std::int64_t n,
                   std::string degrees, std::int64_t level, std::string stratum,
                   std::string expected, std::string observed,
                   std::int64_t millis) {
  ReportRow r;
  r.suite = std::move(suite);
  r.q = q;
  r.n = n;
  r.degrees = std::move(degrees);
  r.level = level;
  r.stratum = std::move(stratum);
  r.expected = std::move(expected);
  r.observed = std::move(observed);
  r.match = (r.expected == r.observed);
  r.millis = millis;
  return r;
}

std::string big_str(const Bigint& b) { return b.str(); }

std::vector<std::uint32_t> qs_or(const SuiteConfig& cfg,
                                 std::vector<std::uint32_t> fallback) {
  return cfg.qs.empty() ? std::move(fallback) : cfg.qs;
}

std::string vec_str(const FiberVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  out += ")";
  return out;
}

// ---------------------------------------------------------------- appendix

Report appendix_suite(const SuiteConfig& cfg) {
  Report rep;
  RowTimer timer(cfg.timing);
  const std::vector<std::pair<std::int64_t, std::int64_t>> pair_grid = {
      {1, 2}, {1, 3}, {2, 3}};
  const std::vector<std::pair<std::int64_t, std::int64_t>> total_grid = {
      {0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}};
  const Bigint naive_cap(1000000);

  for (std::uint32_t q : qs_or(cfg, {2, 3})) {
    Field f(q);

    for (std::int64_t k = 0; k <= cfg.max_d; ++k) {
      timer.mark();
      const std::int64_t observed =
          mobius_sum_brute(f, static_cast<int>(k), cfg.budget);
      rep.rows.push_back(make_row(
          "mobius_sum", q, -1, std::to_string(k), -1, "",
          big_str(mobius_sum_closed(q, static_cast<std::uint64_t>(k))),
          std::to_string(observed), timer.take()));
    }

    for (std::int64_t d = 0; d <= std::min<std::int64_t>(cfg.max_d, 2); ++d) {
      timer.mark();
      Bigint npr = count_primitive_triples_brute(f, d, cfg.budget);
      rep.rows.push_back(make_row(
          "n_primitive", q, -1, std::to_string(d), -1, "",
          big_str(n_primitive_closed(q, static_cast<std::uint64_t>(d))),
          big_str(npr), timer.take()));
      timer.mark();
      Bigint sig = sigma_brute(f, d, cfg.budget);
      rep.rows.push_back(
          make_row("sigma", q, -1, std::to_string(d), -1, "",
                   big_str(sigma_closed(q, static_cast<std::uint64_t>(d))),
                   big_str(sig), timer.take()));
    }

    for (const auto& [da, db] : total_grid) {
      const std::string degs =
          std::to_string(da) + "," + std::to_string(db);
      timer.mark();
      SolverTotals st = count_total_pairs_by_solver(f, da, db, cfg.budget);
      const std::int64_t solver_ms = timer.take();
      const Bigint pair_space =
          big_pow(Bigint(q), static_cast<std::uint64_t>(3 * (da + db)));
      timer.mark();
      Bigint observed_total = (pair_space <= naive_cap)
                                  ? count_total_pairs_brute(f, da, db, cfg.budget)
                                  : st.total;
      rep.rows.push_back(make_row(
          "n_total", q, -1, degs, -1,
          pair_space <= naive_cap ? "brute" : "solver",
          big_str(n_total_closed(q, static_cast<std::uint64_t>(da),
                                 static_cast<std::uint64_t>(db))),
          big_str(observed_total), timer.take()));
      // Solution-space sizes: every enumerated Q must hit exactly
      // q^(2*db - da + deg gcd(Q)) solutions; q_matching counts the hits.
      rep.rows.push_back(make_row(
          "per_q", q, -1, degs, -1, "",
          big_str(big_pow(Bigint(q), static_cast<std::uint64_t>(3 * da))),
          big_str(Bigint(st.q_matching)), solver_ms));
    }

    for (const auto& [d1, d2] : pair_grid) {
      const std::string degs =
          std::to_string(d1) + "," + std::to_string(d2);
      const Bigint pair_space =
          big_pow(Bigint(q), static_cast<std::uint64_t>(3 * (d1 + d2)));
      const bool use_naive = pair_space <= naive_cap;
      timer.mark();
      PairCount pc = count_pairs_n2(
          f, d1, d2,
          use_naive ? PairMethod::kNaive : PairMethod::kLinearSolve,
          cfg.budget);
      rep.rows.push_back(make_row(
          "pairs", q, -1, degs, -1, use_naive ? "naive" : "linear_solve",
          big_str(n_pairs_closed(q, static_cast<std::uint64_t>(d1),
                                 static_cast<std::uint64_t>(d2))),
          big_str(pc.count), timer.take()));
      // The per-Q assertion on primitive triples: the solver must enumerate
      // exactly the primitive Q and every one must match.
      timer.mark();
      PairCount ls = use_naive ? count_pairs_n2(f, d1, d2,
                                                PairMethod::kLinearSolve,
                                                cfg.budget)
                               : pc;
      const std::int64_t ls_ms = timer.take();
      rep.rows.push_back(make_row(
          "pairs_per_q", q, -1, degs, -1, "",
          big_str(n_primitive_closed(q, static_cast<std::uint64_t>(d1))),
          big_str(Bigint(ls.q_matching)), ls_ms));
    }
  }
  return rep;
}

// ---------------------------------------------------------------- sections

std::vector<SplittingType> section_types(std::uint32_t rank,
                                         std::int64_t degree_cap) {
  std::vector<SplittingType> out;
  for (std::int64_t deg = rank; deg <= degree_cap; ++deg) {
    for (const SplittingType& st : splitting_types(rank, deg, 1)) {
      out.push_back(st);
    }
  }
  return out;
}

// At least three distinct basepoint vectors per type, covering every depth
// that the type admits.
std::vector<FiberVector> section_basepoints(const SplittingType& st) {
  std::vector<FiberVector> out;
  std::set<FiberVector> seen;
  auto add = [&](FiberVector v) {
    if (seen.insert(v).second) out.push_back(std::move(v));
  };
  std::set<std::int64_t> values(st.summands().begin(), st.summands().end());
  for (std::int64_t v : values) add(reference_vector(st, v));
  add(FiberVector(st.rank(), 1));
  FiberVector e1(st.rank(), 0);
  e1[0] = 1;
  add(e1);
  FiberVector elast(st.rank(), 0);
  elast[st.rank() - 1] = 1;
  add(elast);
  return out;
}

Report sections_suite(const SuiteConfig& cfg) {
  Report rep;
  RowTimer timer(cfg.timing);
  for (std::uint32_t q : qs_or(cfg, {2, 3})) {
    Field f(q);
    for (std::uint32_t rank : {2u, 3u}) {
      for (const SplittingType& st : section_types(rank, 6)) {
        const std::int64_t deg = st.degree();
        const Bigint expected_np = np_order(q, deg, rank);
        const std::vector<std::pair<SplittingType, std::int64_t>> realizations =
            {{st, 0}, {st.twisted(-1), 1}};
        for (const auto& bp : section_basepoints(st)) {
          const std::string bp_label = "p=" + vec_str(bp);
          for (const auto& [real_st, t] : realizations) {
            timer.mark();
            const std::uint64_t observed = count_np_brute(f, real_st, t, bp);
            rep.rows.push_back(
                make_row("np", q, rank, st.to_string_ascending(), -1,
                         "t=" + std::to_string(t) + " " + bp_label,
                         big_str(expected_np), std::to_string(observed),
                         timer.take()));
          }
          // Stratify all sections by gcd degree: the strata total must be
          // the full section space, and the degree-k stratum must be q^k
          // times the nowhere-vanishing count at twist -k.
          timer.mark();
          auto census = gcd_stratum_census(f, st, 0, bp);
          Bigint total(0);
          for (const auto& [k, cnt] : census) total += Bigint(cnt);
          rep.rows.push_back(make_row(
              "census_total", q, rank, st.to_string_ascending(), -1, bp_label,
              big_str(big_pow(Bigint(q), static_cast<std::uint64_t>(deg))),
              big_str(total), timer.take()));
          for (std::int64_t k = 0; k <= deg; ++k) {
            timer.mark();
            const Bigint expected =
                big_pow(Bigint(q), static_cast<std::uint64_t>(k)) *
                Bigint(count_np_brute(f, st, -k, bp));
            auto it = census.find(k);
            const Bigint observed(it == census.end() ? 0 : it->second);
            rep.rows.push_back(make_row(
                "census_part", q, rank, st.to_string_ascending(), k, bp_label,
                big_str(expected), big_str(observed), timer.take()));
          }
        }
      }
    }
  }
  return rep;
}

// ------------------------------------------------------------------- tower

std::vector<std::pair<std::uint32_t, DegreeVector>> tower_grid(
    const SuiteConfig& cfg) {
  std::vector<std::pair<std::uint32_t, DegreeVector>> grid;
  if (!cfg.degrees.empty()) {
    for (std::uint32_t q : qs_or(cfg, {2, 3})) {
      for (const DegreeVector& dv : cfg.degrees) grid.emplace_back(q, dv);
    }
    return grid;
  }
  for (std::uint32_t q : {2u, 3u, 4u}) {
    for (std::int64_t d : {1, 2, 3}) {
      grid.emplace_back(q, DegreeVector({d}));
    }
  }
  for (std::uint32_t q : {2u, 3u}) {
    for (const auto& e : {std::vector<std::int64_t>{2, 1},
                          std::vector<std::int64_t>{3, 1},
                          std::vector<std::int64_t>{3, 2}}) {
      grid.emplace_back(q, DegreeVector(e));
    }
  }
  grid.emplace_back(2u, DegreeVector({3, 2, 1}));
  return grid;
}

Report tower_suite(const SuiteConfig& cfg) {
  Report rep;
  RowTimer timer(cfg.timing);
  TowerOptions opts;
  opts.budget = cfg.budget;
  opts.threads = cfg.threads;
  opts.with_census = false;
  for (const auto& [q, dv] : tower_grid(cfg)) {
    Field f(q);
    timer.mark();
    TowerResult r = count_tower(f, dv, opts);
    rep.rows.push_back(make_row(
        "tower", q, static_cast<std::int64_t>(dv.n()), dv.to_string(), -1, "",
        big_str(omega_order(q, dv)), big_str(r.total), timer.take()));
  }
  return rep;
}

// ------------------------------------------------------------------ census

Report census_suite(const SuiteConfig& cfg) {
  Report rep;
  RowTimer timer(cfg.timing);
  std::vector<std::pair<std::uint32_t, DegreeVector>> grid;
  if (!cfg.degrees.empty()) {
    for (std::uint32_t q : qs_or(cfg, {2})) {
      for (const DegreeVector& dv : cfg.degrees) grid.emplace_back(q, dv);
    }
  } else {
    grid.emplace_back(2u, DegreeVector({3, 2}));
  }
  TowerOptions opts;
  opts.budget = cfg.budget;
  opts.threads = cfg.threads;
  opts.with_census = true;
  for (const auto& [q, dv] : grid) {
    Field f(q);
    timer.mark();
    TowerResult r = count_tower(f, dv, opts);
    const std::int64_t run_ms = timer.take();
    bool first_row = true;
    for (const auto& [level, lc] : r.census) {
      const Bigint expected =
          fiber_order(q, level, dv.dk(level), dv.dk(level + 1));
      for (const auto& [key, rec] : lc) {
        // A stratum with non-constant fiber counts reports -1 and fails.
        Bigint observed =
            rec.fiber_counts.size() == 1
                ? Bigint(rec.fiber_counts.begin()->first)
                : Bigint(-1);
        rep.rows.push_back(make_row(
            "fiber_count", q, static_cast<std::int64_t>(dv.n()),
            dv.to_string(), level,
            key.st.to_string_ascending() + " depth " +
                std::to_string(key.depth),
            big_str(expected), big_str(observed), first_row ? run_ms : 0));
        first_row = false;
      }
    }
    // For degrees (3,2) both rank-2 splitting strata must occur in the
    // level-1 transition.
    if (dv.entries() == std::vector<std::int64_t>{3, 2} &&
        r.census.count(1) != 0) {
      std::set<SplittingType> types;
      for (const auto& [key, rec] : r.census.at(1)) types.insert(key.st);
      rep.rows.push_back(make_row(
          "strata_nonempty", q, static_cast<std::int64_t>(dv.n()),
          dv.to_string(), 1, "", "2",
          std::to_string(types.size()), 0));
    }
  }
  return rep;
}

// ---------------------------------------------------------------- symbolic

Report symbolic_suite(const SuiteConfig& cfg) {
  Report rep;
  RowTimer timer(cfg.timing);
  const std::vector<DegreeVector> dvs =
      seeded_degree_vectors(cfg.seed, 20, cfg.n_max, 10);
  for (const DegreeVector& dv : dvs) {
    const std::int64_t n = static_cast<std::int64_t>(dv.n());
    timer.mark();
    const LPoly closed = class_omega_closed(dv);
    const LPoly product = class_omega_product(dv);
    rep.rows.push_back(make_row("omega_poly", -1, n, dv.to_string(), -1, "",
                                closed.str(), product.str(), timer.take()));
    timer.mark();
    const std::int64_t direct = dv.big_d() - n * (n + 1) / 2;
    rep.rows.push_back(make_row("alpha", -1, n, dv.to_string(), -1, "",
                                std::to_string(direct),
                                std::to_string(alpha_exponent(dv)),
                                timer.take()));
  }
  // Evaluating the closed class at L = q must reproduce the tower totals'
  // expected values on the standard tower grid.
  SuiteConfig grid_cfg = cfg;
  grid_cfg.qs.clear();
  grid_cfg.degrees.clear();
  for (const auto& [q, dv] : tower_grid(grid_cfg)) {
    timer.mark();
    rep.rows.push_back(make_row(
        "omega_eval", q, static_cast<std::int64_t>(dv.n()), dv.to_string(),
        -1, "", big_str(omega_order(q, dv)),
        big_str(class_omega_closed(dv).eval(Bigint(q))), timer.take()));
  }
  return rep;
}

void sort_rows(std::vector<ReportRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ReportRow& a, const ReportRow& b) {
                     return std::tie(a.suite, a.q, a.n, a.degrees, a.level,
                                     a.stratum) <
                            std::tie(b.suite, b.q, b.n, b.degrees, b.level,
                                     b.stratum);
                   });
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += "\"";
  return out;
}

std::string opt_num(std::int64_t v) { return v < 0 ? "" : std::to_string(v); }

}  // namespace

bool Report::all_match() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const ReportRow& r) { return r.match; });
}

Report Report::mismatches() const {
  Report out;
  for (const ReportRow& r : rows) {
    if (!r.match) out.rows.push_back(r);
  }
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"appendix", "sections",
                                                 "tower", "census", "symbolic"};
  return names;
}

bool is_suite_name(const std::string& name) {
  if (name == "all") return true;
  const auto& names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

Report run_suite(const std::string& name, const SuiteConfig& cfg) {
  Report rep;
  if (name == "all") {
    for (const std::string& s : suite_names()) {
      Report part = run_suite(s, cfg);
      rep.rows.insert(rep.rows.end(), part.rows.begin(), part.rows.end());
    }
    sort_rows(rep.rows);
    return rep;
  }
  if (name == "appendix") {
    rep = appendix_suite(cfg);
  } else if (name == "sections") {
    rep = sections_suite(cfg);
  } else if (name == "tower") {
    rep = tower_suite(cfg);
  } else if (name == "census") {
    rep = census_suite(cfg);
  } else if (name == "symbolic") {
    rep = symbolic_suite(cfg);
  } else {
    throw std::invalid_argument("unknown suite '" + name + "'");
  }
  sort_rows(rep.rows);
  return rep;
}

Report run_suites(const SuiteConfig& cfg) {
  Report rep;
  for (const std::string& name : cfg.suites) {
    Report part = run_suite(name, cfg);
    rep.rows.insert(rep.rows.end(), part.rows.begin(), part.rows.end());
  }
  sort_rows(rep.rows);
  return rep;
}

SuiteConfig parse_config_text(const std::string& text, bool strict) {
  SuiteConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected 'key = value', got '" + line + "'", line_no);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "qs") {
        cfg.qs.clear();
        for (const std::string& tok : split(value, ',')) {
          const std::uint64_t q = parse_u64(tok);
          if (q < 2 || q > 0xffffffffull) {
            throw std::invalid_argument("bad field order '" + tok + "'");
          }
          Field probe(static_cast<std::uint32_t>(q));  // validates q
          (void)probe;
          cfg.qs.push_back(static_cast<std::uint32_t>(q));
        }
      } else if (key == "n") {
        cfg.n = static_cast<std::uint32_t>(parse_u64(value));
      } else if (key == "degrees") {
        cfg.degrees.clear();
        for (const std::string& tok : split(value, ';')) {
          cfg.degrees.push_back(DegreeVector::parse(tok));
        }
      } else if (key == "suites") {
        cfg.suites.clear();
        for (const std::string& tok : split(value, ',')) {
          if (!is_suite_name(tok)) {
            throw std::invalid_argument("unknown suite '" + tok + "'");
          }
          cfg.suites.push_back(tok);
        }
      } else if (key == "budget") {
        cfg.budget = Bigint(value);
      } else if (key == "seed") {
        cfg.seed = parse_u64(value);
      } else if (key == "out") {
        cfg.out = value;
      } else if (key == "format") {
        if (value != "csv" && value != "json") {
          throw std::invalid_argument("format must be csv or json");
        }
        cfg.format = value;
      } else if (!strict && key == "threads") {
        const std::uint64_t t = parse_u64(value);
        if (t == 0) throw std::invalid_argument("threads must be >= 1");
        cfg.threads = static_cast<unsigned>(t);
      } else if (!strict && key == "max_d") {
        const std::int64_t v = parse_i64(value);
        if (v < 0) throw std::invalid_argument("max_d must be >= 0");
        cfg.max_d = v;
      } else if (!strict && key == "n_max") {
        const std::uint64_t v = parse_u64(value);
        if (v == 0) throw std::invalid_argument("n_max must be >= 1");
        cfg.n_max = static_cast<std::uint32_t>(v);
      } else if (!strict && key == "timing") {
        if (value == "true" || value == "1") {
          cfg.timing = true;
        } else if (value == "false" || value == "0") {
          cfg.timing = false;
        } else {
          throw std::invalid_argument("timing must be true or false");
        }
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(key.empty() ? e.what()
                                    : key + ": " + std::string(e.what()),
                        line_no);
    }
  }
  return cfg;
}

std::string render_report(const Report& report, const std::string& format) {
  if (format == "csv") {
    std::ostringstream os;
    os << "suite,q,n,degrees,level,stratum,expected,observed,match,millis\n";
    for (const ReportRow& r : report.rows) {
      os << csv_field(r.suite) << ',' << opt_num(r.q) << ',' << opt_num(r.n)
         << ',' << csv_field(r.degrees) << ',' << opt_num(r.level) << ','
         << csv_field(r.stratum) << ',' << csv_field(r.expected) << ','
         << csv_field(r.observed) << ',' << (r.match ? "true" : "false")
         << ',' << r.millis << '\n';
    }
    return os.str();
  }
  if (format == "json") {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const ReportRow& r : report.rows) {
      nlohmann::ordered_json jr;
      jr["suite"] = r.suite;
      jr["q"] = r.q < 0 ? nlohmann::ordered_json(nullptr)
                        : nlohmann::ordered_json(r.q);
      jr["n"] = r.n < 0 ? nlohmann::ordered_json(nullptr)
                        : nlohmann::ordered_json(r.n);
      jr["degrees"] = r.degrees.empty() ? nlohmann::ordered_json(nullptr)
                                        : nlohmann::ordered_json(r.degrees);
      jr["level"] = r.level < 0 ? nlohmann::ordered_json(nullptr)
                                : nlohmann::ordered_json(r.level);
      jr["stratum"] = r.stratum.empty() ? nlohmann::ordered_json(nullptr)
                                        : nlohmann::ordered_json(r.stratum);
      jr["expected"] = r.expected;
      jr["observed"] = r.observed;
      jr["match"] = r.match;
      jr["millis"] = r.millis;
      rows.push_back(std::move(jr));
    }
    return rows.dump(2) + "\n";
  }
  throw std::invalid_argument("unknown report format '" + format + "'");
}

}  // namespace flagcount
