#include "flagmaps.hpp"

#include <exception>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

namespace flagcount {

// ============================================================================
// Tower enumeration
// ============================================================================

namespace {

struct TowerNode {
  std::uint32_t level = 0;  // rank of E_level
  SplittingType st;
  FqMatrix P;  // level x (n+1), evaluation of O^{n+1} ->> E_level at (1,0)
};

struct Accumulator {
  Bigint leaves{0};
  std::uint64_t nodes_checked = 0;
  std::map<std::uint32_t, LevelCensus> census;
};

void merge_into(Accumulator& into, const Accumulator& from) {
  into.leaves += from.leaves;
  into.nodes_checked += from.nodes_checked;
  for (const auto& [level, lc] : from.census) {
    LevelCensus& dst = into.census[level];
    for (const auto& [key, rec] : lc) {
      CensusRecord& d = dst[key];
      d.base_points += rec.base_points;
      for (const auto& [count, mult] : rec.fiber_counts) {
        d.fiber_counts[count] += mult;
      }
    }
  }
}

// The fiber matrix of a node must present the standard flag: full rank, with
// kernel spanned by the trailing standard basis vectors.  Violations are
// internal errors, never data errors.
void check_standard_flag(const Field& f, const TowerNode& node,
                         const DegreeVector& dv) {
  const std::size_t k = node.level;
  const std::size_t cols = dv.n() + 1;
  if (node.st.rank() != k) {
    throw std::logic_error("tower node splitting rank differs from its level");
  }
  if (node.st.degree() != dv.dk(k)) {
    throw std::logic_error(
        "tower node splitting degree differs from the multidegree");
  }
  if (node.st.min_summand() < 0) {
    throw std::logic_error("tower node splitting has a negative summand");
  }
  if (node.P.rows != k || node.P.cols != cols) {
    throw std::logic_error("tower node fiber matrix has the wrong shape");
  }
  for (std::size_t j = k; j < cols; ++j) {
    for (std::size_t i = 0; i < k; ++i) {
      if (node.P.at(i, j) != 0) {
        throw std::logic_error(
            "tower node fiber matrix does not kill the trailing basis vectors");
      }
    }
  }
  if (mat_rank(f, node.P) != k) {
    throw std::logic_error("tower node fiber matrix drops rank");
  }
}

// Expands one node at level k+1 into its level-k children: enumerates
// nowhere-vanishing based sections of E_{k+1}(d_k - d_{k+1}) at the class of
// v_{k+1} = P e_{k+1}, quotients, and pushes the fiber matrix.  Children are
// handed to `child_fn`; the stratum census of the node is recorded.
template <typename ChildFn>
void expand_transition(const Field& f, const DegreeVector& dv,
                       const TowerNode& node, bool with_census,
                       Accumulator& acc, ChildFn&& child_fn) {
  const std::uint32_t k = node.level - 1;
  const std::int64_t e = dv.dk(k) - dv.dk(k + 1);
  FiberVector v(node.level);
  for (std::size_t i = 0; i < node.level; ++i) {
    v[i] = node.P.at(i, k);  // column of the standard basis vector e_{k+1}
  }
  const CensusKey key{node.st, depth_of(v, node.st)};

  BasedSectionEnum en(f, node.st, e, v);
  BasedSection s;
  std::uint64_t fiber_count = 0;
  while (en.next(s)) {
    if (!is_nowhere_vanishing(f, s)) continue;
    ++fiber_count;
    QuotientPresentation qp = quotient_by_section(f, s);
    TowerNode child{k, qp.target_twisted.twisted(-e),
                    push_fiber(f, qp, node.P)};
    check_standard_flag(f, child, dv);
    ++acc.nodes_checked;
    child_fn(std::move(child));
  }
  if (with_census) {
    CensusRecord& rec = acc.census[k][key];
    rec.base_points += 1;
    rec.fiber_counts[fiber_count] += 1;
  }
}

void dfs(const Field& f, const DegreeVector& dv, const TowerNode& node,
         bool with_census, Accumulator& acc) {
  expand_transition(f, dv, node, with_census, acc,
                    [&](TowerNode&& child) {
                      if (child.level == 1) {
                        acc.leaves += 1;
                      } else {
                        dfs(f, dv, child, with_census, acc);
                      }
                    });
}

}  // namespace

Bigint tower_work_estimate(std::uint32_t q, const DegreeVector& dv) {
  const std::size_t n = dv.n();
  Bigint estimate = 0;
  Bigint nodes = 1;
  for (std::size_t k = n; k >= 1; --k) {
    const std::int64_t e = dv.dk(k) - dv.dk(k + 1);
    const std::int64_t candidates_exp =
        dv.dk(k + 1) + static_cast<std::int64_t>(k + 1) * e;
    estimate += nodes * big_pow(Bigint(q),
                                static_cast<std::uint64_t>(candidates_exp));
    nodes *= fiber_order(q, static_cast<std::uint32_t>(k), dv.dk(k),
                         dv.dk(k + 1));
  }
  return estimate;
}

TowerResult count_tower(const Field& f, const DegreeVector& dv,
                        const TowerOptions& opts) {
  const std::size_t n = dv.n();
  const Bigint estimate = tower_work_estimate(f.order(), dv);
  if (estimate > opts.budget) {
    std::ostringstream os;
    os << "tower enumeration for degrees (" << dv.to_string() << ") over F_"
       << f.order() << " needs about " << estimate
       << " candidate sections, over the budget of " << opts.budget;
    throw BudgetError(os.str(), estimate);
  }

  TowerNode root{static_cast<std::uint32_t>(n + 1),
                 SplittingType(std::vector<std::int64_t>(n + 1, 0)),
                 FqMatrix::identity(n + 1)};
  check_standard_flag(f, root, dv);

  Accumulator acc;
  acc.nodes_checked = 1;  // the root itself

  // Expand the root sequentially; deeper levels are sharded across workers.
  std::vector<TowerNode> frontier;
  expand_transition(f, dv, root, opts.with_census, acc,
                    [&](TowerNode&& child) {
                      if (child.level == 1) {
                        acc.leaves += 1;
                      } else {
                        frontier.push_back(std::move(child));
                      }
                    });

  const unsigned threads = opts.threads == 0 ? 1 : opts.threads;
  if (!frontier.empty()) {
    if (threads <= 1 || frontier.size() == 1) {
      for (const TowerNode& node : frontier) {
        dfs(f, dv, node, opts.with_census, acc);
      }
    } else {
      const unsigned workers =
          static_cast<unsigned>(std::min<std::size_t>(threads, frontier.size()));
      std::vector<Accumulator> parts(workers);
      std::vector<std::exception_ptr> errors(workers);
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t i = w; i < frontier.size(); i += workers) {
              dfs(f, dv, frontier[i], opts.with_census, parts[w]);
            }
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      for (std::thread& t : pool) t.join();
      for (const std::exception_ptr& ep : errors) {
        if (ep) std::rethrow_exception(ep);
      }
      for (const Accumulator& part : parts) merge_into(acc, part);
    }
  }

  TowerResult result;
  result.total = acc.leaves;
  result.nodes_checked = acc.nodes_checked;
  if (opts.with_census) result.census = std::move(acc.census);
  return result;
}

LevelCensus fiber_census(const Field& f, const DegreeVector& dv,
                         std::uint32_t level, const TowerOptions& opts) {
  if (level < 1 || level > dv.n()) {
    throw std::invalid_argument("census level must be between 1 and n");
  }
  TowerOptions o = opts;
  o.with_census = true;
  TowerResult r = count_tower(f, dv, o);
  auto it = r.census.find(level);
  return it == r.census.end() ? LevelCensus{} : it->second;
}

// ============================================================================
// Polynomial-pair oracle
// ============================================================================

namespace {

std::vector<UniPoly> all_monic(const Field& f, int degree) {
  std::vector<UniPoly> out;
  MonicPolyEnum e(f, degree);
  out.reserve(e.total());
  UniPoly p;
  while (e.next(p)) out.push_back(p);
  return out;
}

std::vector<UniPoly> all_below(const Field& f, int bound) {
  std::vector<UniPoly> out;
  BoundedPolyEnum e(f, bound);
  out.reserve(e.total());
  UniPoly p;
  while (e.next(p)) out.push_back(p);
  return out;
}

// Q-side triples: entry 0 monic of exact degree d, entries 1,2 of degree < d.
std::vector<PolyTriple> q_side_triples(const Field& f, std::int64_t d) {
  std::vector<PolyTriple> out;
  const auto monic = all_monic(f, static_cast<int>(d));
  const auto low = all_below(f, static_cast<int>(d));
  out.reserve(monic.size() * low.size() * low.size());
  for (const UniPoly& q0 : monic) {
    for (const UniPoly& q1 : low) {
      for (const UniPoly& q2 : low) {
        out.push_back({q0, q1, q2});
      }
    }
  }
  return out;
}

// R-side triples: entry 2 monic of exact degree d, entries 0,1 of degree < d.
std::vector<PolyTriple> r_side_triples(const Field& f, std::int64_t d) {
  std::vector<PolyTriple> out;
  const auto monic = all_monic(f, static_cast<int>(d));
  const auto low = all_below(f, static_cast<int>(d));
  out.reserve(monic.size() * low.size() * low.size());
  for (const UniPoly& r2 : monic) {
    for (const UniPoly& r0 : low) {
      for (const UniPoly& r1 : low) {
        out.push_back({r0, r1, r2});
      }
    }
  }
  return out;
}

void check_budget(const Bigint& work, const Bigint& budget, const char* what) {
  if (work > budget) {
    std::ostringstream os;
    os << what << " needs about " << work << " operations, over the budget of "
       << budget;
    throw BudgetError(os.str(), work);
  }
}

// Linear system for R in terms of Q: unknowns are the low coefficients of
// r_0, r_1 and of rho_2 = r_2 - t^{db} (db each); equations are the
// coefficients of q_0 r_0 + q_1 r_1 + q_2 rho_2 = -q_2 t^{db} in degrees
// 0 .. da+db-1.
struct QSystem {
  FqMatrix a;
  std::vector<std::uint32_t> b;
};

QSystem build_q_system(const Field& f, const PolyTriple& Q, std::int64_t da,
                       std::int64_t db) {
  const std::size_t rows = static_cast<std::size_t>(da + db);
  const std::size_t block = static_cast<std::size_t>(db);
  QSystem sys{FqMatrix(rows, 3 * block), std::vector<std::uint32_t>(rows, 0)};
  for (std::size_t j = 0; j < 3; ++j) {
    const UniPoly& qj = Q[j];
    for (std::size_t u = 0; u < block; ++u) {
      for (std::size_t w = 0; w < qj.c.size(); ++w) {
        std::uint32_t& cell = sys.a.at(u + w, j * block + u);
        cell = f.add(cell, qj.c[w]);
      }
    }
  }
  // Right-hand side: -q_2 t^{db}.
  for (std::size_t w = 0; w < Q[2].c.size(); ++w) {
    sys.b[static_cast<std::size_t>(db) + w] = f.neg(Q[2].c[w]);
  }
  return sys;
}

UniPoly poly_from_slice(const std::vector<std::uint32_t>& x, std::size_t begin,
                        std::size_t len) {
  return poly_from_coeffs(
      std::vector<std::uint32_t>(x.begin() + begin, x.begin() + begin + len));
}

}  // namespace

int triple_gcd_degree(const Field& f, const PolyTriple& t) {
  UniPoly g = poly_gcd(f, t[0], t[1]);
  g = poly_gcd(f, g, t[2]);
  return g.degree();
}

bool triple_is_primitive(const Field& f, const PolyTriple& t) {
  return triple_gcd_degree(f, t) == 0;
}

UniPoly triple_dot(const Field& f, const PolyTriple& a, const PolyTriple& b) {
  UniPoly s = poly_mul(f, a[0], b[0]);
  s = poly_add(f, s, poly_mul(f, a[1], b[1]));
  s = poly_add(f, s, poly_mul(f, a[2], b[2]));
  return s;
}

PairCount count_pairs_n2(const Field& f, std::int64_t d1, std::int64_t d2,
                         PairMethod method, const Bigint& budget) {
  if (d1 < 1 || d1 >= d2) {
    throw std::invalid_argument("count_pairs_n2 requires 1 <= d1 < d2");
  }
  const Bigint q(f.order());
  PairCount out;
  if (method == PairMethod::kNaive) {
    check_budget(big_pow(q, static_cast<std::uint64_t>(3 * (d1 + d2))), budget,
                 "naive pair enumeration");
    const auto qs = q_side_triples(f, d1);
    const auto rs = r_side_triples(f, d2);
    std::vector<char> q_prim(qs.size()), r_prim(rs.size());
    for (std::size_t i = 0; i < qs.size(); ++i) {
      q_prim[i] = triple_is_primitive(f, qs[i]) ? 1 : 0;
    }
    for (std::size_t i = 0; i < rs.size(); ++i) {
      r_prim[i] = triple_is_primitive(f, rs[i]) ? 1 : 0;
    }
    for (std::size_t i = 0; i < qs.size(); ++i) {
      if (!q_prim[i]) continue;
      for (std::size_t j = 0; j < rs.size(); ++j) {
        if (!r_prim[j]) continue;
        if (triple_dot(f, qs[i], rs[j]).is_zero()) out.count += 1;
      }
    }
    return out;
  }

  check_budget(big_pow(q, static_cast<std::uint64_t>(2 * (d1 + d2))), budget,
               "per-Q linear solving");
  const std::size_t block = static_cast<std::size_t>(d2);
  for (const PolyTriple& Q : q_side_triples(f, d1)) {
    if (!triple_is_primitive(f, Q)) continue;
    ++out.q_enumerated;
    QSystem sys = build_q_system(f, Q, d1, d2);
    LinearSolution sol = solve_linear(f, sys.a, sys.b);
    if (sol.consistent &&
        static_cast<std::int64_t>(sol.kernel.size()) == 2 * d2 - d1) {
      ++out.q_matching;  // primitive Q has gcd degree 0
    }
    if (!sol.consistent) continue;
    // Walk the affine solution space and keep the primitive R.
    const std::size_t kdim = sol.kernel.size();
    std::vector<std::uint32_t> combo(kdim, 0);
    const std::uint64_t qq = f.order();
    for (;;) {
      std::vector<std::uint32_t> x = sol.particular;
      for (std::size_t i = 0; i < kdim; ++i) {
        if (combo[i] == 0) continue;
        for (std::size_t j = 0; j < x.size(); ++j) {
          x[j] = f.add(x[j], f.mul(combo[i], sol.kernel[i][j]));
        }
      }
      PolyTriple R{poly_from_slice(x, 0, block),
                   poly_from_slice(x, block, block),
                   UniPoly{}};
      std::vector<std::uint32_t> r2(x.begin() + 2 * block,
                                    x.begin() + 3 * block);
      r2.push_back(1);  // monic leading coefficient of t^{d2}
      R[2] = poly_from_coeffs(std::move(r2));
      if (triple_is_primitive(f, R)) out.count += 1;
      // Odometer over the kernel coefficients.
      std::size_t pos = 0;
      while (pos < kdim) {
        combo[pos] = static_cast<std::uint32_t>((combo[pos] + 1) % qq);
        if (combo[pos] != 0) break;
        ++pos;
      }
      if (pos == kdim) break;
    }
  }
  return out;
}

SolverTotals count_total_pairs_by_solver(const Field& f, std::int64_t da,
                                         std::int64_t db,
                                         const Bigint& budget) {
  if (da < 0 || db < da || db < 1) {
    throw std::invalid_argument(
        "pair totals require 0 <= da <= db with db >= 1");
  }
  const Bigint q(f.order());
  check_budget(big_pow(q, static_cast<std::uint64_t>(3 * da)) *
                   Bigint(3 * db * (da + db) + 1),
               budget, "per-Q rank computation");
  SolverTotals out;
  for (const PolyTriple& Q : q_side_triples(f, da)) {
    ++out.q_enumerated;
    QSystem sys = build_q_system(f, Q, da, db);
    LinearSolution sol = solve_linear(f, sys.a, sys.b);
    if (!sol.consistent) continue;
    const std::int64_t kdim = static_cast<std::int64_t>(sol.kernel.size());
    const std::int64_t delta = triple_gcd_degree(f, Q);
    if (kdim == 2 * db - da + delta) ++out.q_matching;
    out.total += big_pow(q, static_cast<std::uint64_t>(kdim));
  }
  return out;
}

Bigint count_total_pairs_brute(const Field& f, std::int64_t da,
                               std::int64_t db, const Bigint& budget) {
  if (da < 0 || db < da || db < 1) {
    throw std::invalid_argument(
        "pair totals require 0 <= da <= db with db >= 1");
  }
  const Bigint q(f.order());
  check_budget(big_pow(q, static_cast<std::uint64_t>(3 * (da + db))), budget,
               "exhaustive pair enumeration");
  Bigint total = 0;
  const auto qs = q_side_triples(f, da);
  const auto rs = r_side_triples(f, db);
  for (const PolyTriple& Q : qs) {
    for (const PolyTriple& R : rs) {
      if (triple_dot(f, Q, R).is_zero()) total += 1;
    }
  }
  return total;
}

Bigint count_primitive_triples_brute(const Field& f, std::int64_t d,
                                     const Bigint& budget) {
  if (d < 0) throw std::invalid_argument("degree must be nonnegative");
  check_budget(big_pow(Bigint(f.order()), static_cast<std::uint64_t>(3 * d)),
               budget, "primitive triple enumeration");
  Bigint total = 0;
  for (const PolyTriple& Q : q_side_triples(f, d)) {
    if (triple_is_primitive(f, Q)) total += 1;
  }
  return total;
}

Bigint sigma_brute(const Field& f, std::int64_t d, const Bigint& budget) {
  if (d < 0) throw std::invalid_argument("degree must be nonnegative");
  const Bigint q(f.order());
  check_budget(big_pow(q, static_cast<std::uint64_t>(3 * d)), budget,
               "gcd-weighted triple enumeration");
  Bigint total = 0;
  for (const PolyTriple& Q : q_side_triples(f, d)) {
    total += big_pow(q, static_cast<std::uint64_t>(triple_gcd_degree(f, Q)));
  }
  return total;
}

std::int64_t mobius_sum_brute(const Field& f, int k, const Bigint& budget) {
  if (k < 0) throw std::invalid_argument("degree must be nonnegative");
  check_budget(big_pow(Bigint(f.order()), static_cast<std::uint64_t>(k)),
               budget, "Moebius summation");
  std::int64_t total = 0;
  MonicPolyEnum e(f, k);
  UniPoly p;
  while (e.next(p)) total += mobius_mu(f, p);
  return total;
}

}  // namespace flagcount
