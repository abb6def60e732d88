#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "bigint.hpp"
#include "binform.hpp"
#include "bundles.hpp"
#include "errors.hpp"
#include "formulas.hpp"
#include "gf.hpp"
#include "linalg.hpp"

namespace flagcount {

// ============================================================================
// Tower enumeration of based maps to the flag variety
// ============================================================================

// A stratum of the transition from level k+1 to level k: splitting type of
// E_{k+1} together with the depth of the basepoint vector v_{k+1}.
struct CensusKey {
  SplittingType st;
  std::int64_t depth = 0;
  auto operator<=>(const CensusKey&) const = default;
};

struct CensusRecord {
  std::uint64_t base_points = 0;
  // Observed fiber count -> number of base points with that count.
  std::map<std::uint64_t, std::uint64_t> fiber_counts;
};

using LevelCensus = std::map<CensusKey, CensusRecord>;

struct TowerOptions {
  Bigint budget{1000000000};
  unsigned threads = 1;
  bool with_census = true;
};

struct TowerResult {
  Bigint total{0};
  // Level k holds the census of the transition expanding level-(k+1) nodes.
  std::map<std::uint32_t, LevelCensus> census;
  // Every constructed node (root, intermediate, leaf) passes the
  // standard-flag invariant check; this counts them.
  std::uint64_t nodes_checked = 0;
};

// Total number of candidate sections enumerated across the whole tower,
// computed from the closed fiber formulas before any work starts.
Bigint tower_work_estimate(std::uint32_t q, const DegreeVector& dv);

// Counts based maps of multidegree dv by expanding the quotient tower from
// the trivial bundle down to a line bundle, one nowhere-vanishing based
// section at a time.  Deterministic for any worker count.  Throws
// BudgetError when the work estimate exceeds the configured budget.
TowerResult count_tower(const Field& f, const DegreeVector& dv,
                        const TowerOptions& opts = {});

// The census of a single transition level (1 <= level <= n).
LevelCensus fiber_census(const Field& f, const DegreeVector& dv,
                         std::uint32_t level, const TowerOptions& opts = {});

// ============================================================================
// Polynomial-pair oracle for n = 2
// ============================================================================

// A triple of univariate polynomials.  Q-side triples have entry 0 monic of
// exact degree d and entries 1,2 of degree < d; R-side triples have entry 2
// monic of exact degree d and entries 0,1 of degree < d.
using PolyTriple = std::array<UniPoly, 3>;

int triple_gcd_degree(const Field& f, const PolyTriple& t);
bool triple_is_primitive(const Field& f, const PolyTriple& t);
UniPoly triple_dot(const Field& f, const PolyTriple& a, const PolyTriple& b);

enum class PairMethod { kNaive, kLinearSolve };

struct PairCount {
  Bigint count{0};
  // Statistics of the per-Q linear solves (zero for the naive method):
  // number of Q triples solved, and how many had solution-space size exactly
  // q^{2 d2 - d1 + deg gcd(Q)}.
  std::uint64_t q_enumerated = 0;
  std::uint64_t q_matching = 0;
};

// Number of pairs (Q, R) with Q primitive of Q-side degree d1, R primitive of
// R-side degree d2, and dot product identically zero.  Requires 1 <= d1 < d2.
PairCount count_pairs_n2(const Field& f, std::int64_t d1, std::int64_t d2,
                         PairMethod method,
                         const Bigint& budget = Bigint(1000000000));

struct SolverTotals {
  Bigint total{0};
  std::uint64_t q_enumerated = 0;
  std::uint64_t q_matching = 0;
};

// Sum over all Q (primitive or not) of the number of R with Q.R = 0,
// computed by rank; also records whether each solution-space size matches
// q^{2 db - da + deg gcd(Q)}.  Requires 0 <= da <= db, db >= 1.
SolverTotals count_total_pairs_by_solver(const Field& f, std::int64_t da,
                                         std::int64_t db,
                                         const Bigint& budget = Bigint(
                                             1000000000));

// Exhaustive double loop counting pairs with zero dot product (no
// primitivity filter).  Requires 0 <= da <= db, db >= 1.
Bigint count_total_pairs_brute(const Field& f, std::int64_t da,
                               std::int64_t db,
                               const Bigint& budget = Bigint(1000000000));

// Number of primitive Q-side triples of degree d.
Bigint count_primitive_triples_brute(const Field& f, std::int64_t d,
                                     const Bigint& budget = Bigint(1000000000));

// Sum of q^{deg gcd(Q)} over all Q-side triples of degree d.
Bigint sigma_brute(const Field& f, std::int64_t d,
                   const Bigint& budget = Bigint(1000000000));

// Sum of the polynomial Moebius function over monic polynomials of degree k.
std::int64_t mobius_sum_brute(const Field& f, int k,
                              const Bigint& budget = Bigint(1000000000));

}  // namespace flagcount
