#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bigint.hpp"

namespace flagcount {

// Multidegree (d_1, ..., d_n) of a based map to the flag variety, stored in
// the strictly decreasing convention d_1 > d_2 > ... > d_n > 0, with the
// convention d_{n+1} = 0.  The companion polynomial-pair counts below use
// their own increasing argument pair (d1 < d2); the bridge between the two
// conventions is an explicit, tested identity, never an implicit reindexing.
class DegreeVector {
 public:
  explicit DegreeVector(std::vector<std::int64_t> decreasing);

  std::size_t n() const { return d_.size(); }
  // 1-based, matching the subscripts in the formulas; dk(n+1) == 0.
  std::int64_t dk(std::size_t k) const;
  const std::vector<std::int64_t>& entries() const { return d_; }
  // D = sum of 2*d_k.
  std::int64_t big_d() const;
  std::string to_string() const;  // "3,2,1"

  static DegreeVector parse(const std::string& text);
  bool operator==(const DegreeVector&) const = default;

 private:
  std::vector<std::int64_t> d_;
};

// --- Pair-model counts for polynomial triples (arguments increasing) ---

// Sum of the polynomial Moebius function over monic polynomials of degree k:
// 1, -q, then 0 for k >= 2.
Bigint mobius_sum_closed(std::uint32_t q, std::uint64_t k);

// Primitive triples (q_0 monic of degree d; q_1, q_2 of degree < d) with unit
// gcd: q^{3d} - q^{3d-2} for d >= 1, and 1 for d = 0.
Bigint n_primitive_closed(std::uint32_t q, std::uint64_t d);

// Sum of q^{deg gcd} over all such triples: q^{3d} + q^{3d-1} - q^{2d-1} for
// d >= 1, and 1 for d = 0.
Bigint sigma_closed(std::uint32_t q, std::uint64_t d);

// All intersecting pairs (Q, R), Q of shape d_a, R of shape d_b:
// q^{2 d_b - d_a} * sigma(d_a).  Requires d_b >= d_a >= 0 and d_b >= 1.
Bigint n_total_closed(std::uint32_t q, std::uint64_t d_a, std::uint64_t d_b);

// Primitive intersecting pairs: (q-1)^2 (q+1) q^{2 d1 + 2 d2 - 3}.
// Requires 1 <= d1 < d2.
Bigint n_pairs_closed(std::uint32_t q, std::uint64_t d1, std::uint64_t d2);

// The same count via the four-term inclusion-exclusion over n_total_closed;
// must agree with n_pairs_closed.
Bigint n_pairs_by_inversion(std::uint32_t q, std::uint64_t d1, std::uint64_t d2);

// --- Flag-side counts (DegreeVector arguments, decreasing convention) ---

// |GL_n(F_q)| = q^{n(n-1)/2} * prod_{k=1}^{n} (q^k - 1).
Bigint gl_order(std::uint32_t q, std::uint32_t n);

// Order of the based-map space: gl_order(q, n) * q^{D - n^2}.
Bigint omega_order(std::uint32_t q, const DegreeVector& dv);

// Order of the level-k fiber: q^{(k+1) d_k - k d_{k+1} - k} * (q^k - 1).
// Requires k >= 1 and d_k > d_k1 >= 0.
Bigint fiber_order(std::uint32_t q, std::uint32_t k, std::int64_t d_k,
                   std::int64_t d_k1);

// Order of the space of based nowhere-vanishing sections of a rank-r bundle
// of total (twisted) degree d with every summand >= 1:
// q^{d - r + 1} * (q^{r-1} - 1).  Returned literally for any r >= 1; callers
// must enforce the summand hypothesis themselves.
Bigint np_order(std::uint32_t q, std::int64_t d, std::uint32_t r);

}  // namespace flagcount
