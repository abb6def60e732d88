#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "formulas.hpp"

namespace flagcount {

// Integer-coefficient polynomial in the Lefschetz class L, the exact-symbolic
// counterpart of the counting formulas: every class handled by this project
// lies in Z[L], so ring arithmetic on these polynomials verifies the motivic
// identities with no reference to any particular field size.
class LPoly {
 public:
  LPoly() = default;  // zero
  static LPoly constant(Bigint v);
  static LPoly lefschetz_power(std::uint64_t e);  // L^e

  bool is_zero() const { return c_.empty(); }
  // Degree in L; -1 for the zero polynomial.
  std::int64_t degree() const { return static_cast<std::int64_t>(c_.size()) - 1; }
  Bigint coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Bigint(0); }

  LPoly operator+(const LPoly& o) const;
  LPoly operator-(const LPoly& o) const;
  LPoly operator*(const LPoly& o) const;
  LPoly pow(std::uint64_t e) const;
  bool operator==(const LPoly&) const = default;

  // Ring homomorphism L -> q.
  Bigint eval(const Bigint& q) const;

  // Canonical text: descending powers, explicit signs, e.g.
  // "L^6 - L^5 - L^4 + L^3"; magnitude printed as "3*L^2" when not 1.
  std::string str() const;

 private:
  std::vector<Bigint> c_;  // c_[i] multiplies L^i; no trailing zeros
  void trim();
};

// [GL_n] = L^(n(n-1)/2) * prod_{k=1}^n (L^k - 1), expanded.
LPoly class_gl(std::uint32_t n);

// Class of the based nowhere-vanishing section space:
// L^(d-r+1) * (L^(r-1) - 1).  Requires r >= 2 and d >= r.
LPoly class_np(std::int64_t d, std::uint32_t r);

// The exponent sum_{k=1}^n ((k+1) d_k - k d_{k+1} - k); computed both as the
// literal sum and as D - (n+1 choose 2), with the two asserted equal.
std::int64_t alpha_exponent(const DegreeVector& dv);

// Product of the level classes L^((k+1)d_k - k d_{k+1} - k) * (L^k - 1).
LPoly class_omega_product(const DegreeVector& dv);
// Closed form L^(D - n^2) * [GL_n].
LPoly class_omega_closed(const DegreeVector& dv);

// Deterministic pseudo-random strictly monotonic degree vectors for identity
// sweeps.  Entry lengths cycle through 1..n_max; every d_1 <= d1_max.  The
// generator is fully specified by (seed, count, n_max, d1_max) and never
// depends on platform library details.
std::vector<DegreeVector> seeded_degree_vectors(std::uint64_t seed,
                                                std::size_t count,
                                                std::uint32_t n_max,
                                                std::int64_t d1_max);

}  // namespace flagcount
