#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace flagcount {

// Arithmetic context for a finite field F_q, q = p^k.
//
// Elements are the indices 0..q-1.  Index e encodes the residue
// sum_i c_i x^i with (c_0, c_1, ...) the base-p digits of e, so the
// enumeration order is 0, 1, 2, ..., independent of the modulus, and always
// starts with the additive and multiplicative identities.
//
// For k > 1 the field is F_p[x] modulo the monic irreducible polynomial of
// degree k whose coefficient sequence (c_0, c_1, ..., c_{k-1}) is
// lexicographically smallest; this makes construction deterministic.
//
// All operations are table-driven and pure; a Field is immutable after
// construction and safe to share across threads.
class Field {
 public:
  static constexpr std::uint32_t kDefaultCap = 16;

  explicit Field(std::uint32_t q, std::uint32_t cap = kDefaultCap);

  std::uint32_t order() const { return q_; }
  std::uint32_t characteristic() const { return p_; }
  std::uint32_t extension_degree() const { return k_; }

  // Defining polynomial coefficients, low degree first, length k+1 (monic).
  // Empty for prime fields.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  std::uint32_t zero() const { return 0; }
  std::uint32_t one() const { return 1; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    check(a), check(b);
    return add_[a * q_ + b];
  }
  std::uint32_t neg(std::uint32_t a) const {
    check(a);
    return neg_[a];
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    check(a), check(b);
    return add_[a * q_ + neg_[b]];
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    check(a), check(b);
    return mul_[a * q_ + b];
  }
  // Throws std::domain_error on a == 0.
  std::uint32_t inv(std::uint32_t a) const;
  // Throws std::domain_error on b == 0.
  std::uint32_t div(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

  // Base-p digits of an element index, low degree first, length k.
  std::vector<std::uint32_t> coeffs_of(std::uint32_t e) const;
  std::uint32_t from_coeffs(const std::vector<std::uint32_t>& c) const;

  // Human-readable element, e.g. "x + 1" in F_4.
  std::string element_name(std::uint32_t e) const;
  // One-line field description, e.g. "F_4 = F_2[x]/(x^2 + x + 1)".
  std::string describe() const;

 private:
  void check(std::uint32_t a) const;

  std::uint32_t p_ = 0, k_ = 0, q_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> add_, mul_;  // q*q flat tables
  std::vector<std::uint32_t> neg_, inv_;  // length q; inv_[0] unused
};

// Decomposes q as p^k.  Returns false if q < 2 or q is not a prime power.
bool decompose_prime_power(std::uint32_t q, std::uint32_t* p, std::uint32_t* k);

}  // namespace flagcount
