#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gf.hpp"

namespace flagcount {

// ============================================================================
// Univariate polynomials over F_q
// ============================================================================

// Dense coefficients, low degree first; the zero polynomial has an empty list
// and degree -1.  Values are element indices of an external Field.
struct UniPoly {
  std::vector<std::uint32_t> c;

  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  std::uint32_t coeff(std::size_t i) const { return i < c.size() ? c[i] : 0; }
  std::uint32_t leading() const { return c.empty() ? 0 : c.back(); }
  bool operator==(const UniPoly&) const = default;
};

UniPoly poly_from_coeffs(std::vector<std::uint32_t> coeffs);  // trims zeros
UniPoly poly_one();
UniPoly poly_x();

UniPoly poly_add(const Field& f, const UniPoly& a, const UniPoly& b);
UniPoly poly_sub(const Field& f, const UniPoly& a, const UniPoly& b);
UniPoly poly_mul(const Field& f, const UniPoly& a, const UniPoly& b);
UniPoly poly_scale(const Field& f, std::uint32_t s, const UniPoly& a);
// Quotient and remainder; divisor must be nonzero.
std::pair<UniPoly, UniPoly> poly_divmod(const Field& f, const UniPoly& a,
                                        const UniPoly& b);
UniPoly poly_derivative(const Field& f, const UniPoly& a);
// Monic gcd; poly_gcd(0, 0) is the zero polynomial.
UniPoly poly_gcd(const Field& f, UniPoly a, UniPoly b);
bool poly_is_monic(const UniPoly& a);
std::uint32_t poly_eval(const Field& f, const UniPoly& a, std::uint32_t x);
std::string poly_to_string(const Field& f, const UniPoly& a);

// Polynomial Moebius function of a monic polynomial: 0 when f is not
// squarefree, otherwise (-1)^(number of monic irreducible factors).  The
// factor count comes from distinct-degree gcd splitting; no full
// factorization is performed.  Throws on non-monic input.
int mobius_mu(const Field& f, const UniPoly& a);

// ============================================================================
// Homogeneous binary forms over F_q
// ============================================================================

// A form of homogeneity degree d >= 0 stores coefficients c_0..c_d with
//   F = sum_i c_i x0^(d-i) x1^i.
// deg < 0 encodes the null form (the only "form" of a negative-degree slot);
// a form of degree d >= 0 with all-zero coefficients is the zero form of that
// degree.  Both answer is_zero().
struct BinForm {
  int deg = -1;
  std::vector<std::uint32_t> c;

  bool is_null() const { return deg < 0; }
  bool is_zero() const;
  // Value at the basepoint (1,0), i.e. the coefficient of x0^deg.
  std::uint32_t at_base() const { return deg < 0 ? 0 : c[0]; }
  bool operator==(const BinForm&) const = default;
};

BinForm form_null();
BinForm form_zero(int deg);                                // deg < 0 -> null
BinForm form_from_coeffs(int deg, std::vector<std::uint32_t> coeffs);
BinForm form_one();                                        // degree 0, value 1
BinForm form_monomial(const Field& f, int deg, int x1_power,
                      std::uint32_t coeff);

BinForm form_add(const Field& f, const BinForm& a, const BinForm& b);
BinForm form_sub(const Field& f, const BinForm& a, const BinForm& b);
BinForm form_mul(const Field& f, const BinForm& a, const BinForm& b);
BinForm form_scale(const Field& f, std::uint32_t s, const BinForm& a);
std::uint32_t form_eval(const Field& f, const BinForm& a, std::uint32_t x0,
                        std::uint32_t x1);

// F(t, 1) as a univariate polynomial in t.
UniPoly form_dehomogenize(const BinForm& a);
// x1^x1_mult * (homogenization of u); the result has degree deg(u) + x1_mult.
BinForm form_homogenize(const UniPoly& u, int x1_mult);
// Largest m with x1^m dividing the form; -1 for a zero form.
int form_x1_multiplicity(const BinForm& a);
// Scales so the first nonzero coefficient equals 1 (canonical representative
// of the scalar class).  Zero forms pass through unchanged.
BinForm form_normalize(const Field& f, const BinForm& a);

// Monic-normalized gcd, computed as x1^(min x1-multiplicity) times the
// homogenization of the univariate gcd of the dehomogenizations.  One zero
// input returns the normalization of the other; both zero is an error.
BinForm binform_gcd(const Field& f, const BinForm& a, const BinForm& b);

// Gcd of all nonzero entries of a tuple; errors on an all-zero tuple.
BinForm tuple_gcd(const Field& f, const std::vector<BinForm>& t);
int tuple_gcd_degree(const Field& f, const std::vector<BinForm>& t);

std::string form_to_string(const Field& f, const BinForm& a);

// ============================================================================
// Enumeration
// ============================================================================

// All three enumerators walk a fixed coefficient-lexicographic order: the
// lowest-index coefficient varies fastest, each coefficient running through
// the field's element order 0, 1, ....

// Monic univariate polynomials of exact degree d (q^d items).
class MonicPolyEnum {
 public:
  MonicPolyEnum(const Field& f, int degree);
  bool next(UniPoly& out);
  std::uint64_t total() const { return total_; }

 private:
  const Field& f_;
  int degree_;
  std::uint64_t index_ = 0, total_ = 1;
};

// Univariate polynomials of degree < bound, including zero (q^bound items).
class BoundedPolyEnum {
 public:
  BoundedPolyEnum(const Field& f, int bound);
  bool next(UniPoly& out);
  std::uint64_t total() const { return total_; }

 private:
  const Field& f_;
  int bound_;
  std::uint64_t index_ = 0, total_ = 1;
};

// Binary forms of homogeneity degree d, including the zero form
// (q^(d+1) items).
class FormEnum {
 public:
  FormEnum(const Field& f, int degree);
  bool next(BinForm& out);
  std::uint64_t total() const { return total_; }

 private:
  const Field& f_;
  int degree_;
  std::uint64_t index_ = 0, total_ = 1;
};

}  // namespace flagcount
