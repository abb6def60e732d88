#include "binform.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace flagcount {

// ============================================================================
// UniPoly
// ============================================================================

UniPoly poly_from_coeffs(std::vector<std::uint32_t> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  return UniPoly{std::move(coeffs)};
}

UniPoly poly_one() { return UniPoly{{1}}; }
UniPoly poly_x() { return UniPoly{{0, 1}}; }

UniPoly poly_add(const Field& f, const UniPoly& a, const UniPoly& b) {
  std::vector<std::uint32_t> c(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = f.add(a.coeff(i), b.coeff(i));
  return poly_from_coeffs(std::move(c));
}

UniPoly poly_sub(const Field& f, const UniPoly& a, const UniPoly& b) {
  std::vector<std::uint32_t> c(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = f.sub(a.coeff(i), b.coeff(i));
  return poly_from_coeffs(std::move(c));
}

UniPoly poly_mul(const Field& f, const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly{};
  std::vector<std::uint32_t> c(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      c[i + j] = f.add(c[i + j], f.mul(a.c[i], b.c[j]));
  }
  return poly_from_coeffs(std::move(c));
}

UniPoly poly_scale(const Field& f, std::uint32_t s, const UniPoly& a) {
  if (s == 0) return UniPoly{};
  std::vector<std::uint32_t> c(a.c);
  for (auto& x : c) x = f.mul(s, x);
  return poly_from_coeffs(std::move(c));
}

std::pair<UniPoly, UniPoly> poly_divmod(const Field& f, const UniPoly& a,
                                        const UniPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {UniPoly{}, a};
  const std::uint32_t binv = f.inv(b.leading());
  std::vector<std::uint32_t> rem = a.c;
  std::vector<std::uint32_t> quot(a.c.size() - b.c.size() + 1, 0);
  for (std::size_t k = quot.size(); k-- > 0;) {
    const std::uint32_t factor = f.mul(rem[k + b.c.size() - 1], binv);
    quot[k] = factor;
    if (factor == 0) continue;
    for (std::size_t i = 0; i < b.c.size(); ++i)
      rem[k + i] = f.sub(rem[k + i], f.mul(factor, b.c[i]));
  }
  return {poly_from_coeffs(std::move(quot)), poly_from_coeffs(std::move(rem))};
}

UniPoly poly_derivative(const Field& f, const UniPoly& a) {
  if (a.c.size() <= 1) return UniPoly{};
  std::vector<std::uint32_t> c(a.c.size() - 1, 0);
  for (std::size_t i = 1; i < a.c.size(); ++i) {
    // Multiply by i in the prime field: repeated addition mod p.
    const std::uint32_t imodp =
        static_cast<std::uint32_t>(i % f.characteristic());
    std::uint32_t factor = 0;
    for (std::uint32_t t = 0; t < imodp; ++t) factor = f.add(factor, 1);
    c[i - 1] = f.mul(factor, a.c[i]);
  }
  return poly_from_coeffs(std::move(c));
}

UniPoly poly_gcd(const Field& f, UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = poly_divmod(f, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return poly_scale(f, f.inv(a.leading()), a);
}

bool poly_is_monic(const UniPoly& a) { return !a.is_zero() && a.leading() == 1; }

std::uint32_t poly_eval(const Field& f, const UniPoly& a, std::uint32_t x) {
  std::uint32_t acc = 0;
  for (std::size_t i = a.c.size(); i-- > 0;) acc = f.add(f.mul(acc, x), a.c[i]);
  return acc;
}

std::string poly_to_string(const Field& f, const UniPoly& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = a.c.size(); i-- > 0;) {
    if (a.c[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    const std::string coeff = f.element_name(a.c[i]);
    const bool unit = (a.c[i] == 1);
    const bool composite = coeff.find(' ') != std::string::npos;
    if (i == 0 || !unit) os << (composite ? "(" + coeff + ")" : coeff);
    if (i >= 1) {
      if (!unit) os << "*";
      os << "t";
      if (i >= 2) os << "^" << i;
    }
  }
  return os.str();
}

namespace {

// x^(q^d) mod m, maintained incrementally: given prev = x^(q^(d-1)) mod m,
// returns prev^q mod m.  Avoids huge exponents entirely.
UniPoly frobenius_step(const Field& f, const UniPoly& prev, const UniPoly& m) {
  UniPoly result = poly_one();
  UniPoly base = prev;
  std::uint32_t e = f.order();
  while (e != 0) {
    if (e & 1) result = poly_divmod(f, poly_mul(f, result, base), m).second;
    base = poly_divmod(f, poly_mul(f, base, base), m).second;
    e >>= 1;
  }
  return result;
}

}  // namespace

int mobius_mu(const Field& f, const UniPoly& a) {
  if (!poly_is_monic(a)) {
    throw std::invalid_argument("mobius_mu requires a monic polynomial");
  }
  if (a.degree() == 0) return 1;  // the unit: zero irreducible factors
  const UniPoly da = poly_derivative(f, a);
  if (da.is_zero()) return 0;  // p-th power in characteristic p
  if (poly_gcd(f, a, da).degree() > 0) return 0;  // repeated factor

  // Squarefree: count irreducible factors by distinct-degree splitting.
  int factors = 0;
  UniPoly rem = a;
  UniPoly frob = poly_divmod(f, poly_x(), rem).second;  // x^(q^0) mod rem
  for (int d = 1; rem.degree() >= 1 && d <= a.degree(); ++d) {
    frob = frobenius_step(f, frob, rem);
    const UniPoly h = poly_sub(f, frob, poly_x());
    const UniPoly g = h.is_zero() ? rem : poly_gcd(f, rem, h);
    if (g.degree() > 0) {
      if (g.degree() % d != 0) {
        throw std::logic_error("distinct-degree split degree not divisible");
      }
      factors += g.degree() / d;
      rem = poly_divmod(f, rem, g).first;
      frob = poly_divmod(f, frob, rem).second;
    }
  }
  if (rem.degree() != 0) {
    throw std::logic_error("distinct-degree split left a nontrivial remainder");
  }
  return (factors % 2 == 0) ? 1 : -1;
}

// ============================================================================
// BinForm
// ============================================================================

bool BinForm::is_zero() const {
  if (deg < 0) return true;
  return std::all_of(c.begin(), c.end(), [](std::uint32_t x) { return x == 0; });
}

BinForm form_null() { return BinForm{}; }

BinForm form_zero(int deg) {
  if (deg < 0) return form_null();
  return BinForm{deg, std::vector<std::uint32_t>(deg + 1, 0)};
}

BinForm form_from_coeffs(int deg, std::vector<std::uint32_t> coeffs) {
  if (deg < 0) {
    if (!coeffs.empty()) {
      throw std::invalid_argument("null form cannot carry coefficients");
    }
    return form_null();
  }
  if (coeffs.size() != static_cast<std::size_t>(deg) + 1) {
    throw std::invalid_argument("form of degree " + std::to_string(deg) +
                                " needs exactly " + std::to_string(deg + 1) +
                                " coefficients");
  }
  return BinForm{deg, std::move(coeffs)};
}

BinForm form_one() { return BinForm{0, {1}}; }

BinForm form_monomial(const Field& f, int deg, int x1_power,
                      std::uint32_t coeff) {
  if (deg < 0 || x1_power < 0 || x1_power > deg) {
    throw std::invalid_argument("bad monomial degrees");
  }
  BinForm b = form_zero(deg);
  b.c[x1_power] = coeff;
  (void)f;
  return b;
}

BinForm form_add(const Field& f, const BinForm& a, const BinForm& b) {
  if (a.is_null()) return b;
  if (b.is_null()) return a;
  if (a.deg != b.deg) {
    throw std::invalid_argument("cannot add forms of different degrees");
  }
  BinForm r = form_zero(a.deg);
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = f.add(a.c[i], b.c[i]);
  return r;
}

BinForm form_sub(const Field& f, const BinForm& a, const BinForm& b) {
  if (b.is_null()) return a;
  BinForm nb = b;
  for (auto& x : nb.c) x = f.neg(x);
  return form_add(f, a, nb);
}

BinForm form_mul(const Field& f, const BinForm& a, const BinForm& b) {
  if (a.is_null() || b.is_null()) return form_null();
  BinForm r = form_zero(a.deg + b.deg);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = f.add(r.c[i + j], f.mul(a.c[i], b.c[j]));
  }
  return r;
}

BinForm form_scale(const Field& f, std::uint32_t s, const BinForm& a) {
  BinForm r = a;
  for (auto& x : r.c) x = f.mul(s, x);
  return r;
}

std::uint32_t form_eval(const Field& f, const BinForm& a, std::uint32_t x0,
                        std::uint32_t x1) {
  if (a.is_null()) return 0;
  std::uint32_t acc = 0;
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    const std::uint32_t term =
        f.mul(a.c[i], f.mul(f.pow(x0, a.deg - static_cast<int>(i)),
                            f.pow(x1, static_cast<std::uint64_t>(i))));
    acc = f.add(acc, term);
  }
  return acc;
}

UniPoly form_dehomogenize(const BinForm& a) {
  if (a.is_null()) return UniPoly{};
  std::vector<std::uint32_t> u(a.c.size(), 0);
  for (std::size_t j = 0; j < u.size(); ++j) u[j] = a.c[a.deg - j];
  return poly_from_coeffs(std::move(u));
}

BinForm form_homogenize(const UniPoly& u, int x1_mult) {
  if (u.is_zero()) throw std::invalid_argument("cannot homogenize zero");
  if (x1_mult < 0) throw std::invalid_argument("negative x1 multiplicity");
  const int e = u.degree();
  BinForm r = form_zero(e + x1_mult);
  for (int i = 0; i <= e; ++i) r.c[x1_mult + i] = u.c[e - i];
  return r;
}

int form_x1_multiplicity(const BinForm& a) {
  if (a.is_zero()) return -1;
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] != 0) return static_cast<int>(i);
  }
  return -1;
}

BinForm form_normalize(const Field& f, const BinForm& a) {
  const int m = form_x1_multiplicity(a);
  if (m < 0) return a;
  return form_scale(f, f.inv(a.c[m]), a);
}

BinForm binform_gcd(const Field& f, const BinForm& a, const BinForm& b) {
  const bool az = a.is_zero(), bz = b.is_zero();
  if (az && bz) throw std::invalid_argument("gcd of two zero forms");
  if (az) return form_normalize(f, b);
  if (bz) return form_normalize(f, a);
  const int m = std::min(form_x1_multiplicity(a), form_x1_multiplicity(b));
  const UniPoly g = poly_gcd(f, form_dehomogenize(a), form_dehomogenize(b));
  return form_homogenize(g, m);
}

BinForm tuple_gcd(const Field& f, const std::vector<BinForm>& t) {
  BinForm acc = form_null();
  for (const BinForm& x : t) {
    if (x.is_zero()) continue;
    acc = acc.is_null() ? form_normalize(f, x) : binform_gcd(f, acc, x);
  }
  if (acc.is_null()) throw std::invalid_argument("gcd of an all-zero tuple");
  return acc;
}

int tuple_gcd_degree(const Field& f, const std::vector<BinForm>& t) {
  return tuple_gcd(f, t).deg;
}

std::string form_to_string(const Field& f, const BinForm& a) {
  if (a.is_null()) return "(null)";
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    const int p0 = a.deg - static_cast<int>(i);
    const int p1 = static_cast<int>(i);
    const std::string coeff = f.element_name(a.c[i]);
    const bool unit = (a.c[i] == 1);
    const bool composite = coeff.find(' ') != std::string::npos;
    const bool constant = (p0 == 0 && p1 == 0);
    if (constant || !unit) os << (composite ? "(" + coeff + ")" : coeff);
    bool star = !unit;
    if (p0 > 0) {
      if (star) os << "*";
      os << "x0";
      if (p0 > 1) os << "^" << p0;
      star = true;
    }
    if (p1 > 0) {
      if (star) os << "*";
      os << "x1";
      if (p1 > 1) os << "^" << p1;
    }
  }
  return os.str();
}

// ============================================================================
// Enumeration
// ============================================================================

namespace {
std::uint64_t checked_power(std::uint64_t base, int exp) {
  std::uint64_t total = 1;
  for (int i = 0; i < exp; ++i) {
    if (total > (std::uint64_t(1) << 62) / base) {
      throw std::invalid_argument("enumeration size exceeds 2^62");
    }
    total *= base;
  }
  return total;
}
}  // namespace

MonicPolyEnum::MonicPolyEnum(const Field& f, int degree) : f_(f), degree_(degree) {
  if (degree < 0) throw std::invalid_argument("negative degree");
  total_ = checked_power(f.order(), degree);
}

bool MonicPolyEnum::next(UniPoly& out) {
  if (index_ >= total_) return false;
  std::vector<std::uint32_t> c(degree_ + 1, 0);
  std::uint64_t t = index_++;
  for (int j = 0; j < degree_; ++j) {
    c[j] = static_cast<std::uint32_t>(t % f_.order());
    t /= f_.order();
  }
  c[degree_] = 1;
  out = UniPoly{std::move(c)};
  return true;
}

BoundedPolyEnum::BoundedPolyEnum(const Field& f, int bound) : f_(f), bound_(bound) {
  if (bound < 0) throw std::invalid_argument("negative degree bound");
  total_ = checked_power(f.order(), bound);
}

bool BoundedPolyEnum::next(UniPoly& out) {
  if (index_ >= total_) return false;
  std::vector<std::uint32_t> c(bound_, 0);
  std::uint64_t t = index_++;
  for (int j = 0; j < bound_; ++j) {
    c[j] = static_cast<std::uint32_t>(t % f_.order());
    t /= f_.order();
  }
  out = poly_from_coeffs(std::move(c));
  return true;
}

FormEnum::FormEnum(const Field& f, int degree) : f_(f), degree_(degree) {
  if (degree < 0) throw std::invalid_argument("negative degree");
  total_ = checked_power(f.order(), degree + 1);
}

bool FormEnum::next(BinForm& out) {
  if (index_ >= total_) return false;
  std::vector<std::uint32_t> c(degree_ + 1, 0);
  std::uint64_t t = index_++;
  for (int j = 0; j <= degree_; ++j) {
    c[j] = static_cast<std::uint32_t>(t % f_.order());
    t /= f_.order();
  }
  out = BinForm{degree_, std::move(c)};
  return true;
}

}  // namespace flagcount
