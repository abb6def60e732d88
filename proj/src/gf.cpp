#include "gf.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "errors.hpp"

namespace flagcount {

namespace {

// --- bootstrap polynomial arithmetic over F_p (dense, low degree first) ---
// Used only while constructing a Field, before any tables exist.

using PVec = std::vector<std::uint32_t>;

void ptrim(PVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod b over F_p; b monic.
PVec pmod(PVec a, const PVec& b, std::uint32_t p) {
  ptrim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    if (lead != 0) {
      for (std::size_t i = 0; i <= db; ++i) {
        std::uint32_t& c = a[shift + i];
        c = (c + p - (lead * b[i]) % p) % p;
      }
    }
    a.pop_back();
    ptrim(a);
  }
  return a;
}

bool is_irreducible(const PVec& f, std::uint32_t p) {
  const std::size_t k = f.size() - 1;
  if (k == 0) return false;
  if (k == 1) return true;
  // Trial division by every monic polynomial of degree 1..k/2.
  for (std::size_t e = 1; 2 * e <= k; ++e) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < e; ++i) count *= p;
    for (std::uint64_t m = 0; m < count; ++m) {
      PVec g(e + 1, 0);
      std::uint64_t t = m;
      for (std::size_t i = 0; i < e; ++i) {
        g[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      g[e] = 1;
      if (pmod(f, g, p).empty()) return false;
    }
  }
  return true;
}

// The monic irreducible of degree k over F_p whose coefficient sequence
// (c_0, ..., c_{k-1}) is lexicographically smallest.
PVec smallest_irreducible(std::uint32_t p, std::uint32_t k) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < k; ++i) count *= p;
  for (std::uint64_t m = 0; m < count; ++m) {
    // Decode m so that c_0 is the most significant digit: increasing m then
    // walks the coefficient sequences in lexicographic order.
    PVec f(k + 1, 0);
    std::uint64_t t = m;
    for (std::uint32_t j = k; j-- > 0;) {
      f[j] = static_cast<std::uint32_t>(t % p);
      t /= p;
    }
    f[k] = 1;
    if (is_irreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");  // unreachable
}

}  // namespace

bool decompose_prime_power(std::uint32_t q, std::uint32_t* p, std::uint32_t* k) {
  if (q < 2) return false;
  std::uint32_t base = q;
  for (std::uint32_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      base = d;
      break;
    }
  }
  // base is the smallest prime factor of q; q must be a power of it.
  std::uint32_t rest = q, deg = 0;
  while (rest % base == 0) {
    rest /= base;
    ++deg;
  }
  if (rest != 1) return false;
  if (p) *p = base;
  if (k) *k = deg;
  return true;
}

Field::Field(std::uint32_t q, std::uint32_t cap) {
  if (cap > 256) {
    throw std::invalid_argument("field cap " + std::to_string(cap) +
                                " too large (tables are dense; max 256)");
  }
  std::uint32_t p = 0, k = 0;
  if (!decompose_prime_power(q, &p, &k)) {
    throw NotPrimePowerError("q = " + std::to_string(q) +
                             " is not a prime power");
  }
  if (q > cap) {
    throw FieldCapError("q = " + std::to_string(q) +
                        " exceeds the field order cap (" + std::to_string(cap) +
                        ")");
  }
  p_ = p;
  k_ = k;
  q_ = q;
  if (k_ > 1) modulus_ = smallest_irreducible(p_, k_);

  // Digits of every element, low degree first.
  std::vector<PVec> digits(q_);
  for (std::uint32_t e = 0; e < q_; ++e) {
    PVec d(k_, 0);
    std::uint32_t t = e;
    for (std::uint32_t i = 0; i < k_; ++i) {
      d[i] = t % p_;
      t /= p_;
    }
    digits[e] = std::move(d);
  }
  auto encode = [&](const PVec& d) {
    std::uint32_t e = 0;
    for (std::uint32_t i = k_; i-- > 0;) e = e * p_ + (i < d.size() ? d[i] : 0);
    return e;
  };

  add_.assign(static_cast<std::size_t>(q_) * q_, 0);
  mul_.assign(static_cast<std::size_t>(q_) * q_, 0);
  neg_.assign(q_, 0);
  inv_.assign(q_, 0);
  for (std::uint32_t a = 0; a < q_; ++a) {
    for (std::uint32_t b = 0; b < q_; ++b) {
      PVec s(k_, 0);
      for (std::uint32_t i = 0; i < k_; ++i)
        s[i] = (digits[a][i] + digits[b][i]) % p_;
      add_[a * q_ + b] = encode(s);

      PVec prod(2 * k_ - 1, 0);
      for (std::uint32_t i = 0; i < k_; ++i)
        for (std::uint32_t j = 0; j < k_; ++j)
          prod[i + j] = (prod[i + j] + digits[a][i] * digits[b][j]) % p_;
      if (k_ > 1) prod = pmod(std::move(prod), modulus_, p_);
      mul_[a * q_ + b] = encode(prod);
    }
  }
  for (std::uint32_t a = 0; a < q_; ++a) {
    for (std::uint32_t b = 0; b < q_; ++b) {
      if (add_[a * q_ + b] == 0) neg_[a] = b;
      if (a != 0 && mul_[a * q_ + b] == 1) inv_[a] = b;
    }
  }
}

void Field::check(std::uint32_t a) const {
  if (a >= q_) {
    throw std::invalid_argument("element index " + std::to_string(a) +
                                " out of range for F_" + std::to_string(q_));
  }
}

std::uint32_t Field::inv(std::uint32_t a) const {
  check(a);
  if (a == 0) throw std::domain_error("division by zero in F_" + std::to_string(q_));
  return inv_[a];
}

std::uint32_t Field::div(std::uint32_t a, std::uint32_t b) const {
  return mul(a, inv(b));
}

std::uint32_t Field::pow(std::uint32_t a, std::uint64_t e) const {
  check(a);
  std::uint32_t result = 1, base = a;
  while (e != 0) {
    if (e & 1) result = mul_[result * q_ + base];
    base = mul_[base * q_ + base];
    e >>= 1;
  }
  return result;
}

std::vector<std::uint32_t> Field::coeffs_of(std::uint32_t e) const {
  check(e);
  std::vector<std::uint32_t> d(k_, 0);
  for (std::uint32_t i = 0; i < k_; ++i) {
    d[i] = e % p_;
    e /= p_;
  }
  return d;
}

std::uint32_t Field::from_coeffs(const std::vector<std::uint32_t>& c) const {
  if (c.size() > k_) {
    throw std::invalid_argument("coefficient tuple longer than extension degree");
  }
  std::uint32_t e = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] >= p_) throw std::invalid_argument("coefficient not reduced mod p");
    e = e * p_ + c[i];
  }
  return e;
}

namespace {
// Pretty-prints sum c_i x^i (low-first digits), high powers first.
std::string poly_text(const std::vector<std::uint32_t>& c) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || c[i] != 1) os << c[i];
    if (i >= 1) {
      if (i == 0 || c[i] != 1) os << "*";
      os << "x";
      if (i >= 2) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}
}  // namespace

std::string Field::element_name(std::uint32_t e) const {
  check(e);
  if (k_ == 1) return std::to_string(e);
  return poly_text(coeffs_of(e));
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "F_" << q_ << ": characteristic " << p_ << ", degree " << k_;
  if (k_ > 1) os << ", modulus " << poly_text(modulus_);
  return os.str();
}

}  // namespace flagcount
