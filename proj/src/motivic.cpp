#include "motivic.hpp"

#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace flagcount {

void LPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

LPoly LPoly::constant(Bigint v) {
  LPoly p;
  if (v != 0) p.c_.push_back(std::move(v));
  return p;
}

LPoly LPoly::lefschetz_power(std::uint64_t e) {
  LPoly p;
  p.c_.assign(e + 1, Bigint(0));
  p.c_[e] = 1;
  return p;
}

LPoly LPoly::operator+(const LPoly& o) const {
  LPoly r;
  r.c_.assign(std::max(c_.size(), o.c_.size()), Bigint(0));
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = coeff(i) + o.coeff(i);
  r.trim();
  return r;
}

LPoly LPoly::operator-(const LPoly& o) const {
  LPoly r;
  r.c_.assign(std::max(c_.size(), o.c_.size()), Bigint(0));
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = coeff(i) - o.coeff(i);
  r.trim();
  return r;
}

LPoly LPoly::operator*(const LPoly& o) const {
  if (is_zero() || o.is_zero()) return LPoly();
  LPoly r;
  r.c_.assign(c_.size() + o.c_.size() - 1, Bigint(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
  }
  r.trim();
  return r;
}

LPoly LPoly::pow(std::uint64_t e) const {
  LPoly r = LPoly::constant(1);
  LPoly b = *this;
  while (e != 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Bigint LPoly::eval(const Bigint& q) const {
  Bigint acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * q + c_[i];
  return acc;
}

std::string LPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    const bool neg = c_[i] < 0;
    const Bigint mag = neg ? Bigint(-c_[i]) : c_[i];
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag.str();
    } else {
      if (mag != 1) os << mag.str() << "*";
      os << "L";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

LPoly class_gl(std::uint32_t n) {
  LPoly r = LPoly::lefschetz_power(static_cast<std::uint64_t>(n) * (n - 1) / 2);
  for (std::uint32_t k = 1; k <= n; ++k) {
    r = r * (LPoly::lefschetz_power(k) - LPoly::constant(1));
  }
  return r;
}

LPoly class_np(std::int64_t d, std::uint32_t r) {
  if (r < 2 || d < static_cast<std::int64_t>(r)) {
    throw std::invalid_argument("class_np requires r >= 2 and d >= r");
  }
  return LPoly::lefschetz_power(static_cast<std::uint64_t>(d - r + 1)) *
         (LPoly::lefschetz_power(r - 1) - LPoly::constant(1));
}

std::int64_t alpha_exponent(const DegreeVector& dv) {
  const std::int64_t n = static_cast<std::int64_t>(dv.n());
  std::int64_t sum = 0;
  for (std::int64_t k = 1; k <= n; ++k) {
    sum += (k + 1) * dv.dk(k) - k * dv.dk(k + 1) - k;
  }
  const std::int64_t closed = dv.big_d() - (n + 1) * n / 2;
  if (sum != closed) {
    throw std::logic_error("alpha sum form disagrees with closed form");
  }
  return sum;
}

LPoly class_omega_product(const DegreeVector& dv) {
  const std::int64_t n = static_cast<std::int64_t>(dv.n());
  LPoly r = LPoly::constant(1);
  for (std::int64_t k = 1; k <= n; ++k) {
    const std::int64_t e = (k + 1) * dv.dk(k) - k * dv.dk(k + 1) - k;
    if (e < 0) throw std::logic_error("negative fiber exponent");
    r = r * (LPoly::lefschetz_power(static_cast<std::uint64_t>(e)) *
             (LPoly::lefschetz_power(static_cast<std::uint64_t>(k)) -
              LPoly::constant(1)));
  }
  return r;
}

LPoly class_omega_closed(const DegreeVector& dv) {
  const std::int64_t n = static_cast<std::int64_t>(dv.n());
  const std::int64_t e = dv.big_d() - n * n;
  if (e < 0) throw std::logic_error("D - n^2 negative for a monotonic vector");
  return LPoly::lefschetz_power(static_cast<std::uint64_t>(e)) *
         class_gl(static_cast<std::uint32_t>(n));
}

std::vector<DegreeVector> seeded_degree_vectors(std::uint64_t seed,
                                                std::size_t count,
                                                std::uint32_t n_max,
                                                std::int64_t d1_max) {
  if (n_max < 1 || d1_max < n_max) {
    throw std::invalid_argument("need d1_max >= n_max >= 1");
  }
  // Raw mt19937_64 outputs with modulo: the sequence is pinned by the C++
  // standard, so a (seed, count) pair names the same vectors everywhere.
  std::mt19937_64 rng(seed);
  std::vector<DegreeVector> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint32_t n = static_cast<std::uint32_t>(i % n_max) + 1;
    std::set<std::int64_t> vals;
    while (vals.size() < n) {
      vals.insert(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(d1_max)) + 1);
    }
    std::vector<std::int64_t> v(vals.rbegin(), vals.rend());  // descending
    out.emplace_back(std::move(v));
  }
  return out;
}

}  // namespace flagcount
