#include "formulas.hpp"

#include <sstream>
#include <stdexcept>

namespace flagcount {

namespace {
Bigint qpow(std::uint32_t q, std::uint64_t e) { return big_pow(Bigint(q), e); }

void check_q(std::uint32_t q) {
  if (q < 2) throw std::invalid_argument("q must be at least 2");
}
}  // namespace

DegreeVector::DegreeVector(std::vector<std::int64_t> decreasing)
    : d_(std::move(decreasing)) {
  if (d_.empty()) throw std::invalid_argument("degree vector must be nonempty");
  for (std::size_t i = 0; i < d_.size(); ++i) {
    if (d_[i] <= 0) {
      throw std::invalid_argument("degree vector entries must be positive");
    }
    if (i + 1 < d_.size() && d_[i] <= d_[i + 1]) {
      throw std::invalid_argument(
          "degree vector must be strictly decreasing: " + to_string());
    }
  }
}

std::int64_t DegreeVector::dk(std::size_t k) const {
  if (k < 1 || k > d_.size() + 1) {
    throw std::invalid_argument("degree index out of range");
  }
  return k <= d_.size() ? d_[k - 1] : 0;
}

std::int64_t DegreeVector::big_d() const {
  std::int64_t s = 0;
  for (std::int64_t x : d_) s += 2 * x;
  return s;
}

std::string DegreeVector::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < d_.size(); ++i) {
    if (i) os << ",";
    os << d_[i];
  }
  return os.str();
}

DegreeVector DegreeVector::parse(const std::string& text) {
  std::vector<std::int64_t> vals;
  std::string token;
  std::istringstream is(text);
  while (std::getline(is, token, ',')) {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(token, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad degree entry '" + token + "'");
    }
    while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos]))) ++pos;
    if (pos != token.size()) {
      throw std::invalid_argument("bad degree entry '" + token + "'");
    }
    vals.push_back(v);
  }
  if (vals.empty()) throw std::invalid_argument("empty degree vector");
  return DegreeVector(std::move(vals));
}

Bigint mobius_sum_closed(std::uint32_t q, std::uint64_t k) {
  check_q(q);
  if (k == 0) return 1;
  if (k == 1) return -Bigint(q);
  return 0;
}

Bigint n_primitive_closed(std::uint32_t q, std::uint64_t d) {
  check_q(q);
  if (d == 0) return 1;
  return qpow(q, 3 * d) - qpow(q, 3 * d - 2);
}

Bigint sigma_closed(std::uint32_t q, std::uint64_t d) {
  check_q(q);
  if (d == 0) return 1;
  return qpow(q, 3 * d) + qpow(q, 3 * d - 1) - qpow(q, 2 * d - 1);
}

Bigint n_total_closed(std::uint32_t q, std::uint64_t d_a, std::uint64_t d_b) {
  check_q(q);
  if (d_b < d_a || d_b < 1) {
    throw std::invalid_argument("n_total requires d_b >= d_a >= 0 and d_b >= 1");
  }
  return qpow(q, 2 * d_b - d_a) * sigma_closed(q, d_a);
}

Bigint n_pairs_closed(std::uint32_t q, std::uint64_t d1, std::uint64_t d2) {
  check_q(q);
  if (d1 < 1 || d1 >= d2) {
    throw std::invalid_argument("n_pairs requires 1 <= d1 < d2");
  }
  const Bigint qm1 = Bigint(q) - 1;
  return qm1 * qm1 * (Bigint(q) + 1) * qpow(q, 2 * d1 + 2 * d2 - 3);
}

Bigint n_pairs_by_inversion(std::uint32_t q, std::uint64_t d1, std::uint64_t d2) {
  check_q(q);
  if (d1 < 1 || d1 >= d2) {
    throw std::invalid_argument("n_pairs requires 1 <= d1 < d2");
  }
  const Bigint bq(q);
  return n_total_closed(q, d1, d2) - bq * n_total_closed(q, d1 - 1, d2) -
         bq * n_total_closed(q, d1, d2 - 1) +
         bq * bq * n_total_closed(q, d1 - 1, d2 - 1);
}

Bigint gl_order(std::uint32_t q, std::uint32_t n) {
  check_q(q);
  Bigint r = qpow(q, static_cast<std::uint64_t>(n) * (n - 1) / 2);
  for (std::uint32_t k = 1; k <= n; ++k) r *= qpow(q, k) - 1;
  return r;
}

Bigint omega_order(std::uint32_t q, const DegreeVector& dv) {
  check_q(q);
  const std::int64_t n = static_cast<std::int64_t>(dv.n());
  const std::int64_t e = dv.big_d() - n * n;
  if (e < 0) throw std::logic_error("D - n^2 negative for a monotonic vector");
  return gl_order(q, static_cast<std::uint32_t>(n)) *
         qpow(q, static_cast<std::uint64_t>(e));
}

Bigint fiber_order(std::uint32_t q, std::uint32_t k, std::int64_t d_k,
                   std::int64_t d_k1) {
  check_q(q);
  if (k < 1 || d_k1 < 0 || d_k <= d_k1) {
    throw std::invalid_argument("fiber_order requires k >= 1 and d_k > d_k1 >= 0");
  }
  const std::int64_t e =
      (static_cast<std::int64_t>(k) + 1) * d_k - static_cast<std::int64_t>(k) * d_k1 - k;
  if (e < 0) throw std::logic_error("fiber exponent negative");
  return qpow(q, static_cast<std::uint64_t>(e)) * (qpow(q, k) - 1);
}

Bigint np_order(std::uint32_t q, std::int64_t d, std::uint32_t r) {
  check_q(q);
  if (r < 1) throw std::invalid_argument("np_order requires rank >= 1");
  const std::int64_t e = d - static_cast<std::int64_t>(r) + 1;
  if (e < 0) throw std::invalid_argument("np_order requires d >= r - 1");
  return qpow(q, static_cast<std::uint64_t>(e)) * (qpow(q, r - 1) - 1);
}

}  // namespace flagcount
