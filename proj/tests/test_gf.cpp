#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "errors.hpp"
#include "gf.hpp"

using namespace flagcount;

namespace {
const std::vector<std::uint32_t> kPrimePowers = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16};
}

TEST_CASE("prime power decomposition") {
  std::uint32_t p = 0, k = 0;
  CHECK(decompose_prime_power(2, &p, &k));
  CHECK(p == 2);
  CHECK(k == 1);
  CHECK(decompose_prime_power(16, &p, &k));
  CHECK(p == 2);
  CHECK(k == 4);
  CHECK(decompose_prime_power(9, &p, &k));
  CHECK(p == 3);
  CHECK(k == 2);
  CHECK_FALSE(decompose_prime_power(1, nullptr, nullptr));
  CHECK_FALSE(decompose_prime_power(6, nullptr, nullptr));
  CHECK_FALSE(decompose_prime_power(12, nullptr, nullptr));
  CHECK_FALSE(decompose_prime_power(0, nullptr, nullptr));
}

TEST_CASE("field construction accepts prime powers and rejects the rest") {
  for (std::uint32_t q : kPrimePowers) {
    Field f(q);
    CHECK(f.order() == q);
  }
  CHECK_THROWS_AS(Field(6), NotPrimePowerError);
  CHECK_THROWS_WITH_AS(Field(6), "q = 6 is not a prime power",
                       NotPrimePowerError);
  CHECK_THROWS_AS(Field(10), NotPrimePowerError);
  CHECK_THROWS_AS(Field(1), NotPrimePowerError);
  CHECK_THROWS_AS(Field(0), NotPrimePowerError);
  CHECK_THROWS_AS(Field(32), FieldCapError);   // above default cap
  CHECK_NOTHROW(Field(32, 64));                // raised cap admits it
  CHECK_THROWS_AS(Field(17, 16), FieldCapError);
}

TEST_CASE("defining moduli are the lexicographically smallest irreducibles") {
  // Independent oracle: enumerate all monic irreducibles of the right degree
  // (irreducibility = no monic divisor of degree 1..k/2, checked by long
  // division over the constructed prime field) and take the minimum under
  // low-degree-first lexicographic comparison of coefficient sequences.
  auto smallest = [](std::uint32_t p, std::uint32_t k) {
    Field fp(p);
    auto divides = [&](const std::vector<std::uint32_t>& g,
                       const std::vector<std::uint32_t>& f) {
      std::vector<std::uint32_t> r = f;
      while (r.size() >= g.size()) {
        const std::uint32_t lead = r.back();
        if (lead != 0) {
          const std::size_t shift = r.size() - g.size();
          for (std::size_t i = 0; i < g.size(); ++i)
            r[shift + i] = fp.sub(r[shift + i], fp.mul(lead, g[i]));
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        if (r.empty()) return true;
      }
      return r.empty();
    };
    std::vector<std::vector<std::uint32_t>> irreducibles;
    for (std::uint64_t m = 0; m < big_pow(Bigint(p), k); ++m) {
      std::vector<std::uint32_t> f(k + 1, 0);
      std::uint64_t t = m;
      for (std::uint32_t i = 0; i < k; ++i) {
        f[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      f[k] = 1;
      bool irred = true;
      for (std::uint32_t e = 1; 2 * e <= k && irred; ++e) {
        for (std::uint64_t gm = 0; gm < big_pow(Bigint(p), e) && irred; ++gm) {
          std::vector<std::uint32_t> g(e + 1, 0);
          std::uint64_t gt = gm;
          for (std::uint32_t i = 0; i < e; ++i) {
            g[i] = static_cast<std::uint32_t>(gt % p);
            gt /= p;
          }
          g[e] = 1;
          if (divides(g, f)) irred = false;
        }
      }
      if (irred) irreducibles.push_back(f);
    }
    return *std::min_element(irreducibles.begin(), irreducibles.end());
  };

  CHECK(Field(4).modulus() == smallest(2, 2));
  CHECK(Field(8).modulus() == smallest(2, 3));
  CHECK(Field(16).modulus() == smallest(2, 4));
  CHECK(Field(9).modulus() == smallest(3, 2));

  // Frozen values from the oracle above.
  CHECK(Field(4).modulus() == std::vector<std::uint32_t>{1, 1, 1});      // x^2+x+1
  CHECK(Field(8).modulus() == std::vector<std::uint32_t>{1, 0, 1, 1});   // x^3+x^2+1
  CHECK(Field(16).modulus() == std::vector<std::uint32_t>{1, 0, 0, 1, 1});  // x^4+x^3+1
  CHECK(Field(9).modulus() == std::vector<std::uint32_t>{1, 0, 1});      // x^2+1
  CHECK(Field(2).modulus().empty());
  CHECK(Field(5).modulus().empty());
}

TEST_CASE("element enumeration starts with 0 and 1") {
  for (std::uint32_t q : kPrimePowers) {
    Field f(q);
    CHECK(f.zero() == 0);
    CHECK(f.one() == 1);
    CHECK(f.add(0, 1) == 1);
    CHECK(f.mul(1, 1) == 1);
    // index = sum of digit_i * p^i, so indices 0..p-1 are the prime subfield
    for (std::uint32_t a = 0; a < f.characteristic(); ++a) {
      CHECK(f.coeffs_of(a)[0] == a);
      for (std::uint32_t i = 1; i < f.extension_degree(); ++i) {
        CHECK(f.coeffs_of(a)[i] == 0);
      }
    }
  }
}

TEST_CASE("small-field arithmetic spot checks") {
  Field f3(3);
  CHECK(f3.mul(2, 2) == 1);  // 4 mod 3
  Field f5(5);
  CHECK(f5.inv(2) == 3);     // 2*3 = 6 = 1
  Field f4(4);
  // g = x has index 2; x*x = x^2 = x+1 (index 3) modulo x^2+x+1
  const std::uint32_t g = f4.from_coeffs({0, 1});
  CHECK(g == 2);
  CHECK(f4.mul(g, g) == f4.from_coeffs({1, 1}));
  CHECK(f4.mul(g, g) == f4.add(g, 1));
}

TEST_CASE("field axioms hold exhaustively on small fields") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    Field f(q);
    for (std::uint32_t a = 0; a < q; ++a) {
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
      for (std::uint32_t b = 0; b < q; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        for (std::uint32_t c = 0; c < q; ++c) {
          CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
          CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("frobenius and multiplicative group order, exhaustive to q=16") {
  for (std::uint32_t q : kPrimePowers) {
    Field f(q);
    for (std::uint32_t a = 0; a < q; ++a) {
      CHECK(f.pow(a, q) == a);
      if (a != 0) CHECK(f.pow(a, q - 1) == 1);
    }
  }
}

TEST_CASE("division by zero raises") {
  Field f(4);
  CHECK_THROWS_AS(f.inv(0), std::domain_error);
  CHECK_THROWS_AS(f.div(3, 0), std::domain_error);
  CHECK(f.div(3, 3) == 1);
}

TEST_CASE("element indices are validated") {
  Field f(4);
  CHECK_THROWS_AS(f.add(4, 0), std::invalid_argument);
  CHECK_THROWS_AS(f.mul(0, 7), std::invalid_argument);
}

TEST_CASE("element names and description") {
  Field f4(4);
  CHECK(f4.element_name(0) == "0");
  CHECK(f4.element_name(1) == "1");
  CHECK(f4.element_name(2) == "x");
  CHECK(f4.element_name(3) == "x + 1");
  CHECK(f4.describe() == "F_4: characteristic 2, degree 2, modulus x^2 + x + 1");
  Field f7(7);
  CHECK(f7.element_name(5) == "5");
  CHECK(f7.describe() == "F_7: characteristic 7, degree 1");
}

TEST_CASE("distinct elements decode to distinct coefficient tuples") {
  for (std::uint32_t q : kPrimePowers) {
    Field f(q);
    std::set<std::vector<std::uint32_t>> seen;
    for (std::uint32_t a = 0; a < q; ++a) {
      auto c = f.coeffs_of(a);
      CHECK(f.from_coeffs(c) == a);
      seen.insert(c);
    }
    CHECK(seen.size() == q);
  }
}
