#include "doctest.h"

#include <random>
#include <set>

#include "fbpir/errors.hpp"
#include "fbpir/gf.hpp"

using namespace fbpir;

namespace {

// Reference polynomial arithmetic over GF(p): coefficient vectors, constant
// term first. Used to rebuild products independently of the field tables.
std::vector<std::uint32_t> digits(Element a, std::uint32_t p, std::uint32_t m) {
  std::vector<std::uint32_t> d(m);
  for (auto& x : d) {
    x = a % p;
    a /= p;
  }
  return d;
}

Element undigits(const std::vector<std::uint32_t>& d, std::uint32_t p) {
  Element v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
  return v;
}

Element ref_mul(Element a, Element b, std::uint32_t p, const std::vector<std::uint32_t>& modulus) {
  const auto m = static_cast<std::uint32_t>(modulus.size() - 1);
  auto da = digits(a, p, m), db = digits(b, p, m);
  std::vector<std::uint32_t> prod(2 * m, 0);
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
  for (std::size_t d = prod.size(); d-- > m;) {
    const auto c = prod[d];
    if (!c) continue;
    for (std::uint32_t i = 0; i <= m; ++i) prod[d - m + i] = (prod[d - m + i] + p * p - c * modulus[i] % p) % p;
  }
  prod.resize(m);
  return undigits(prod, p);
}

}  // namespace

TEST_CASE("prime power detection") {
  CHECK(prime_power(2) == std::make_pair(2u, 1u));
  CHECK(prime_power(9) == std::make_pair(3u, 2u));
  CHECK(prime_power(64) == std::make_pair(2u, 6u));
  CHECK_FALSE(prime_power(6));
  CHECK_FALSE(prime_power(1));
  CHECK_FALSE(prime_power(12));
}

TEST_CASE("field_new examples") {
  auto f5 = field_new(5);
  CHECK(f5->mul(2, 3) == 1);

  auto f4 = field_new(4);
  CHECK(f4->modulus() == std::vector<std::uint32_t>{1, 1, 1});
  const Element a = f4->generator_x();
  CHECK(f4->mul(a, a) == f4->add(a, 1));
  CHECK(f4->add(a, a) == 0);

  CHECK_THROWS_AS(field_new(6), NotPrimePower);
  CHECK_THROWS_AS(field_new(1 << 17), CapExceeded);
  CHECK_NOTHROW(field_new(1 << 17, 1 << 20));

  auto f2 = field_new(2);
  CHECK(f2->add(1, 1) == 0);
  CHECK(f2->elements() == std::vector<Element>{0, 1});
  CHECK(field_new(3)->elements() == std::vector<Element>{0, 1, 2});

  auto f9 = field_new(9);
  CHECK(f9->inv(2) == 2);
  CHECK(f9->modulus() == std::vector<std::uint32_t>{1, 0, 1});  // x^2 + 1

  CHECK_THROWS_AS(f5->inv(0), DivisionByZero);
  CHECK_THROWS_AS(f5->div(1, 0), DivisionByZero);
}

TEST_CASE("moduli are the smallest irreducible polynomials") {
  for (std::uint64_t q : {4, 8, 9, 16, 25, 27, 32, 49, 64, 81, 125, 128, 256, 243, 729, 1024}) {
    auto f = field_new(q);
    CAPTURE(q);
    CHECK(is_irreducible(f->modulus(), f->p()));
    // Every monic degree-m polynomial that precedes it (constant term
    // compared first) is reducible.
    const auto m = f->m();
    const auto p = f->p();
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < m; ++i) count *= p;
    std::vector<std::uint32_t> mod_low(f->modulus().begin(), f->modulus().end() - 1);
    for (std::uint64_t c = 0; c < count; ++c) {
      std::vector<std::uint32_t> poly(m + 1, 0);
      auto x = c;
      for (std::uint32_t i = 0; i < m; ++i) {
        poly[i] = x % p;
        x /= p;
      }
      poly[m] = 1;
      std::vector<std::uint32_t> low(poly.begin(), poly.end() - 1);
      if (low == mod_low) break;
      if (std::lexicographical_compare(low.begin(), low.end(), mod_low.begin(), mod_low.end()))
        CHECK_FALSE(is_irreducible(poly, p));
    }
  }
}

TEST_CASE("field axioms hold exhaustively for small q") {
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}) {
    auto f = field_new(q);
    CAPTURE(q);
    bool ok = true;
    for (Element a = 0; a < q; ++a) {
      ok &= f->add(a, 0) == a && f->mul(a, 1) == a && f->add(a, f->neg(a)) == 0;
      if (a) ok &= f->mul(a, f->inv(a)) == 1;
      for (Element b = 0; b < q; ++b) {
        ok &= f->add(a, b) == f->add(b, a) && f->mul(a, b) == f->mul(b, a);
        ok &= f->sub(f->add(a, b), b) == a;
        for (Element c = 0; c < q; ++c) {
          ok &= f->add(f->add(a, b), c) == f->add(a, f->add(b, c));
          ok &= f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c));
          ok &= f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c));
        }
      }
    }
    CHECK(ok);
  }
}

TEST_CASE("field axioms on sampled triples for 16 < q <= 64") {
  std::mt19937_64 rng(7);
  for (std::uint64_t q : {17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49, 53, 59, 61, 64}) {
    auto f = field_new(q);
    CAPTURE(q);
    std::uniform_int_distribution<Element> d(0, static_cast<Element>(q - 1));
    bool ok = true;
    for (Element a = 0; a < q; ++a)
      for (Element b = 0; b < q; ++b) {
        ok &= f->add(a, b) == f->add(b, a) && f->mul(a, b) == f->mul(b, a);
        if (b) ok &= f->mul(f->div(a, b), b) == a;
      }
    for (int i = 0; i < 10000; ++i) {
      const auto a = d(rng), b = d(rng), c = d(rng);
      ok &= f->add(f->add(a, b), c) == f->add(a, f->add(b, c));
      ok &= f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c));
      ok &= f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c));
    }
    CHECK(ok);
  }
}

TEST_CASE("multiplication matches reference polynomial arithmetic") {
  for (std::uint64_t q : {4, 8, 9, 27, 32, 81}) {
    auto f = field_new(q);
    CAPTURE(q);
    bool ok = true;
    for (Element a = 0; a < q; ++a)
      for (Element b = 0; b < q; ++b) ok &= f->mul(a, b) == ref_mul(a, b, f->p(), f->modulus());
    CHECK(ok);
  }
}

TEST_CASE("nonzero elements form a cyclic group of order q-1") {
  for (std::uint64_t q : {2, 3, 4, 5, 8, 9, 16, 25, 49, 64, 128, 256}) {
    auto f = field_new(q);
    CAPTURE(q);
    bool found_generator = false;
    for (Element g = 1; g < q && !found_generator; ++g) {
      std::set<Element> seen;
      Element x = 1;
      for (std::uint64_t i = 0; i < q - 1; ++i) {
        seen.insert(x);
        x = f->mul(x, g);
      }
      found_generator = seen.size() == q - 1;
    }
    CHECK(found_generator);
  }
}

TEST_CASE("Frobenius fixes every element") {
  for (std::uint64_t q : {2, 3, 4, 8, 9, 16, 25, 27, 32, 64, 81, 121, 125, 128, 243, 256}) {
    auto f = field_new(q);
    CAPTURE(q);
    bool ok = true;
    for (Element x = 0; x < q; ++x) ok &= f->pow(x, q) == x;
    CHECK(ok);
  }
}

TEST_CASE("large fields compute without tables") {
  auto f = field_new(1024);
  CHECK_FALSE(f->has_tables());
  std::mt19937 rng(3);
  std::uniform_int_distribution<Element> d(1, 1023);
  for (int i = 0; i < 2000; ++i) {
    const auto a = d(rng), b = d(rng);
    CHECK(f->mul(f->div(a, b), b) == a);
  }
  auto big = field_new(65521);
  CHECK(big->mul(big->inv(12345), 12345) == 1);
  CHECK(big->pow(7, 65521) == 7);
}

TEST_CASE("field_new is deterministic") {
  for (std::uint64_t q : {16, 27, 125}) {
    auto a = field_new(q), b = field_new(q);
    CHECK(a->modulus() == b->modulus());
    bool same = true;
    for (Element x = 0; x < q; ++x)
      for (Element y = 0; y < q; ++y) same &= a->mul(x, y) == b->mul(x, y) && a->add(x, y) == b->add(x, y);
    CHECK(same);
  }
}

TEST_CASE("from_int reduces into the prime subfield") {
  auto f = field_new(9);
  CHECK(f->from_int(2) == 2);
  CHECK(f->from_int(3) == 0);
  CHECK(f->from_int(-1) == 2);
}
