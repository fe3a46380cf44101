#include "fbpir/gf.hpp"

#include <algorithm>
#include <string>

#include "fbpir/errors.hpp"

namespace fbpir {

namespace {

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
  // p is prime and small, so Fermat is fine.
  std::uint64_t r = 1, b = a % p;
  for (std::uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

// Remainder of a modulo b over GF(p); b nonzero.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint32_t lead_inv = inv_mod_p(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t factor = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i < b.size(); ++i) {
      const std::uint64_t sub = factor * b[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

// Digits of n in base p, exactly `len` of them.
Poly digits(std::uint64_t n, std::uint32_t p, std::size_t len) {
  Poly d(len, 0);
  for (std::size_t i = 0; i < len; ++i) {
    d[i] = static_cast<std::uint32_t>(n % p);
    n /= p;
  }
  return d;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t n) {
  if (n < 2) return std::nullopt;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = n;
  std::uint32_t m = 0;
  while (n % p == 0) {
    n /= p;
    ++m;
  }
  if (n != 1) return std::nullopt;
  return std::make_pair(static_cast<std::uint32_t>(p), m);
}

bool is_irreducible(const std::vector<std::uint32_t>& poly, std::uint32_t p) {
  Poly f = poly;
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t deg = f.size() - 1;
  if (deg == 1) return true;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t c = 0; c < count; ++c) {
      Poly g = digits(c, p, d);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

FieldPtr Field::make(std::uint64_t q, std::uint64_t cap) {
  if (q > cap) throw CapExceeded("field order " + std::to_string(q) + " exceeds cap " + std::to_string(cap));
  auto pm = prime_power(q);
  if (!pm) throw NotPrimePower(std::to_string(q) + " is not a prime power");
  const auto [p, m] = *pm;
  if (m == 1) return FieldPtr(new Field(p, 1, {0, 1}));

  // Constant term is the most significant key, so enumerate with c_0 outermost:
  // index c maps to digits read most-significant-first as (c_0, c_1, ...).
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < m; ++i) count *= p;
  for (std::uint64_t c = 0; c < count; ++c) {
    Poly rev = digits(c, p, m);
    Poly f(rev.rbegin(), rev.rend());
    f.push_back(1);
    if (is_irreducible(f, p)) return FieldPtr(new Field(p, m, std::move(f)));
  }
  throw Error("no irreducible polynomial found");  // unreachable for prime p
}

Field::Field(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus)
    : p_(p), m_(m), q_(1), modulus_(std::move(modulus)) {
  for (std::uint32_t i = 0; i < m_; ++i) q_ *= p_;
  if (q_ <= kTableThreshold) {
    const std::size_t qq = static_cast<std::size_t>(q_) * q_;
    std::vector<Element> add(qq), mul(qq), neg(q_), inv(q_, 0);
    for (Element a = 0; a < q_; ++a) {
      neg[a] = neg_slow(a);
      for (Element b = 0; b < q_; ++b) {
        add[a * q_ + b] = add_slow(a, b);
        mul[a * q_ + b] = mul_slow(a, b);
      }
    }
    for (Element a = 1; a < q_; ++a)
      for (Element b = 1; b < q_; ++b)
        if (mul[a * q_ + b] == 1) inv[a] = b;
    add_ = std::move(add);
    mul_ = std::move(mul);
    neg_ = std::move(neg);
    inv_ = std::move(inv);
  }
}

Element Field::add_slow(Element a, Element b) const {
  if (p_ == 2) return a ^ b;
  Element r = 0, scale = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    r += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

Element Field::neg_slow(Element a) const {
  if (p_ == 2) return a;
  Element r = 0, scale = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    r += ((p_ - a % p_) % p_) * scale;
    a /= p_;
    scale *= p_;
  }
  return r;
}

Element Field::mul_slow(Element a, Element b) const {
  if (m_ == 1) return static_cast<Element>(static_cast<std::uint64_t>(a) * b % p_);
  Poly pa = digits(a, p_, m_), pb = digits(b, p_, m_);
  Poly prod(2 * m_ - 1, 0);
  for (std::uint32_t i = 0; i < m_; ++i)
    for (std::uint32_t j = 0; j < m_; ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(pa[i]) * pb[j]) % p_);
  Poly r = poly_mod(std::move(prod), modulus_, p_);
  Element out = 0, scale = 1;
  for (std::size_t i = 0; i < r.size(); ++i) {
    out += r[i] * scale;
    scale *= p_;
  }
  return out;
}

Element Field::inv(Element a) const {
  if (a == 0) throw DivisionByZero("inverse of zero in GF(" + std::to_string(q_) + ")");
  if (has_tables()) return inv_[a];
  return pow(a, q_ - 2);
}

Element Field::pow(Element a, std::uint64_t e) const {
  Element r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Element Field::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Element>(r);
}

std::vector<Element> Field::elements() const {
  std::vector<Element> out(q_);
  for (Element a = 0; a < q_; ++a) out[a] = a;
  return out;
}

}  // namespace fbpir
