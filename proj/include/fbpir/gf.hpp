#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace fbpir {

/// Canonical index of a field element: the polynomial-basis coordinates
/// written as base-p digits (digit i is the coefficient of x^i).
using Element = std::uint32_t;

inline constexpr std::uint64_t kDefaultFieldCap = 1u << 16;
inline constexpr std::uint32_t kTableThreshold = 256;

/// If n = p^m with p prime and m >= 1, returns {p, m}.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t n);

bool is_prime(std::uint64_t n);

/// GF(q), q = p^m, in polynomial basis over GF(p) modulo the
/// lexicographically smallest monic irreducible of degree m (constant term
/// compared first). Immutable; share through FieldPtr.
class Field {
 public:
  static std::shared_ptr<const Field> make(std::uint64_t q, std::uint64_t cap = kDefaultFieldCap);

  std::uint32_t p() const { return p_; }
  std::uint32_t m() const { return m_; }
  std::uint32_t q() const { return q_; }
  /// m+1 coefficients, constant term first. For m = 1 this is {0, 1}.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  bool has_tables() const { return !add_.empty(); }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  /// Class of x in GF(p)[x]/(modulus); equals one() when m = 1.
  Element generator_x() const { return m_ == 1 ? 1 : p_; }

  Element add(Element a, Element b) const {
    return has_tables() ? add_[a * q_ + b] : add_slow(a, b);
  }
  Element mul(Element a, Element b) const {
    return has_tables() ? mul_[a * q_ + b] : mul_slow(a, b);
  }
  Element neg(Element a) const { return has_tables() ? neg_[a] : neg_slow(a); }
  Element sub(Element a, Element b) const { return add(a, neg(b)); }
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  Element pow(Element a, std::uint64_t e) const;

  /// Image of an integer under Z -> GF(p) -> GF(q).
  Element from_int(std::int64_t v) const;

  /// All q elements in index order.
  std::vector<Element> elements() const;

  bool contains(Element a) const { return a < q_; }

  bool operator==(const Field& o) const { return q_ == o.q_ && modulus_ == o.modulus_; }

 private:
  Field(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus);

  Element add_slow(Element a, Element b) const;
  Element neg_slow(Element a) const;
  Element mul_slow(Element a, Element b) const;

  std::uint32_t p_;
  std::uint32_t m_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<Element> add_;
  std::vector<Element> mul_;
  std::vector<Element> neg_;
  std::vector<Element> inv_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// Convenience wrapper matching the CLI name.
inline FieldPtr field_new(std::uint64_t q, std::uint64_t cap = kDefaultFieldCap) {
  return Field::make(q, cap);
}

/// True iff the monic polynomial (constant term first) is irreducible over
/// GF(p), by trial division against every monic polynomial of degree <= deg/2.
bool is_irreducible(const std::vector<std::uint32_t>& poly, std::uint32_t p);

}  // namespace fbpir
