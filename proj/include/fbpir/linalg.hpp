#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fbpir/gf.hpp"

namespace fbpir {

/// Coordinates of a vector in GF(q)^k.
using Vector = std::vector<Element>;

/// Nonzero vector whose first nonzero coordinate is one.
struct ProjectivePoint {
  Vector rep;

  auto operator<=>(const ProjectivePoint&) const = default;
  bool operator==(const ProjectivePoint&) const = default;
};

/// Generator-matrix column multiset. Columns are kept in the order they were
/// given; canonical_columns() gives the order-free form.
class MatrixFq {
 public:
  /// Throws ZeroColumn if any column is zero and DimensionMismatch if a
  /// column does not have k coordinates in [0, q).
  MatrixFq(FieldPtr field, std::size_t k, std::vector<Vector> columns);

  /// k x n identity.
  static MatrixFq identity(FieldPtr field, std::size_t k);

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  std::size_t k() const { return k_; }
  std::size_t n() const { return columns_.size(); }
  const std::vector<Vector>& columns() const { return columns_; }
  const Vector& column(std::size_t i) const { return columns_[i]; }

  /// Columns sorted by (projective point, scalar).
  std::vector<Vector> canonical_columns() const;

  /// New matrix with an extra column appended.
  MatrixFq with_column(Vector col) const;

 private:
  FieldPtr field_;
  std::size_t k_;
  std::vector<Vector> columns_;
};

// Vector arithmetic over a field.
Vector vec_add(const Field& f, std::span<const Element> a, std::span<const Element> b);
Vector vec_scale(const Field& f, Element alpha, std::span<const Element> a);
bool is_zero(std::span<const Element> v);
Vector unit_vector(std::size_t k, std::size_t i);

/// Rank by Gaussian elimination.
std::size_t rank(const Field& f, std::span<const Vector> vectors);
std::size_t rank(const MatrixFq& m);

/// Coefficients c with sum_j c_j * cols[j] == v, from the reduced row echelon
/// form with free variables set to zero. Empty optional if v is not in the span.
std::optional<std::vector<Element>> in_span(const Field& f, std::span<const Element> v,
                                            std::span<const Vector> cols);

/// Scale v so that its first nonzero coordinate is one. Throws ZeroVector.
ProjectivePoint projective_canonical(const Field& f, std::span<const Element> v);

/// The scalar lambda with v == lambda * projective_canonical(v).rep.
Element projective_scalar(const Field& f, std::span<const Element> v);

/// Points of PG(k-1, q) in lexicographic order of their representatives.
std::vector<ProjectivePoint> enumerate_projective_points(std::size_t k, const Field& f);

/// Result of re-expressing a matrix over a subfield.
struct SubfieldExpansion {
  MatrixFq matrix;
  std::size_t dropped;  // zero coefficient columns removed
};

/// Writes every column of m (over GF(p^s2)) as s2/s1 coefficient columns over
/// the subfield GF(p^s1) in the basis 1, x, x^2, ... of the big field.
/// Throws IncompatibleDegrees unless the characteristics agree and s1 | s2.
SubfieldExpansion expand_over_subfield(const MatrixFq& m, const FieldPtr& subfield);

/// Maps every element of `big` to its coordinates over `sub` in the basis
/// 1, x, ..., x^(d-1). Entry y holds d subfield elements.
std::vector<std::vector<Element>> subfield_coordinates(const Field& big, const Field& sub);

/// Embedding of `sub` into `big` (index -> index). Throws IncompatibleDegrees.
std::vector<Element> subfield_embedding(const Field& big, const Field& sub);

/// GF(q)^k with vectors packed into integers (first coordinate most
/// significant), so that numeric order is lexicographic order. Used by the
/// search hot paths.
class PackedSpace {
 public:
  using Packed = std::uint32_t;
  static constexpr std::uint64_t kMaxSize = 1u << 22;

  PackedSpace(FieldPtr field, std::size_t k);

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  std::size_t k() const { return k_; }
  std::uint32_t size() const { return size_; }
  std::uint32_t num_points() const { return static_cast<std::uint32_t>(point_reps_.size()); }

  Packed encode(std::span<const Element> v) const;
  Vector decode(Packed v) const;

  Packed add(Packed a, Packed b) const {
    if (xor_add_) return a ^ b;
    if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * size_ + b];
    return add_slow(a, b);
  }
  Packed scale(Element alpha, Packed a) const {
    if (!scale_table_.empty()) return scale_table_[static_cast<std::size_t>(alpha) * size_ + a];
    return scale_slow(alpha, a);
  }
  Packed neg(Packed a) const { return xor_add_ ? a : scale(field_->neg(1), a); }
  Packed sub(Packed a, Packed b) const { return add(a, neg(b)); }

  /// Index of the projective point of a nonzero packed vector, -1 for zero.
  std::int32_t point_of(Packed v) const { return point_index_[v]; }
  /// lambda with v == lambda * rep(point_of(v)).
  Element scalar_of(Packed v) const { return point_scalar_[v]; }
  Packed point_rep(std::uint32_t point) const { return point_reps_[point]; }

 private:
  Packed add_slow(Packed a, Packed b) const;
  Packed scale_slow(Element alpha, Packed a) const;

  FieldPtr field_;
  std::size_t k_;
  std::uint32_t size_;
  bool xor_add_;
  std::vector<Packed> add_table_;
  std::vector<Packed> scale_table_;
  std::vector<std::int32_t> point_index_;
  std::vector<Element> point_scalar_;
  std::vector<Packed> point_reps_;
};

}  // namespace fbpir
