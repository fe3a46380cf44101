#include "fbpir/linalg.hpp"

#include <algorithm>
#include <string>

#include "fbpir/errors.hpp"

namespace fbpir {

MatrixFq::MatrixFq(FieldPtr field, std::size_t k, std::vector<Vector> columns)
    : field_(std::move(field)), k_(k), columns_(std::move(columns)) {
  if (!field_) throw InvalidInput("matrix without a field");
  if (k_ == 0) throw DimensionMismatch("matrix dimension k must be at least 1");
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    const auto& c = columns_[j];
    if (c.size() != k_)
      throw DimensionMismatch("column " + std::to_string(j + 1) + " has " + std::to_string(c.size()) +
                              " coordinates, expected " + std::to_string(k_));
    for (Element e : c)
      if (!field_->contains(e))
        throw DimensionMismatch("column " + std::to_string(j + 1) + " has an entry outside GF(" +
                                std::to_string(field_->q()) + ")");
    if (is_zero(c)) throw ZeroColumn("column " + std::to_string(j + 1) + " is zero");
  }
}

MatrixFq MatrixFq::identity(FieldPtr field, std::size_t k) {
  std::vector<Vector> cols;
  for (std::size_t i = 0; i < k; ++i) cols.push_back(unit_vector(k, i));
  return MatrixFq(std::move(field), k, std::move(cols));
}

std::vector<Vector> MatrixFq::canonical_columns() const {
  std::vector<std::pair<ProjectivePoint, Element>> keyed;
  keyed.reserve(columns_.size());
  for (const auto& c : columns_) keyed.emplace_back(projective_canonical(*field_, c), projective_scalar(*field_, c));
  std::vector<std::size_t> order(columns_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keyed[a] < keyed[b]; });
  std::vector<Vector> out;
  out.reserve(order.size());
  for (std::size_t i : order) out.push_back(columns_[i]);
  return out;
}

MatrixFq MatrixFq::with_column(Vector col) const {
  auto cols = columns_;
  cols.push_back(std::move(col));
  return MatrixFq(field_, k_, std::move(cols));
}

Vector vec_add(const Field& f, std::span<const Element> a, std::span<const Element> b) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
  return r;
}

Vector vec_scale(const Field& f, Element alpha, std::span<const Element> a) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.mul(alpha, a[i]);
  return r;
}

bool is_zero(std::span<const Element> v) {
  return std::all_of(v.begin(), v.end(), [](Element e) { return e == 0; });
}

Vector unit_vector(std::size_t k, std::size_t i) {
  Vector v(k, 0);
  v[i] = 1;
  return v;
}

namespace {

// Row-reduces `rows` in place (rows x width, reduced row echelon form over the
// first `ncols` columns) and returns the pivot column of each pivot row.
std::vector<std::size_t> rref(const Field& f, std::vector<Vector>& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const Element inv = f.inv(rows[r][c]);
    for (auto& e : rows[r]) e = f.mul(e, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Element factor = rows[i][c];
      for (std::size_t j = 0; j < rows[i].size(); ++j) rows[i][j] = f.sub(rows[i][j], f.mul(factor, rows[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const Field& f, std::span<const Vector> vectors) {
  if (vectors.empty()) return 0;
  std::vector<Vector> rows(vectors.begin(), vectors.end());
  return rref(f, rows, rows.front().size()).size();
}

std::size_t rank(const MatrixFq& m) { return rank(m.field(), m.columns()); }

std::optional<std::vector<Element>> in_span(const Field& f, std::span<const Element> v,
                                            std::span<const Vector> cols) {
  const std::size_t k = v.size();
  const std::size_t s = cols.size();
  for (const auto& c : cols)
    if (c.size() != k) throw DimensionMismatch("in_span: column and target differ in dimension");
  // Augmented system: k equations, s unknowns.
  std::vector<Vector> rows(k, Vector(s + 1, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < s; ++j) rows[i][j] = cols[j][i];
    rows[i][s] = v[i];
  }
  const auto pivots = rref(f, rows, s);
  for (std::size_t i = pivots.size(); i < k; ++i)
    if (rows[i][s] != 0) return std::nullopt;
  std::vector<Element> coeffs(s, 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) coeffs[pivots[r]] = rows[r][s];
  return coeffs;
}

ProjectivePoint projective_canonical(const Field& f, std::span<const Element> v) {
  const Element lambda = projective_scalar(f, v);
  return ProjectivePoint{vec_scale(f, f.inv(lambda), v)};
}

Element projective_scalar(const Field& f, std::span<const Element> v) {
  (void)f;
  for (Element e : v)
    if (e != 0) return e;
  throw ZeroVector("zero vector has no projective point");
}

std::vector<ProjectivePoint> enumerate_projective_points(std::size_t k, const Field& f) {
  if (k == 0) throw InvalidInput("dimension must be at least 1");
  std::vector<ProjectivePoint> out;
  // Lexicographic order: first nonzero position descends from the last
  // coordinate, and the free tail is counted up in base q.
  for (std::size_t lead = k; lead-- > 0;) {
    const std::size_t tail = k - lead - 1;
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < tail; ++i) count *= f.q();
    for (std::uint64_t c = 0; c < count; ++c) {
      Vector v(k, 0);
      v[lead] = 1;
      std::uint64_t x = c;
      for (std::size_t i = k; i-- > lead + 1;) {
        v[i] = static_cast<Element>(x % f.q());
        x /= f.q();
      }
      out.push_back(ProjectivePoint{std::move(v)});
    }
  }
  return out;
}

std::vector<Element> subfield_embedding(const Field& big, const Field& sub) {
  if (big.p() != sub.p() || big.m() % sub.m() != 0)
    throw IncompatibleDegrees("GF(" + std::to_string(sub.q()) + ") is not a subfield of GF(" +
                              std::to_string(big.q()) + ")");
  std::vector<Element> emb(sub.q());
  if (sub.m() == 1) {
    for (Element a = 0; a < sub.q(); ++a) emb[a] = a;
    return emb;
  }
  // Smallest root of the subfield modulus inside the big field.
  const auto& mod = sub.modulus();
  Element root = 0;
  bool found = false;
  for (Element r = 0; r < big.q() && !found; ++r) {
    Element acc = 0;
    for (std::size_t i = mod.size(); i-- > 0;) acc = big.add(big.mul(acc, r), big.from_int(mod[i]));
    if (acc == 0) {
      root = r;
      found = true;
    }
  }
  if (!found) throw IncompatibleDegrees("subfield modulus has no root in the big field");
  for (Element a = 0; a < sub.q(); ++a) {
    Element acc = 0, power = 1, x = a;
    for (std::uint32_t i = 0; i < sub.m(); ++i) {
      acc = big.add(acc, big.mul(big.from_int(x % sub.p()), power));
      x /= sub.p();
      power = big.mul(power, root);
    }
    emb[a] = acc;
  }
  return emb;
}

std::vector<std::vector<Element>> subfield_coordinates(const Field& big, const Field& sub) {
  const auto emb = subfield_embedding(big, sub);
  const std::uint32_t d = big.m() / sub.m();
  std::vector<Element> basis(d);
  Element power = 1;
  for (std::uint32_t j = 0; j < d; ++j) {
    basis[j] = power;
    power = big.mul(power, big.generator_x());
  }
  std::vector<std::vector<Element>> coords(big.q());
  std::vector<bool> seen(big.q(), false);
  std::vector<Element> c(d, 0);
  for (std::uint64_t idx = 0; idx < big.q(); ++idx) {
    std::uint64_t x = idx;
    Element y = 0;
    for (std::uint32_t j = 0; j < d; ++j) {
      c[j] = static_cast<Element>(x % sub.q());
      x /= sub.q();
      y = big.add(y, big.mul(emb[c[j]], basis[j]));
    }
    if (seen[y]) throw IncompatibleDegrees("powers of x do not form a basis over the subfield");
    seen[y] = true;
    coords[y] = c;
  }
  return coords;
}

SubfieldExpansion expand_over_subfield(const MatrixFq& m, const FieldPtr& subfield) {
  const auto coords = subfield_coordinates(m.field(), *subfield);
  const std::uint32_t d = m.field().m() / subfield->m();
  std::vector<Vector> out;
  std::size_t dropped = 0;
  for (const auto& col : m.columns()) {
    for (std::uint32_t j = 0; j < d; ++j) {
      Vector c(m.k());
      for (std::size_t i = 0; i < m.k(); ++i) c[i] = coords[col[i]][j];
      if (is_zero(c))
        ++dropped;
      else
        out.push_back(std::move(c));
    }
  }
  return SubfieldExpansion{MatrixFq(subfield, m.k(), std::move(out)), dropped};
}

PackedSpace::PackedSpace(FieldPtr field, std::size_t k) : field_(std::move(field)), k_(k), size_(1) {
  if (k_ == 0) throw InvalidInput("dimension must be at least 1");
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < k_; ++i) {
    size *= field_->q();
    if (size > kMaxSize)
      throw InstanceTooLarge("GF(" + std::to_string(field_->q()) + ")^" + std::to_string(k_) + " is too large to pack");
  }
  size_ = static_cast<std::uint32_t>(size);
  xor_add_ = field_->p() == 2;
  const std::uint32_t q = field_->q();
  if (!xor_add_ && size_ <= 1024) {
    add_table_.resize(static_cast<std::size_t>(size_) * size_);
    for (Packed a = 0; a < size_; ++a)
      for (Packed b = 0; b < size_; ++b) add_table_[static_cast<std::size_t>(a) * size_ + b] = add_slow(a, b);
  }
  if (static_cast<std::uint64_t>(q) * size_ <= (1u << 20)) {
    scale_table_.resize(static_cast<std::size_t>(q) * size_);
    for (Element alpha = 0; alpha < q; ++alpha)
      for (Packed a = 0; a < size_; ++a) scale_table_[static_cast<std::size_t>(alpha) * size_ + a] = scale_slow(alpha, a);
  }
  point_index_.assign(size_, -1);
  point_scalar_.assign(size_, 0);
  for (Packed v = 1; v < size_; ++v) {
    const Vector dv = decode(v);
    Element lead = 0;
    for (Element e : dv)
      if (e != 0) {
        lead = e;
        break;
      }
    if (lead == 1) {
      point_index_[v] = static_cast<std::int32_t>(point_reps_.size());
      point_reps_.push_back(v);
    }
  }
  for (std::uint32_t pt = 0; pt < point_reps_.size(); ++pt) {
    for (Element alpha = 1; alpha < q; ++alpha) {
      const Packed w = scale(alpha, point_reps_[pt]);
      point_index_[w] = static_cast<std::int32_t>(pt);
      point_scalar_[w] = alpha;
    }
  }
}

PackedSpace::Packed PackedSpace::encode(std::span<const Element> v) const {
  if (v.size() != k_) throw DimensionMismatch("vector dimension does not match the packed space");
  Packed r = 0;
  for (Element e : v) r = r * field_->q() + e;
  return r;
}

Vector PackedSpace::decode(Packed v) const {
  Vector out(k_);
  for (std::size_t i = k_; i-- > 0;) {
    out[i] = v % field_->q();
    v /= field_->q();
  }
  return out;
}

PackedSpace::Packed PackedSpace::add_slow(Packed a, Packed b) const {
  if (xor_add_) return a ^ b;
  const std::uint32_t q = field_->q();
  Packed r = 0, place = 1;
  for (std::size_t i = 0; i < k_; ++i) {
    r += field_->add(a % q, b % q) * place;
    a /= q;
    b /= q;
    place *= q;
  }
  return r;
}

PackedSpace::Packed PackedSpace::scale_slow(Element alpha, Packed a) const {
  const std::uint32_t q = field_->q();
  Packed r = 0, place = 1;
  for (std::size_t i = 0; i < k_; ++i) {
    r += field_->mul(alpha, a % q) * place;
    a /= q;
    place *= q;
  }
  return r;
}

}  // namespace fbpir
