#include "fbpir/constructions.hpp"

#include <algorithm>
#include <map>

#include "fbpir/errors.hpp"

namespace fbpir {

std::string to_string(ConstructionName n) {
  switch (n) {
    case ConstructionName::kK2Projective:
      return "K2_PROJECTIVE";
    case ConstructionName::kBinaryT2Even:
      return "BINARY_T2_EVEN";
    case ConstructionName::kBinaryT2Odd:
      return "BINARY_T2_ODD";
    case ConstructionName::kAllNonzeroRepeated:
      return "ALL_NONZERO_REPEATED";
    case ConstructionName::kDoubleAllNonzero:
      return "DOUBLE_ALL_NONZERO";
  }
  return "";
}

ConstructionName parse_construction(const std::string& s) {
  for (auto n : {ConstructionName::kK2Projective, ConstructionName::kBinaryT2Even, ConstructionName::kBinaryT2Odd,
                 ConstructionName::kAllNonzeroRepeated, ConstructionName::kDoubleAllNonzero})
    if (to_string(n) == s) return n;
  throw InvalidInput("unknown construction '" + s + "'");
}

std::vector<Vector> nonzero_vectors(std::size_t k, const Field& f) {
  std::vector<Vector> out;
  Vector v(k, 0);
  while (true) {
    // odometer with the last coordinate fastest gives lexicographic order
    std::size_t i = k;
    while (i > 0 && v[i - 1] == f.q() - 1) v[--i] = 0;
    if (i == 0) break;
    ++v[i - 1];
    out.push_back(v);
  }
  return out;
}

Construction construct_k2(std::size_t t, std::uint32_t q) {
  if (t < 1) throw InvalidInput("t must be at least 1");
  auto field = Field::make(q);
  const auto pts = enumerate_projective_points(2, *field);
  const std::size_t x = t / (q + 2);
  const std::size_t y = t % (q + 2);
  std::vector<Vector> cols;
  for (std::size_t c = 0; c < x; ++c)
    for (int twice = 0; twice < 2; ++twice)
      for (const auto& p : pts) cols.push_back(p.rep);
  const std::size_t tail = (2 * (q + 1) * y + q + 1) / (q + 2);
  for (std::size_t i = 0; i < tail; ++i) cols.push_back(pts[i % pts.size()].rep);
  return Construction{ConstructionName::kK2Projective, 2, t, q, 0, MatrixFq(field, 2, std::move(cols)), t,
                      CodeKind::kFB};
}

Construction construct_binary_t2(std::size_t k) {
  if (k < 2) throw InvalidInput("k must be at least 2");
  auto field = Field::make(2);
  std::vector<Vector> cols;
  for (std::size_t i = 0; i < k; ++i) cols.push_back(unit_vector(k, i));
  const std::size_t m = k / 2;
  const bool odd = k % 2 == 1;
  for (std::size_t i = 0; i < m; ++i) {
    Vector r(k, 0);
    const std::size_t c = odd ? 2 * i + 1 : 2 * i;
    r[c] = r[c + 1] = 1;
    cols.push_back(r);
  }
  if (odd) cols.push_back(unit_vector(k, 0));
  return Construction{odd ? ConstructionName::kBinaryT2Odd : ConstructionName::kBinaryT2Even,
                      k, 2, 2, 0, MatrixFq(field, k, std::move(cols)), 2, CodeKind::kFB};
}

Construction construct_all_nonzero(std::size_t k, std::uint32_t q, std::size_t s) {
  if (k < 1 || s < 1) throw InvalidInput("k and s must be at least 1");
  auto field = Field::make(q);
  const auto nz = nonzero_vectors(k, *field);
  std::vector<Vector> cols;
  for (std::size_t c = 0; c < s; ++c) cols.insert(cols.end(), nz.begin(), nz.end());
  const std::size_t qk = nz.size() + 1;
  return Construction{ConstructionName::kAllNonzeroRepeated, k, 0, q, s, MatrixFq(field, k, std::move(cols)),
                      s * (qk + q - 2) / 2, CodeKind::kFP};
}

Construction construct_double_all_nonzero(std::size_t k, std::uint32_t q) {
  auto c = construct_all_nonzero(k, q, 2);
  c.name = ConstructionName::kDoubleAllNonzero;
  c.s = 2;
  c.claimed_t = c.matrix.n() / 2 + 1;  // q^k
  c.claimed_kind = CodeKind::kFB;
  return c;
}

// ------------------------------------------------------------ binary t = 2

RecoveryPlan plan_binary_t2(std::size_t k, const Vector& a, const Vector& b) {
  if (k < 2) throw InvalidInput("k must be at least 2");
  for (const auto* v : {&a, &b}) {
    if (v->size() != k) throw InvalidInput("request has the wrong length");
    if (std::any_of(v->begin(), v->end(), [](Element e) { return e > 1; })) throw InvalidInput("request is not binary");
    if (is_zero(*v)) throw InvalidInput("requests must be nonzero");
  }
  const bool odd = k % 2 == 1;
  const std::size_t m = k / 2;
  const std::size_t n = k + m + (odd ? 1 : 0);
  std::vector<std::size_t> A, B;

  if (a == b) {
    // The columns sum to zero, so the complement of a's systematic support
    // also sums to a.
    std::vector<bool> in_a(n, false);
    for (std::size_t j = 0; j < k; ++j)
      if (a[j]) {
        A.push_back(j);
        in_a[j] = true;
      }
    for (std::size_t j = 0; j < n; ++j)
      if (!in_a[j]) B.push_back(j);
  } else {
    if (odd) {
      if (a[0]) A.push_back(0);
      if (b[0]) B.push_back(k + m);  // trailing copy of e_1
    }
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t c = odd ? 2 * i + 1 : 2 * i;
      // the block's three columns indexed by the nonzero pattern they carry
      auto col = [&](unsigned pat) -> std::size_t { return pat == 2 ? c : pat == 1 ? c + 1 : k + i; };
      const unsigned x = a[c] * 2 + a[c + 1];
      const unsigned y = b[c] * 2 + b[c + 1];
      if (x == y) {
        if (x == 0) continue;
        A.push_back(col(x));
        for (unsigned other = 1; other <= 3; ++other)
          if (other != x) B.push_back(col(other));
      } else {
        if (x) A.push_back(col(x));
        if (y) B.push_back(col(y));
      }
    }
  }
  std::sort(A.begin(), A.end());
  std::sort(B.begin(), B.end());
  RecoveryPlan plan;
  plan.assignments.push_back(Assignment{ProjectivePoint{a}, A, std::vector<Element>(A.size(), 1), 1});
  plan.assignments.push_back(Assignment{ProjectivePoint{b}, B, std::vector<Element>(B.size(), 1), 1});
  return plan;
}

// ------------------------------------------------------- PIR partitions

RecoveryPlan plan_pir_partition(std::size_t k, std::uint32_t q, const ProjectivePoint& v, std::size_t s) {
  if (s < 1) throw InvalidInput("s must be at least 1");
  auto field = Field::make(q);
  const Field& f = *field;
  if (v.rep.size() != k) throw InvalidInput("request has the wrong length");
  const auto canon = projective_canonical(f, v.rep);
  PackedSpace space(field, k);
  const std::uint32_t per_copy = space.size() - 1;
  const auto pv = space.encode(canon.rep);
  const auto vp = space.point_of(pv);
  const Element two = f.from_int(2);
  const Element half = q % 2 ? f.inv(two) : 0;

  RecoveryPlan plan;
  for (std::size_t c = 0; c < s; ++c) {
    const std::size_t base = c * per_copy;
    auto idx = [&](PackedSpace::Packed w) { return base + w - 1; };
    for (Element alpha = 1; alpha < q; ++alpha)
      plan.assignments.push_back(
          Assignment{canon, {idx(space.scale(alpha, pv))}, {f.inv(alpha)}, 1});
    for (PackedSpace::Packed w = 1; w < space.size(); ++w) {
      if (space.point_of(w) == vp) continue;
      if (q % 2 == 0) {
        const auto partner = space.add(w, pv);
        if (w < partner) plan.assignments.push_back(Assignment{canon, {idx(w), idx(partner)}, {1, 1}, 1});
      } else {
        // w plays v + w'; its partner v - w' is 2v - w
        const auto partner = space.sub(space.scale(two, pv), w);
        if (w < partner) plan.assignments.push_back(Assignment{canon, {idx(w), idx(partner)}, {half, half}, 1});
      }
    }
  }
  return plan;
}

// ------------------------------------------------------------------ Hall

namespace {

class HallSearch {
 public:
  HallSearch(const PackedSpace& space, std::vector<PackedSpace::Packed> a)
      : space_(space), n_(space.size()), a_(std::move(a)), g_(n_, 0), assigned_(n_, false) {}

  bool run() { return extend(0); }
  const std::vector<PackedSpace::Packed>& g() const { return g_; }

 private:
  bool feasible(std::size_t i, PackedSpace::Packed g) const {
    return !((used_g_ >> g) & 1) && !((used_h_ >> space_.add(g, a_[i])) & 1);
  }

  bool extend(std::size_t depth) {
    if (depth == n_) return true;
    std::size_t best = n_;
    std::size_t best_count = n_ + 1;
    for (std::size_t i = 0; i < n_; ++i) {
      if (assigned_[i]) continue;
      std::size_t cnt = 0;
      for (PackedSpace::Packed g = 0; g < n_; ++g) cnt += feasible(i, g);
      if (cnt < best_count) {
        best = i;
        best_count = cnt;
        if (cnt == 0) return false;
      }
    }
    assigned_[best] = true;
    for (PackedSpace::Packed g = 0; g < n_; ++g) {
      if (!feasible(best, g)) continue;
      const auto h = space_.add(g, a_[best]);
      used_g_ |= std::uint64_t{1} << g;
      used_h_ |= std::uint64_t{1} << h;
      g_[best] = g;
      if (extend(depth + 1)) return true;
      used_g_ &= ~(std::uint64_t{1} << g);
      used_h_ &= ~(std::uint64_t{1} << h);
    }
    assigned_[best] = false;
    return false;
  }

  const PackedSpace& space_;
  std::size_t n_;
  std::vector<PackedSpace::Packed> a_;
  std::vector<PackedSpace::Packed> g_;
  std::vector<bool> assigned_;
  std::uint64_t used_g_ = 0;
  std::uint64_t used_h_ = 0;
};

std::vector<PackedSpace::Packed> hall_packed(const PackedSpace& space, const std::vector<PackedSpace::Packed>& a) {
  if (a.size() != space.size())
    throw WrongListSize("list has " + std::to_string(a.size()) + " entries, expected " + std::to_string(space.size()));
  if (space.size() > 64) throw InstanceTooLarge("Hall ordering supports groups of at most 64 elements");
  PackedSpace::Packed sum = 0;
  for (auto x : a) sum = space.add(sum, x);
  if (sum != 0) throw SumNonzero("the list does not sum to zero");
  HallSearch search(space, a);
  if (!search.run()) throw Error("no Hall ordering found for a zero-sum list");
  return search.g();
}

}  // namespace

HallOrdering hall_ordering(std::size_t k, std::uint32_t q, const std::vector<Vector>& a) {
  auto field = Field::make(q);
  PackedSpace space(field, k);
  std::vector<PackedSpace::Packed> pa;
  for (const auto& v : a) {
    if (v.size() != k) throw DimensionMismatch("list entry has the wrong length");
    for (auto e : v)
      if (e >= q) throw InvalidInput("field element out of range");
    pa.push_back(space.encode(v));
  }
  const auto g = hall_packed(space, pa);
  HallOrdering out{k, q, a, {}};
  for (auto x : g) out.g.push_back(space.decode(x));
  return out;
}

// ----------------------------------------------------------- batch double

RecoveryPlan plan_batch_double(std::size_t k, std::uint32_t q, const RequestList& requests) {
  auto field = Field::make(q);
  if (requests.k() != k || !(requests.field() == *field)) throw DimensionMismatch("request list does not match (k, q)");
  PackedSpace space(field, k);
  const std::size_t n = space.size();
  if (requests.total() != n)
    throw WrongListSize("list has " + std::to_string(requests.total()) + " requests, expected " + std::to_string(n));
  if (n > 64) throw InstanceTooLarge("batch-double plans support q^k <= 64");
  const Field& f = *field;
  const Element minus_one = f.neg(1);

  std::vector<PackedSpace::Packed> a;
  for (const auto& v : requests.expanded()) a.push_back(space.encode(v));

  std::vector<int> uses(n, 0);
  const std::size_t per_copy = n - 1;
  auto take = [&](PackedSpace::Packed w) {
    const int c = uses[w]++;
    if (c > 1) throw Error("batch-double plan used a column three times");
    return static_cast<std::size_t>(c) * per_copy + w - 1;
  };
  RecoveryPlan plan;
  // Adds the set {plus, minus} with plus - minus = request; zero drops out.
  auto emit = [&](PackedSpace::Packed request, PackedSpace::Packed plus, PackedSpace::Packed minus) {
    Assignment as{ProjectivePoint{space.decode(request)}, {}, {}, 1};
    if (plus) {
      as.indices.push_back(take(plus));
      as.coefficients.push_back(1);
    }
    if (minus) {
      as.indices.push_back(take(minus));
      as.coefficients.push_back(minus_one);
    }
    plan.assignments.push_back(std::move(as));
  };

  if (std::all_of(a.begin(), a.end(), [&](auto x) { return x == a[0]; })) {
    const auto g = hall_packed(space, a);
    for (std::size_t i = 0; i < n; ++i) emit(a[i], space.add(a[i], g[i]), g[i]);
    return plan;
  }

  if (a[n - 2] == a[n - 1]) {
    for (std::size_t j = 0; j + 2 < n; ++j)
      if (a[j] != a[n - 1]) {
        std::swap(a[j], a[n - 2]);
        break;
      }
  }
  PackedSpace::Packed x = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) x = space.add(x, a[i]);
  if (x == 0) {
    std::swap(a[n - 2], a[n - 1]);
    x = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) x = space.add(x, a[i]);
  }
  std::vector<PackedSpace::Packed> lp(a.begin(), a.end() - 1);
  lp.push_back(space.neg(x));
  const auto g = hall_packed(space, lp);
  const auto c = space.add(space.sub(x, g[n - 1]), a[n - 1]);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const auto low = space.add(g[i], c);
    emit(a[i], space.add(low, a[i]), low);
  }
  emit(a[n - 1], a[n - 1], 0);
  return plan;
}

RecoveryPlan plan_batch_double(const MatrixFq& m, const RequestList& requests) {
  const std::size_t k = m.k();
  const std::uint32_t q = m.field().q();
  auto expect = construct_double_all_nonzero(k, q).matrix.columns();
  auto have = m.columns();
  std::sort(expect.begin(), expect.end());
  std::sort(have.begin(), have.end());
  if (have != expect) throw WrongMatrix("matrix is not every nonzero vector exactly twice");

  std::map<Vector, std::vector<std::size_t>> where;
  for (std::size_t i = 0; i < m.n(); ++i) where[m.column(i)].push_back(i);
  const auto canonical = construct_double_all_nonzero(k, q).matrix;
  auto plan = plan_batch_double(k, q, requests);
  // copy 1 of a vector maps to its first position in m, copy 2 to the second
  const std::size_t per_copy = canonical.n() / 2;
  for (auto& as : plan.assignments)
    for (auto& i : as.indices) i = where[canonical.column(i)][i / per_copy];
  return plan;
}

}  // namespace fbpir
