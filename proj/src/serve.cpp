#include "fbpir/serve.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>

#include "fbpir/errors.hpp"

namespace fbpir {

namespace {

constexpr std::uint8_t kNotInSpan = 0xFF;

std::vector<PackedSpace::Packed> pack_columns(const PackedSpace& space, const MatrixFq& m) {
  if (m.n() > ColumnSet::kMaxColumns)
    throw InstanceTooLarge("matrices with more than " + std::to_string(ColumnSet::kMaxColumns) +
                           " columns are not supported by the packing search");
  std::vector<PackedSpace::Packed> cols;
  cols.reserve(m.n());
  for (const auto& c : m.columns()) cols.push_back(space.encode(c));
  return cols;
}

Assignment make_assignment(const MatrixFq& m, const ProjectivePoint& request, std::vector<std::size_t> idx) {
  std::vector<Vector> cols;
  for (std::size_t i : idx) cols.push_back(m.column(i));
  auto coeffs = in_span(m.field(), request.rep, cols);
  if (!coeffs) throw Error("internal: recovery set does not span its request");
  return Assignment{request, std::move(idx), std::move(*coeffs), 1};
}

std::vector<Demand> demands_for(const PackedSpace& space, const RequestList& requests) {
  std::vector<Demand> d;
  for (const auto& e : requests.entries())
    d.push_back(Demand{static_cast<std::uint32_t>(space.point_of(space.encode(e.point.rep))),
                       static_cast<std::uint32_t>(e.mult)});
  return d;
}

void check_compatible(const MatrixFq& m, const RequestList& requests) {
  if (!(m.field() == requests.field()) || m.k() != requests.k())
    throw DimensionMismatch("matrix and request list differ in field or dimension");
}

}  // namespace

// ---------------------------------------------------------------- RequestList

RequestList::RequestList(FieldPtr field, std::size_t k, const std::vector<std::pair<Vector, std::size_t>>& entries)
    : field_(std::move(field)), k_(k) {
  std::map<ProjectivePoint, std::size_t> merged;
  for (const auto& [v, mult] : entries) {
    if (v.size() != k_) throw DimensionMismatch("request has wrong dimension");
    for (Element e : v)
      if (!field_->contains(e)) throw DimensionMismatch("request entry outside the field");
    if (mult == 0) throw InvalidInput("request multiplicity must be at least 1");
    merged[projective_canonical(*field_, v)] += mult;
    total_ += mult;
  }
  if (total_ == 0) throw InvalidInput("request list is empty");
  for (auto& [p, mult] : merged) entries_.push_back(Entry{p, mult});
}

RequestList RequestList::from_vectors(FieldPtr field, std::size_t k, const std::vector<Vector>& vectors) {
  std::vector<std::pair<Vector, std::size_t>> e;
  for (const auto& v : vectors) e.emplace_back(v, 1);
  return RequestList(std::move(field), k, e);
}

RequestList RequestList::repeated(FieldPtr field, std::size_t k, const Vector& v, std::size_t t) {
  return RequestList(std::move(field), k, {{v, t}});
}

std::vector<Vector> RequestList::expanded() const {
  std::vector<Vector> out;
  for (const auto& e : entries_)
    for (std::size_t i = 0; i < e.mult; ++i) out.push_back(e.point.rep);
  return out;
}

// ------------------------------------------------------------------ ColumnSet

std::vector<std::size_t> ColumnSet::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < 2; ++w) {
    std::uint64_t bits = w_[w];
    while (bits) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

// -------------------------------------------------------------- RecoveryIndex

RecoveryIndex::RecoveryIndex(const PackedSpace& space)
    : space_(space),
      sets_(space.num_points()),
      line_count_(space.num_points(), 0),
      level_(space.size(), kNotInSpan) {
  level_[0] = 0;
}

void RecoveryIndex::build(std::span<const PackedSpace::Packed> columns, std::size_t max_size) {
  if (columns.size() > ColumnSet::kMaxColumns) throw InstanceTooLarge("too many columns");
  n_ = columns.size();
  columns_.assign(columns.begin(), columns.end());
  for (auto& s : sets_) s.clear();
  std::fill(line_count_.begin(), line_count_.end(), 0);
  for (auto c : columns_) {
    const auto pt = space_.point_of(c);
    if (pt < 0) throw ZeroColumn("zero column in recovery index");
    ++line_count_[static_cast<std::size_t>(pt)];
  }
  if (max_size == 0 || max_size > space_.k()) max_size = space_.k();
  if (sums_.size() < max_size + 1) sums_.resize(max_size + 1);
  span_.assign(1, 0);
  dfs_sets(0, 0, ColumnSet{}, max_size);
  for (auto& s : sets_)
    std::stable_sort(s.begin(), s.end(), [](const ColumnSet& a, const ColumnSet& b) { return a.count() < b.count(); });
}

// Enumerates independent column subsets S. Every vector with all coefficients
// nonzero (the first normalized to one) has S as a minimal recovery set.
void RecoveryIndex::dfs_sets(std::size_t start, std::size_t depth, ColumnSet mask, std::size_t max_size) {
  const std::uint32_t q = space_.field().q();
  const std::size_t span_size = span_.size();
  for (std::size_t j = start; j < n_; ++j) {
    const auto c = columns_[j];
    if (level_[c] != kNotInSpan) continue;  // dependent on S
    for (std::size_t i = 0; i < span_size; ++i)
      for (Element alpha = 1; alpha < q; ++alpha) {
        const auto w = space_.add(span_[i], space_.scale(alpha, c));
        level_[w] = static_cast<std::uint8_t>(depth + 1);
        span_.push_back(w);
      }
    auto& next = sums_[depth + 1];
    next.clear();
    if (depth == 0) {
      next.push_back(c);
    } else {
      for (auto s : sums_[depth])
        for (Element alpha = 1; alpha < q; ++alpha) next.push_back(space_.add(s, space_.scale(alpha, c)));
    }
    ColumnSet m2 = mask;
    m2.set(j);
    for (auto w : next) sets_[static_cast<std::size_t>(space_.point_of(w))].push_back(m2);
    if (depth + 1 < max_size) dfs_sets(j + 1, depth + 1, m2, max_size);
    for (std::size_t i = span_size; i < span_.size(); ++i) level_[span_[i]] = kNotInSpan;
    span_.resize(span_size);
  }
}

ServeStatus RecoveryIndex::serve(std::span<const Demand> demands, std::vector<ColumnSet>* chosen,
                                 std::uint64_t max_nodes) {
  groups_.clear();
  picks_.clear();
  nodes_ = 0;
  max_nodes_ = max_nodes;
  exhausted_ = false;
  for (const auto& d : demands)
    if (d.mult > 0) groups_.push_back(Group{d.point, d.mult, -1, 0});
  const bool ok = pack(ColumnSet{}, n_);
  if (exhausted_) return ServeStatus::kBudgetExhausted;
  if (!ok) return ServeStatus::kUnservable;
  if (chosen) {
    chosen->clear();
    // groups_ preserves the order of the nonzero demands
    std::vector<std::vector<ColumnSet>> per_group(groups_.size());
    for (auto [g, i] : picks_) per_group[g].push_back(sets_[groups_[g].point][i]);
    for (auto& v : per_group)
      for (auto& s : v) chosen->push_back(s);
  }
  return ServeStatus::kServed;
}

bool RecoveryIndex::pack(ColumnSet used, std::size_t free_columns) {
  ++nodes_;
  if (max_nodes_ && nodes_ > max_nodes_) {
    exhausted_ = true;
    return false;
  }
  std::size_t best = groups_.size();
  std::size_t best_avail = std::numeric_limits<std::size_t>::max();
  std::size_t required = 0;
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    const auto& grp = groups_[g];
    if (grp.need == 0) continue;
    const auto& s = sets_[grp.point];
    std::size_t avail = 0, min_size = 0;
    for (std::size_t i = static_cast<std::size_t>(grp.last + 1); i < s.size(); ++i) {
      if (!s[i].disjoint(used)) continue;
      if (avail == 0) min_size = s[i].count();
      ++avail;
    }
    if (avail < grp.need) return false;
    required += grp.need * min_size;
    if (avail < best_avail) {
      best_avail = avail;
      best = g;
    }
  }
  if (best == groups_.size()) return true;
  if (required > free_columns) return false;

  auto& grp = groups_[best];
  const auto& s = sets_[grp.point];
  const std::int32_t saved = grp.last;
  for (std::size_t i = static_cast<std::size_t>(saved + 1); i < s.size(); ++i) {
    if (!s[i].disjoint(used)) continue;
    grp.last = static_cast<std::int32_t>(i);
    --grp.need;
    picks_.emplace_back(best, i);
    if (pack(used | s[i], free_columns - s[i].count())) return true;
    picks_.pop_back();
    ++grp.need;
    grp.last = saved;
    if (exhausted_) return false;
  }
  return false;
}

// ---------------------------------------------------------------- operations

std::vector<RecoverySet> minimal_recovery_sets(const MatrixFq& m, const ProjectivePoint& v, std::size_t max_size) {
  if (v.rep.size() != m.k()) throw DimensionMismatch("request has wrong dimension");
  if (is_zero(v.rep)) throw ZeroVector("request is zero");
  PackedSpace space(m.field_ptr(), m.k());
  const auto cols = pack_columns(space, m);
  RecoveryIndex index(space);
  index.build(cols, max_size);
  const auto pt = static_cast<std::uint32_t>(space.point_of(space.encode(v.rep)));
  std::vector<std::vector<std::size_t>> sets;
  for (const auto& s : index.sets(pt)) sets.push_back(s.indices());
  std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  const ProjectivePoint canon = projective_canonical(m.field(), v.rep);
  std::vector<RecoverySet> out;
  for (auto& idx : sets) {
    auto a = make_assignment(m, canon, idx);
    out.push_back(RecoverySet{std::move(a.indices), std::move(a.coefficients)});
  }
  return out;
}

ServeOutcome try_serve(const MatrixFq& m, const RequestList& requests, std::uint64_t max_nodes) {
  check_compatible(m, requests);
  PackedSpace space(m.field_ptr(), m.k());
  const auto cols = pack_columns(space, m);
  RecoveryIndex index(space);
  index.build(cols);
  const auto demands = demands_for(space, requests);
  std::vector<ColumnSet> chosen;
  ServeOutcome out;
  out.status = index.serve(demands, &chosen, max_nodes);
  out.nodes = index.nodes();
  if (out.status != ServeStatus::kServed) return out;
  RecoveryPlan plan;
  std::size_t c = 0;
  for (const auto& e : requests.entries())
    for (std::size_t i = 0; i < e.mult; ++i) plan.assignments.push_back(make_assignment(m, e.point, chosen[c++].indices()));
  out.plan = std::move(plan);
  return out;
}

std::optional<RecoveryPlan> can_serve(const MatrixFq& m, const RequestList& requests) {
  auto out = try_serve(m, requests, 0);
  return std::move(out.plan);
}

bool verify_plan(const MatrixFq& m, const RequestList& requests, const RecoveryPlan& plan) {
  const Field& f = m.field();
  if (!(f == requests.field()) || m.k() != requests.k()) return false;
  if (plan.assignments.size() != requests.total()) return false;
  std::map<ProjectivePoint, std::size_t> wanted;
  for (const auto& e : requests.entries()) wanted[e.point] = e.mult;
  std::vector<bool> used(m.n(), false);
  for (const auto& a : plan.assignments) {
    if (a.request.rep.size() != m.k() || is_zero(a.request.rep)) return false;
    for (Element e : a.request.rep)
      if (!f.contains(e)) return false;
    if (!(projective_canonical(f, a.request.rep) == a.request)) return false;
    auto it = wanted.find(a.request);
    if (it == wanted.end() || it->second == 0) return false;
    --it->second;
    if (a.indices.empty() || a.indices.size() != a.coefficients.size()) return false;
    if (a.scalar == 0 || !f.contains(a.scalar)) return false;
    Vector sum(m.k(), 0);
    for (std::size_t j = 0; j < a.indices.size(); ++j) {
      const std::size_t idx = a.indices[j];
      if (idx >= m.n() || used[idx] || !f.contains(a.coefficients[j])) return false;
      used[idx] = true;
      sum = vec_add(f, sum, vec_scale(f, a.coefficients[j], m.column(idx)));
    }
    if (sum != vec_scale(f, a.scalar, a.request.rep)) return false;
  }
  return true;
}

PirCheck is_functional_pir(const MatrixFq& m, std::size_t t) {
  if (t == 0) throw InvalidInput("t must be at least 1");
  PackedSpace space(m.field_ptr(), m.k());
  const auto cols = pack_columns(space, m);
  RecoveryIndex index(space);
  index.build(cols);
  for (std::uint32_t pt = 0; pt < space.num_points(); ++pt) {
    const Demand d{pt, static_cast<std::uint32_t>(t)};
    if (index.serve(std::span<const Demand>(&d, 1)) != ServeStatus::kServed)
      return PirCheck{false, ProjectivePoint{space.decode(space.point_rep(pt))}};
  }
  return PirCheck{true, std::nullopt};
}

BatchCheck is_functional_batch(const MatrixFq& m, std::size_t t, std::uint64_t max_lists) {
  if (t == 0) throw InvalidInput("t must be at least 1");
  PackedSpace space(m.field_ptr(), m.k());
  const std::uint64_t count = multiset_count(space.num_points(), t);
  if (count > max_lists)
    throw InstanceTooLarge(std::to_string(count) + " request multisets exceed the budget of " +
                           std::to_string(max_lists));
  const auto cols = pack_columns(space, m);
  RecoveryIndex index(space);
  index.build(cols);
  auto witness = [&](const std::vector<Demand>& ds) {
    std::vector<std::pair<Vector, std::size_t>> e;
    for (const auto& d : ds) e.emplace_back(space.decode(space.point_rep(d.point)), d.mult);
    return RequestList(m.field_ptr(), m.k(), e);
  };
  // Repeated single points first: they are the usual failures.
  for (std::uint32_t pt = 0; pt < space.num_points(); ++pt) {
    std::vector<Demand> d{{pt, static_cast<std::uint32_t>(t)}};
    if (index.serve(d) != ServeStatus::kServed) return BatchCheck{false, witness(d)};
  }
  for (const auto& ds : all_request_multisets(space.num_points(), t)) {
    if (ds.size() == 1) continue;
    if (index.serve(ds) != ServeStatus::kServed) return BatchCheck{false, witness(ds)};
  }
  return BatchCheck{true, std::nullopt};
}

std::uint64_t multiset_count(std::uint64_t num_points, std::uint64_t t) {
  // C(N + t - 1, t) computed incrementally; each prefix is itself a binomial.
  if (num_points == 0) return t == 0 ? 1 : 0;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= t; ++i) {
    r = r * (num_points - 1 + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

std::vector<std::vector<Demand>> all_request_multisets(std::uint32_t num_points, std::size_t t) {
  std::vector<std::vector<Demand>> out;
  if (num_points == 0 || t == 0) return out;
  std::vector<std::uint32_t> seq(t, 0);
  while (true) {
    std::vector<Demand> d;
    for (auto p : seq) {
      if (!d.empty() && d.back().point == p)
        ++d.back().mult;
      else
        d.push_back(Demand{p, 1});
    }
    out.push_back(std::move(d));
    std::size_t i = t;
    while (i > 0 && seq[i - 1] == num_points - 1) --i;
    if (i == 0) break;
    const std::uint32_t v = seq[i - 1] + 1;
    for (std::size_t j = i - 1; j < t; ++j) seq[j] = v;
  }
  return out;
}

}  // namespace fbpir
