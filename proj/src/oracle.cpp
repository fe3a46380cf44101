#include "fbpir/oracle.hpp"

#include <algorithm>
#include <set>

#include "fbpir/errors.hpp"

namespace fbpir::oracle {

namespace {

std::vector<Vector> all_vectors(std::size_t k, const Field& f, bool include_zero) {
  std::vector<Vector> out;
  Vector v(k, 0);
  if (include_zero) out.push_back(v);
  while (true) {
    std::size_t i = k;
    while (i > 0 && v[i - 1] == f.q() - 1) v[--i] = 0;
    if (i == 0) break;
    ++v[i - 1];
    out.push_back(v);
  }
  return out;
}

// Nondecreasing index sequences of length t over `count` items.
std::vector<std::vector<std::size_t>> multisets(std::size_t count, std::size_t t) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> seq(t, 0);
  while (true) {
    out.push_back(seq);
    std::size_t i = t;
    while (i > 0 && seq[i - 1] == count - 1) --i;
    if (i == 0) break;
    const std::size_t v = seq[i - 1] + 1;
    for (std::size_t j = i - 1; j < t; ++j) seq[j] = v;
  }
  return out;
}

}  // namespace

bool can_serve(const MatrixFq& m, const std::vector<Vector>& requests) {
  const std::size_t n = m.n();
  const std::size_t t = requests.size();
  if (t == 0) return true;
  const Field& f = m.field();
  std::vector<std::size_t> label(n, 0);  // 0 = unused, i + 1 = request i
  while (true) {
    bool ok = true;
    for (std::size_t r = 0; r < t && ok; ++r) {
      std::vector<Vector> group;
      for (std::size_t c = 0; c < n; ++c)
        if (label[c] == r + 1) group.push_back(m.column(c));
      ok = !group.empty() && in_span(f, requests[r], group).has_value();
    }
    if (ok) return true;
    std::size_t i = 0;
    while (i < n && label[i] == t) label[i++] = 0;
    if (i == n) return false;
    ++label[i];
  }
}

bool exists_code(CodeKind kind, std::size_t k, std::size_t t, const FieldPtr& field, std::size_t n) {
  const Field& f = *field;
  const auto nz = all_vectors(k, f, false);
  std::vector<Vector> reps;
  for (const auto& v : nz)
    if (projective_canonical(f, v).rep == v) reps.push_back(v);
  std::vector<std::vector<Vector>> lists;
  if (kind == CodeKind::kFP) {
    for (const auto& v : reps) lists.emplace_back(t, v);
  } else {
    for (const auto& ms : multisets(reps.size(), t)) {
      std::vector<Vector> l;
      for (auto i : ms) l.push_back(reps[i]);
      lists.push_back(std::move(l));
    }
  }
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    std::vector<Vector> cols;
    for (auto i : pick) cols.push_back(nz[i]);
    if (rank(f, cols) == k) {
      MatrixFq m(field, k, cols);
      if (std::all_of(lists.begin(), lists.end(), [&](const auto& l) { return can_serve(m, l); })) return true;
    }
    std::size_t i = 0;
    while (i < n && pick[i] == nz.size() - 1) pick[i++] = 0;
    if (i == n) return false;
    ++pick[i];
  }
}

bool hall_exists(std::size_t k, const FieldPtr& field, const std::vector<Vector>& a) {
  const Field& f = *field;
  auto group = all_vectors(k, f, true);
  if (a.size() != group.size()) throw WrongListSize("list size must equal the group order");
  std::sort(group.begin(), group.end());
  std::vector<Vector> g = group;
  do {
    std::set<Vector> image;
    for (std::size_t i = 0; i < g.size(); ++i) image.insert(vec_add(f, g[i], a[i]));
    if (image.size() == group.size()) return true;
  } while (std::next_permutation(g.begin(), g.end()));
  return false;
}

}  // namespace fbpir::oracle
