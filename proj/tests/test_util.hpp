#pragma once

#include <random>
#include <vector>

#include "fbpir/linalg.hpp"

namespace fbpir::test {

inline std::vector<Vector> all_vectors(std::size_t k, const Field& f) {
  std::vector<Vector> out;
  Vector v(k, 0);
  while (true) {
    out.push_back(v);
    std::size_t i = k;
    while (i > 0 && v[i - 1] == f.q() - 1) v[--i] = 0;
    if (i == 0) break;
    ++v[i - 1];
  }
  return out;
}

inline std::vector<Vector> all_nonzero(std::size_t k, const Field& f) {
  auto v = all_vectors(k, f);
  v.erase(v.begin());
  return v;
}

inline Vector random_vector(std::mt19937& rng, const Field& f, std::size_t k, bool allow_zero) {
  std::uniform_int_distribution<Element> d(0, f.q() - 1);
  while (true) {
    Vector v(k);
    for (auto& x : v) x = d(rng);
    if (allow_zero || !is_zero(v)) return v;
  }
}

// v in span(cols), by trying every coefficient tuple.
inline bool span_by_enumeration(const Field& f, const Vector& v, const std::vector<Vector>& cols) {
  std::vector<Element> c(cols.size(), 0);
  while (true) {
    Vector sum(v.size(), 0);
    for (std::size_t i = 0; i < cols.size(); ++i)
      for (std::size_t r = 0; r < v.size(); ++r) sum[r] = f.add(sum[r], f.mul(c[i], cols[i][r]));
    if (sum == v) return true;
    std::size_t i = 0;
    while (i < c.size() && c[i] == f.q() - 1) c[i++] = 0;
    if (i == c.size()) return false;
    ++c[i];
  }
}

// Random invertible k x k matrix, rows as vectors.
inline std::vector<Vector> random_invertible(std::mt19937& rng, const Field& f, std::size_t k) {
  while (true) {
    std::vector<Vector> g;
    for (std::size_t i = 0; i < k; ++i) g.push_back(random_vector(rng, f, k, true));
    if (rank(f, g) == k) return g;
  }
}

inline Vector apply(const Field& f, const std::vector<Vector>& g, const Vector& v) {
  Vector out(g.size(), 0);
  for (std::size_t r = 0; r < g.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) out[r] = f.add(out[r], f.mul(g[r][c], v[c]));
  return out;
}

}  // namespace fbpir::test
