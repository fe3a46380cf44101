#include "doctest.h"

#include <random>
#include <set>

#include "fbpir/errors.hpp"
#include "fbpir/linalg.hpp"
#include "test_util.hpp"

using namespace fbpir;

TEST_CASE("rank examples") {
  auto f2 = field_new(2), f3 = field_new(3);
  CHECK(rank(MatrixFq::identity(f2, 3)) == 3);
  CHECK(rank(MatrixFq(f3, 2, {{1, 1}, {1, 1}})) == 1);
  CHECK(rank(MatrixFq(f3, 2, {{1, 0}, {2, 0}})) == 1);
}

TEST_CASE("zero columns are rejected") {
  auto f = field_new(2);
  CHECK_THROWS_AS(MatrixFq(f, 2, {{1, 0}, {0, 0}}), ZeroColumn);
  CHECK_THROWS_AS(MatrixFq(f, 2, {{1, 0, 1}}), DimensionMismatch);
  CHECK_THROWS_AS(MatrixFq(f, 2, {{2, 0}}), DimensionMismatch);
}

TEST_CASE("in_span examples") {
  auto f2 = field_new(2), f3 = field_new(3);
  std::vector<Vector> cols{{1, 0}, {0, 1}};
  CHECK(in_span(*f2, Vector{1, 1}, cols) == std::vector<Element>{1, 1});
  std::vector<Vector> e2{{0, 1}};
  CHECK_FALSE(in_span(*f2, Vector{1, 0}, e2));
  std::vector<Vector> c3{{1, 2}};
  CHECK(in_span(*f3, Vector{2, 1}, c3) == std::vector<Element>{2});
}

TEST_CASE("in_span agrees with coefficient enumeration") {
  std::mt19937 rng(11);
  for (std::uint64_t q : {2, 3, 4}) {
    auto f = field_new(q);
    for (std::size_t k = 1; k <= 3; ++k)
      for (std::size_t s = 1; s <= 4; ++s)
        for (int trial = 0; trial < 40; ++trial) {
          std::vector<Vector> cols;
          for (std::size_t i = 0; i < s; ++i) cols.push_back(test::random_vector(rng, *f, k, true));
          const auto v = test::random_vector(rng, *f, k, true);
          const bool oracle = test::span_by_enumeration(*f, v, cols);
          const auto c = in_span(*f, v, cols);
          CAPTURE(q);
          CAPTURE(k);
          CHECK(c.has_value() == oracle);
          if (c) {
            Vector sum(k, 0);
            for (std::size_t i = 0; i < s; ++i) sum = vec_add(*f, sum, vec_scale(*f, (*c)[i], cols[i]));
            CHECK(sum == v);
          }
        }
  }
}

TEST_CASE("in_span is deterministic with free variables zeroed") {
  auto f = field_new(2);
  std::vector<Vector> cols{{1, 0}, {0, 1}, {1, 1}};
  CHECK(in_span(*f, Vector{1, 1}, cols) == std::vector<Element>{1, 1, 0});
  CHECK(in_span(*f, Vector{1, 1}, cols) == in_span(*f, Vector{1, 1}, cols));
}

TEST_CASE("projective_canonical examples") {
  auto f2 = field_new(2), f3 = field_new(3);
  CHECK(projective_canonical(*f3, Vector{0, 2}).rep == Vector{0, 1});
  CHECK(projective_canonical(*f3, Vector{2, 1}).rep == Vector{1, 2});
  CHECK(projective_canonical(*f2, Vector{1, 1}).rep == Vector{1, 1});
  CHECK_THROWS_AS(projective_canonical(*f3, Vector{0, 0}), ZeroVector);
  CHECK(projective_scalar(*f3, Vector{2, 1}) == 2);
}

TEST_CASE("projective_canonical is scale invariant") {
  for (std::uint64_t q : {2, 3, 4, 5}) {
    auto f = field_new(q);
    for (std::size_t k = 1; k <= 3; ++k) {
      const auto points = enumerate_projective_points(k, *f);
      std::set<ProjectivePoint> seen;
      for (const auto& v : test::all_nonzero(k, *f)) {
        const auto p = projective_canonical(*f, v);
        seen.insert(p);
        for (Element a = 1; a < q; ++a) CHECK(projective_canonical(*f, vec_scale(*f, a, v)) == p);
        CHECK(vec_scale(*f, projective_scalar(*f, v), p.rep) == v);
        CHECK(std::count(points.begin(), points.end(), p) == 1);
      }
      CHECK(seen.size() == points.size());
    }
  }
}

TEST_CASE("enumerate_projective_points") {
  auto f2 = field_new(2), f3 = field_new(3);
  const auto p22 = enumerate_projective_points(2, *f2);
  REQUIRE(p22.size() == 3);
  CHECK(p22[0].rep == Vector{0, 1});
  CHECK(p22[1].rep == Vector{1, 0});
  CHECK(p22[2].rep == Vector{1, 1});
  CHECK(enumerate_projective_points(2, *f3).size() == 4);
  CHECK(enumerate_projective_points(3, *f2).size() == 7);
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
    auto f = field_new(q);
    for (std::size_t k = 1; k <= 4; ++k) {
      const auto pts = enumerate_projective_points(k, *f);
      std::uint64_t qk = 1;
      for (std::size_t i = 0; i < k; ++i) qk *= q;
      CHECK(pts.size() == (qk - 1) / (q - 1));
      CHECK(std::is_sorted(pts.begin(), pts.end()));
      CHECK(std::adjacent_find(pts.begin(), pts.end()) == pts.end());
    }
  }
}

TEST_CASE("expand_over_subfield") {
  auto f4 = field_new(4), f2 = field_new(2);
  const Element a = f4->generator_x();

  SUBCASE("identity over GF(4)") {
    const auto e = expand_over_subfield(MatrixFq::identity(f4, 2), f2);
    // coefficient columns of e_1 are (1,0) and (0,0); of e_2, (0,1) and (0,0)
    CHECK(e.matrix.k() == 2);
    CHECK(e.matrix.n() + e.dropped == 4);
    CHECK(e.dropped == 2);
    const auto& cols = e.matrix.columns();
    CHECK(std::count(cols.begin(), cols.end(), Vector{1, 0}) == 1);
    CHECK(std::count(cols.begin(), cols.end(), Vector{0, 1}) == 1);
  }
  SUBCASE("a e_1") {
    const auto e = expand_over_subfield(MatrixFq(f4, 2, {{a, 0}}), f2);
    CHECK(e.dropped == 1);
    REQUIRE(e.matrix.n() == 1);
    CHECK(e.matrix.column(0) == Vector{1, 0});
  }
  SUBCASE("same field is unchanged") {
    const MatrixFq m(f4, 2, {{1, a}, {a, 0}, {0, 1}});
    const auto e = expand_over_subfield(m, field_new(4));
    CHECK(e.dropped == 0);
    CHECK(e.matrix.columns() == m.columns());
  }
  SUBCASE("incompatible degrees") {
    CHECK_THROWS_AS(expand_over_subfield(MatrixFq::identity(field_new(8), 2), f4), IncompatibleDegrees);
    CHECK_THROWS_AS(expand_over_subfield(MatrixFq::identity(f4, 2), field_new(3)), IncompatibleDegrees);
  }
  SUBCASE("coordinates reconstruct every element") {
    auto f16 = field_new(16);
    const auto coords = subfield_coordinates(*f16, *f4);
    const auto emb = subfield_embedding(*f16, *f4);
    const Element x = f16->generator_x();
    for (Element y = 0; y < 16; ++y) {
      REQUIRE(coords[y].size() == 2);
      CHECK(f16->add(emb[coords[y][0]], f16->mul(emb[coords[y][1]], x)) == y);
    }
    // the embedding is a ring homomorphism
    for (Element u = 0; u < 4; ++u)
      for (Element w = 0; w < 4; ++w) {
        CHECK(emb[f4->mul(u, w)] == f16->mul(emb[u], emb[w]));
        CHECK(emb[f4->add(u, w)] == f16->add(emb[u], emb[w]));
      }
  }
}

TEST_CASE("packed space arithmetic matches vectors") {
  for (std::uint64_t q : {2, 3, 4, 5}) {
    auto f = field_new(q);
    for (std::size_t k = 1; k <= 3; ++k) {
      PackedSpace s(f, k);
      const auto all = test::all_nonzero(k, *f);
      for (const auto& u : all) {
        const auto pu = s.encode(u);
        CHECK(s.decode(pu) == u);
        CHECK(s.point_rep(s.point_of(pu)) == s.encode(projective_canonical(*f, u).rep));
        CHECK(s.scale(s.scalar_of(pu), s.point_rep(s.point_of(pu))) == pu);
        for (const auto& w : all) CHECK(s.decode(s.add(pu, s.encode(w))) == vec_add(*f, u, w));
      }
      CHECK(s.point_of(0) == -1);
    }
  }
}
