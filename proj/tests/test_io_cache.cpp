#include "doctest.h"

#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "fbpir/cache.hpp"
#include "fbpir/constructions.hpp"
#include "fbpir/errors.hpp"
#include "fbpir/io.hpp"
#include "fbpir/solver.hpp"

using namespace fbpir;
using json = nlohmann::json;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() : path(std::filesystem::temp_directory_path() / ("fbpir_io_" + std::to_string(::getpid()))) {
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("matrix JSON round trip keeps column order") {
  auto f = field_new(4);
  const MatrixFq m(f, 2, {{3, 1}, {1, 0}, {0, 2}});
  const auto j = matrix_to_json(m);
  CHECK(j["q"] == 4);
  CHECK(j["k"] == 2);
  CHECK(j["columns"] == json::parse("[[3,1],[1,0],[0,2]]"));
  const auto back = matrix_from_json(j);
  CHECK(back.columns() == m.columns());
  CHECK(back.field() == m.field());
}

TEST_CASE("matrix text format") {
  const auto m = matrix_from_text("2 2 3\n1 0 1\n0 1 1\n");
  CHECK(m.columns() == std::vector<Vector>{{1, 0}, {0, 1}, {1, 1}});
  CHECK(matrix_from_text(matrix_to_text(m)).columns() == m.columns());
  CHECK_THROWS_AS(matrix_from_text("2 2 3\n1 0 1\n0 1\n"), ParseError);
  CHECK_THROWS_AS(matrix_from_text("2 2 2\n1 0\n0 2\n"), ParseError);
  CHECK_THROWS_AS(matrix_from_text("2 2 2\n1 0\n0 0\n"), ZeroColumn);
  CHECK_THROWS_AS(matrix_from_text("6 2 1\n1\n0\n"), NotPrimePower);
}

TEST_CASE("malformed matrix JSON") {
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"q":2,"k":2})")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"q":2,"k":2,"columns":[[1,0],[0,0]]})")), ZeroColumn);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"q":2,"k":2,"columns":[[1,0,1]]})")), DimensionMismatch);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"q":3,"k":2,"columns":[[1,3]]})")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"q":131072,"k":1,"columns":[[1]]})")), CapExceeded);
}

TEST_CASE("files are detected by content") {
  TempDir dir;
  const auto jpath = dir.path / "m.json";
  const auto tpath = dir.path / "m.txt";
  const auto m = construct_binary_t2(4).matrix;
  write_file(jpath, matrix_to_json(m).dump());
  write_file(tpath, matrix_to_text(m));
  CHECK(load_matrix(jpath).columns() == m.columns());
  CHECK(load_matrix(tpath).columns() == m.columns());
  write_file(jpath, "{ not json");
  CHECK_THROWS_AS(load_matrix(jpath), ParseError);
  CHECK_THROWS_AS(load_matrix(dir.path / "absent"), ParseError);
}

TEST_CASE("request lists round trip") {
  auto f = field_new(3);
  const auto l = RequestList(f, 2, {{Vector{2, 1}, 2}, {Vector{0, 1}, 1}});
  const auto j = requests_to_json(l);
  const auto back = requests_from_json(j, f, 2);
  CHECK(back.total() == 3);
  CHECK(back.expanded() == l.expanded());
  const auto plain = requests_from_json(json::parse(R"({"q":3,"k":2,"requests":[{"vector":[1,1]}]})"), f, 2);
  CHECK(plain.total() == 1);
  CHECK_THROWS_AS(requests_from_json(j, field_new(5), 2), DimensionMismatch);
  CHECK_THROWS_AS(requests_from_json(j, f, 3), DimensionMismatch);
  CHECK_THROWS_AS(requests_from_json(json::parse(R"({"q":3,"k":2,"requests":[{"vector":[0,0]}]})"), f, 2),
                  ZeroVector);
}

TEST_CASE("plans round trip with 1-based indices") {
  auto f = field_new(2);
  const MatrixFq m(f, 2, {{1, 0}, {0, 1}, {1, 1}});
  const auto l = RequestList::repeated(f, 2, {1, 1}, 2);
  const auto plan = *can_serve(m, l);
  const auto j = plan_to_json(plan);
  for (const auto& a : j["assignments"])
    for (const auto& i : a["indices"]) CHECK(i.get<int>() >= 1);
  const auto back = plan_from_json(j);
  CHECK(verify_plan(m, l, back));
  CHECK_THROWS_AS(plan_from_json(json::parse(R"({"assignments":[{"request":[1],"indices":[0],"coefficients":[1]}]})")),
                  ParseError);
}

TEST_CASE("value cache") {
  TempDir dir;
  const auto path = dir.path / "cache.jsonl";
  SearchOptions opts;
  opts.systematic = true;
  const auto r = min_length_fb(2, 3, 2, opts);
  {
    ValueCache c(path);
    CHECK(c.size() == 0);
    c.record(ValueCache::from_search(r));
    CHECK(c.find(CodeKind::kFB, 2, 3, 2)->value == 5);
  }
  ValueCache c(path);
  REQUIRE(c.size() == 1);
  const auto e = *c.find(CodeKind::kFB, 2, 3, 2);
  CHECK(e.value == 5);
  CHECK(e.exhausted_below);
  CHECK(e.tool_version == kSolverVersion);
  CHECK(e.witness == r.witness.columns());
  CHECK_FALSE(c.find(CodeKind::kFP, 2, 3, 2));

  // recomputation agrees: appended, no error
  c.record(ValueCache::from_search(min_length_fb(2, 3, 2, opts)));
  // a conflicting value under the same version is surfaced, not stored
  auto bad = e;
  bad.value = 6;
  CHECK_THROWS_AS(c.record(bad), CacheMismatch);
  CHECK(c.find(CodeKind::kFB, 2, 3, 2)->value == 5);
  // an interval entry never replaces an exact value
  auto interval = e;
  interval.value.reset();
  interval.lb = 4;
  interval.ub = 7;
  c.record(interval);
  CHECK(c.find(CodeKind::kFB, 2, 3, 2)->value == 5);

  std::size_t lines = 0;
  std::ifstream in(path);
  for (std::string s; std::getline(in, s);) ++lines;
  CHECK(lines == 3);

  std::ofstream(path, std::ios::app) << "{broken\n";
  CHECK_THROWS_AS(ValueCache{path}, ParseError);
}

TEST_CASE("timestamps are ISO-8601 UTC") {
  const auto ts = utc_timestamp();
  CHECK(ts.size() == 20);
  CHECK(ts.back() == 'Z');
  CHECK(ts[10] == 'T');
}
