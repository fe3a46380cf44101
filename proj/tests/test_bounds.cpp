#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "fbpir/bounds.hpp"
#include "fbpir/cache.hpp"
#include "fbpir/errors.hpp"
#include "fbpir/solver.hpp"

using namespace fbpir;

namespace {

std::int64_t source(const std::vector<BoundSource>& v, const std::string& name) {
  for (const auto& s : v)
    if (s.name == name) return s.value;
  return -1;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

std::int64_t ipow(std::int64_t b, std::int64_t e) {
  std::int64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::string seed_json(const std::string& body) { return "[" + body + "]"; }

const char* kGoodSeeds =
    R"({"kind":"FP","k":3,"t":16,"q":2,"value":28,"cite":"c"},)"
    R"({"kind":"FP","k":3,"t":15,"q":2,"relative_to_t":16,"delta":-1,"cite":"c"})";

}  // namespace

TEST_CASE("eval_bounds examples") {
  auto r = eval_bounds(CodeKind::kFB, 2, 2, 2, KnowledgeBase::empty(), BoundOptions{false});
  CHECK(source(r.lb_sources, "basic") == 3);
  CHECK(source(r.ub_sources, "trivial") == 4);
  r = eval_bounds(CodeKind::kFB, 2, 2, 2);
  CHECK(r.lb == 3);
  CHECK(r.ub == 3);
  REQUIRE(r.exact);

  r = eval_bounds(CodeKind::kFB, 2, 2, 3);
  CHECK(source(r.lb_sources, "entropy") == 3);  // 5^3 >= 64 > 5^2
  CHECK(entropy_holds(3, 2, 2, 3));
  CHECK_FALSE(entropy_holds(2, 2, 2, 3));

  r = eval_bounds(CodeKind::kFB, 2, 2, 4);
  CHECK(r.has_source("saturation"));
  CHECK(r.lb == 4);
  CHECK(r.ub == 4);
  CHECK(saturates(2, 2, 4));
  CHECK_FALSE(saturates(2, 2, 3));
}

TEST_CASE("individual closed forms") {
  CHECK(lb_basic(3, 4) == 6);
  // s = max{i : C(it, i) q^i < q^k}; k=4, t=2, q=2: C(2,1)*2=4<16, C(4,2)*4=24>=16
  CHECK(lb_lowbound(4, 2, 2) == 3);
  CHECK(lb_lowbound(1, 5, 2) == 1);
  CHECK(lb_lowbound(3, 2, 5) == 3);  // s = 1: 2*5=10<125, 6*25=150>=125
  CHECK(lb_layered(2, 2, 5) == 4);   // q >= C(4,1)
  CHECK_FALSE(lb_layered(2, 2, 3));
  CHECK(lb_q2k(2, 16, 2) == ceil_div(2 * 3 * 16, 4));
  CHECK_FALSE(lb_q2k(2, 15, 2));
  CHECK(ub_conjbound(2, 4, 2) == 6);
  CHECK(ub_conjbound(2, 10, 3) == 18);
  CHECK_FALSE(ub_conjbound(2, 11, 3));
  CHECK(ub_hollmann(2, 9, 3) == 16);
  CHECK_FALSE(ub_hollmann(2, 10, 3));
  CHECK_FALSE(ub_general(1, 5, 2));
  // h=4, s=2, g=1: 2*2*ceil(2/1)*(2-1) = 8
  CHECK(ub_general(2, 4, 2) == 8);
  CHECK(ub_all_nonzero(2, 5, 3) == 8);
  CHECK(ub_all_nonzero(2, 6, 3) == 16);
  // FB(1,t,q) = t; incrbound from k=1 to k=2 at q=2: x - ceil(x/3) >= t
  CHECK(lb_incr(2, 2, 4) == 6);
  CHECK_FALSE(lb_incr(1, 2, 4));
  CHECK(std::abs(lowbound_real(3, 2, 2) - (6.0 / (std::log(2 * std::exp(1.0)) / std::log(2.0) + 1) - 2)) < 1e-12);
}

TEST_CASE("entropy bound by exact big-integer comparison") {
  for (std::int64_t k = 1; k <= 5; ++k)
    for (std::int64_t t = 1; t <= 12; ++t)
      for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        const auto n = *lb_entropy(k, t, q);
        CHECK(entropy_holds(n, k, t, q));
        if (n > 0) CHECK_FALSE(entropy_holds(n - 1, k, t, q));
      }
  // t = 40, q = 2, k = 30: far beyond 64-bit powers
  const auto n = *lb_entropy(30, 40, 2);
  CHECK(entropy_holds(n, 30, 40, 2));
  CHECK_FALSE(entropy_holds(n - 1, 30, 40, 2));
}

TEST_CASE("known_value examples") {
  auto v = known_value(CodeKind::kFP, 3, 19, 2);
  REQUIRE(v);
  CHECK(v->value == 34);
  CHECK(v->provenance.find("fp-recursion") == 0);
  CHECK(v->provenance.find("seed") != std::string::npos);

  v = known_value(CodeKind::kFB, 2, 7, 3);
  REQUIRE(v);
  CHECK(v->value == 12);

  CHECK(known_value(CodeKind::kFP, 2, 4, 2)->value == 6);
  CHECK(known_value(CodeKind::kFB, 2, 4, 2)->value == 6);
  CHECK(known_value(CodeKind::kFB, 1, 9, 7)->value == 9);
  CHECK(known_value(CodeKind::kFP, 5, 1, 3)->value == 5);
  CHECK(known_value(CodeKind::kFB, 4, 2, 2)->value == 6);
  CHECK(known_value(CodeKind::kFB, 3, 16, 2)->value == 28);
  CHECK(known_value(CodeKind::kFP, 2, 10, 3)->value == 16);
  CHECK_FALSE(known_value(CodeKind::kFB, 3, 3, 3));
  // without seeds the chain through FP(3,16,2) is unavailable
  CHECK_FALSE(known_value(CodeKind::kFP, 3, 19, 2, KnowledgeBase::empty()));
}

TEST_CASE("recursion reproduces the binary multiples") {
  for (std::int64_t k = 2; k <= 4; ++k) {
    const std::int64_t half = ipow(2, k - 1), full = ipow(2, k) - 1;
    for (std::int64_t t = half + 1; t <= 32; ++t) {
      const auto here = known_value(CodeKind::kFP, k, t, 2);
      const auto below = known_value(CodeKind::kFP, k, t - half, 2);
      if (t % half == 0) {
        REQUIRE(here);
        CHECK(here->value == full * (t / half));
        if (below) CHECK(below->value + full == here->value);
      }
      if (here && here->provenance.rfind("fp-recursion", 0) == 0) {
        REQUIRE(below);
        CHECK(here->value == below->value + full);
      }
    }
  }
}

TEST_CASE("bounds never cross on the grid") {
  for (auto kind : {CodeKind::kFP, CodeKind::kFB})
    for (std::int64_t k = 1; k <= 4; ++k)
      for (std::int64_t t = 1; t <= 12; ++t)
        for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
          const auto r = eval_bounds(kind, k, t, q);
          CAPTURE(k);
          CAPTURE(t);
          CAPTURE(q);
          CHECK(r.lb <= r.ub);
          for (const auto& lo : r.lb_sources)
            for (const auto& hi : r.ub_sources) {
              CAPTURE(lo.name);
              CAPTURE(hi.name);
              CHECK(lo.value <= hi.value);
            }
          std::int64_t max_lb = 0, min_ub = INT64_MAX;
          for (const auto& s : r.lb_sources) max_lb = std::max(max_lb, s.value);
          for (const auto& s : r.ub_sources) min_ub = std::min(min_ub, s.value);
          CHECK(r.lb == max_lb);
          CHECK(r.ub == min_ub);
          if (r.exact) CHECK(r.lb == r.exact->value);
          if (r.exact) CHECK(r.ub == r.exact->value);
        }
}

TEST_CASE("FP bounds sit below FB bounds") {
  for (std::int64_t k = 1; k <= 4; ++k)
    for (std::int64_t t = 1; t <= 12; ++t)
      for (std::uint32_t q : {2u, 3u}) {
        const auto fp = eval_bounds(CodeKind::kFP, k, t, q);
        const auto fb = eval_bounds(CodeKind::kFB, k, t, q);
        CHECK(fp.lb <= fb.ub);
        CHECK(fp.ub <= fb.ub);
      }
}

TEST_CASE("every source brackets solver values") {
  SearchOptions opts;
  opts.systematic = true;
  for (auto kind : {CodeKind::kFP, CodeKind::kFB})
    for (std::size_t k = 1; k <= 3; ++k)
      for (std::size_t t = 1; t <= 3; ++t)
        for (std::uint32_t q : {2u, 3u, 4u}) {
          if (k == 3 && q > 2 && t > 1) continue;
          const auto v = min_length(kind, k, t, q, opts).n_min;
          const auto r = eval_bounds(kind, k, t, q);
          CAPTURE(to_string(kind));
          CAPTURE(k);
          CAPTURE(t);
          CAPTURE(q);
          for (const auto& s : r.lb_sources) {
            CAPTURE(s.name);
            CHECK(s.value <= v);
          }
          for (const auto& s : r.ub_sources) {
            CAPTURE(s.name);
            CHECK(v <= s.value);
          }
        }
}

TEST_CASE("asymptotic_ratio_fp") {
  CHECK(asymptotic_ratio_fp(2, 2) == Rational{3, 2});
  CHECK(asymptotic_ratio_fp(1, 7) == Rational{1, 1});
  CHECK(asymptotic_ratio_fp(2, 3) == Rational{8, 5});
  CHECK(asymptotic_ratio_fp(2, 3).str() == "8/5");
  // FP/t is constant along t = s(q^k+q-2)/2
  for (std::int64_t k = 1; k <= 3; ++k)
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
      const auto qk = ipow(q, k);
      if ((qk + q - 2) % 2) continue;
      const auto r = asymptotic_ratio_fp(k, q);
      for (std::int64_t s = 1; s <= 6; ++s) {
        const auto t = s * (qk + q - 2) / 2;
        const auto v = known_value(CodeKind::kFP, k, t, q);
        REQUIRE(v);
        CHECK(v->value * r.den == r.num * t);
      }
    }
}

TEST_CASE("field-extension sandwich on computed values") {
  for (std::size_t t = 1; t <= 3; ++t) {
    const auto big = min_length_fb(2, t, 4).n_min;
    const auto small = min_length_fb(2, 2 * t, 2).n_min;
    CHECK(big <= small);
    CHECK(small <= 2 * big);
  }
  const auto r = eval_bounds(CodeKind::kFB, 3, 2, 4);
  CHECK(r.has_source("field-extension"));
  CHECK(source(r.ub_sources, "field-extension") <= eval_bounds(CodeKind::kFB, 3, 4, 2).ub);
}

TEST_CASE("conjecture checks") {
  auto r = conjecture_check(ConjectureProblem::kOP1, 2, 2);
  CHECK(r.outcome == ConjectureOutcome::kConsistent);
  CHECK(r.t == 4);
  CHECK(r.conjectured == 6);
  r = conjecture_check(ConjectureProblem::kOP1, 2, 3);
  CHECK(r.outcome == ConjectureOutcome::kConsistent);
  CHECK(r.conjectured == 16);
  r = conjecture_check(ConjectureProblem::kOP2, 2, 2);
  CHECK(r.outcome == ConjectureOutcome::kConsistent);
  CHECK(r.conjectured == 6);
  r = conjecture_check(ConjectureProblem::kFbVsSwap, 2, 2);
  CHECK(r.outcome != ConjectureOutcome::kCounterexample);
  CHECK(parse_problem("OP1") == ConjectureProblem::kOP1);
  CHECK(parse_problem("FB_vs_swap") == ConjectureProblem::kFbVsSwap);
  CHECK_THROWS_AS(parse_problem("OP9"), InvalidInput);
  CHECK(to_string(ConjectureOutcome::kConsistent) == "consistent");
}

TEST_CASE("builtin seeds pass integrity and resolve") {
  const auto& kb = KnowledgeBase::builtin();
  CHECK(kb.seeds().size() >= 2);
  CHECK_NOTHROW(kb.check_integrity());
  CHECK(kb.known(CodeKind::kFP, 3, 15, 2)->value == 27);
}

TEST_CASE("seed files: accepted formats") {
  CHECK(KnowledgeBase::parse_seeds(seed_json(kGoodSeeds)).size() == 2);
  const auto obj = std::string(R"({"version":1,"seeds":[)") + kGoodSeeds + "]}";
  CHECK(KnowledgeBase::parse_seeds(obj).size() == 2);
}

TEST_CASE("seed files: tampering is detected") {
  auto rejects = [](const std::string& text) {
    CAPTURE(text);
    CHECK_THROWS_AS(KnowledgeBase(KnowledgeBase::parse_seeds(text)).check_integrity(), SeedIntegrityError);
  };
  rejects("not json");
  rejects(R"({"version":2,"seeds":[]})");
  rejects(seed_json(R"({"kind":"FP","k":3,"t":16,"q":2,"value":28})"));                 // no cite
  rejects(seed_json(R"({"kind":"XX","k":3,"t":16,"q":2,"value":28,"cite":"c"})"));     // bad kind
  rejects(seed_json(R"({"kind":"FP","k":3,"t":16,"q":6,"value":28,"cite":"c"})"));     // bad q
  rejects(seed_json(R"({"kind":"FP","k":3,"t":16,"q":2,"value":29,"cite":"c"})"));     // contradicts a rule
  rejects(seed_json(R"({"kind":"FB","k":2,"t":3,"q":2,"value":6,"cite":"c"})"));       // contradicts k=2 formula
  rejects(seed_json(R"({"kind":"FB","k":3,"t":3,"q":3,"value":2,"cite":"c"})"));       // below the lower bound
  rejects(seed_json(R"({"kind":"FP","k":3,"t":15,"q":2,"relative_to_t":99,"delta":-1,"cite":"c"})"));  // dangling
  rejects(seed_json(std::string(kGoodSeeds) + R"(,{"kind":"FP","k":3,"t":16,"q":2,"value":28,"cite":"d"})"));
  rejects(seed_json(R"({"kind":"FP","k":3,"t":16,"q":2,"value":28,"relative_to_t":15,"delta":1,"cite":"c"})"));
}

TEST_CASE("seed file loading") {
  const auto dir = std::filesystem::temp_directory_path() / "fbpir_seed_test";
  std::filesystem::create_directories(dir);
  const auto good = dir / "good.json";
  const auto bad = dir / "bad.json";
  std::ofstream(good) << seed_json(kGoodSeeds);
  std::ofstream(bad) << seed_json(R"({"kind":"FP","k":3,"t":16,"q":2,"value":3,"cite":"c"})");
  const auto kb = KnowledgeBase::from_file(good);
  CHECK(known_value(CodeKind::kFP, 3, 19, 2, kb)->value == 34);
  CHECK_THROWS_AS(KnowledgeBase::from_file(bad), SeedIntegrityError);
  CHECK_THROWS_AS(KnowledgeBase::from_file(dir / "missing.json"), SeedIntegrityError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("solver cache entries feed the knowledge base") {
  const auto path = std::filesystem::temp_directory_path() / "fbpir_bounds_cache.jsonl";
  std::filesystem::remove(path);
  auto cache = std::make_shared<ValueCache>(path);
  SearchOptions opts;
  opts.systematic = true;
  cache->record(ValueCache::from_search(min_length_fb(3, 3, 2, opts)));
  KnowledgeBase kb({}, cache);
  const auto v = kb.known(CodeKind::kFB, 3, 3, 2);
  REQUIRE(v);
  CHECK(v->provenance.rfind("solver cache", 0) == 0);
  const auto r = eval_bounds(CodeKind::kFB, 3, 3, 2, kb);
  CHECK(r.lb == r.ub);
  CHECK(r.lb == v->value);
  // the value lifts the lower bound at k = 4 through the dimension recursion
  CHECK(eval_bounds(CodeKind::kFB, 4, 3, 2, kb).has_source("incrbound"));
  std::filesystem::remove(path);
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS_AS(eval_bounds(CodeKind::kFB, 0, 2, 2), InvalidInput);
  CHECK_THROWS_AS(eval_bounds(CodeKind::kFB, 2, 2, 6), NotPrimePower);
}
