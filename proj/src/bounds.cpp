#include "fbpir/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>
#include "json.hpp"

#include "fbpir/cache.hpp"
#include "fbpir/errors.hpp"
#include "fbpir/gf.hpp"
#include "fbpir/serve.hpp"
#include "fbpir/solver.hpp"
#include "fbpir_seed_data.hpp"

namespace fbpir {

using boost::multiprecision::cpp_int;
using json = nlohmann::json;

namespace {

constexpr std::int64_t kSatLimit = std::int64_t{1} << 62;
constexpr int kMaxDepth = 256;

// Saturating b^e; nullopt once the value passes 2^62.
std::optional<std::int64_t> ipow(std::int64_t b, std::int64_t e) {
  std::int64_t r = 1;
  for (std::int64_t i = 0; i < e; ++i) {
    if (r > kSatLimit / b) return std::nullopt;
    r *= b;
  }
  return r;
}

cpp_int big_pow(cpp_int base, std::int64_t e) {
  cpp_int r = 1;
  auto x = static_cast<std::uint64_t>(e);
  while (x) {
    if (x & 1) r *= base;
    base *= base;
    x >>= 1;
  }
  return r;
}

cpp_int binom(std::int64_t n, std::int64_t r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  cpp_int c = 1;
  for (std::int64_t i = 1; i <= r; ++i) c = c * (n - r + i) / i;
  return c;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

void validate(std::int64_t k, std::int64_t t, std::uint32_t q) {
  if (k < 1 || t < 1) throw InvalidInput("k and t must be at least 1");
  if (!prime_power(q)) throw NotPrimePower(std::to_string(q) + " is not a prime power");
}

CodeKind kind_of_json(const json& j) {
  try {
    return parse_kind(j.get<std::string>());
  } catch (const std::exception& e) {
    throw SeedIntegrityError(std::string("seed kind: ") + e.what());
  }
}

}  // namespace

bool BoundRecord::has_source(const std::string& name) const {
  auto hit = [&](const BoundSource& s) { return s.name == name; };
  return std::any_of(lb_sources.begin(), lb_sources.end(), hit) ||
         std::any_of(ub_sources.begin(), ub_sources.end(), hit);
}

// ----------------------------------------------------------- closed forms

std::int64_t lb_basic(std::int64_t k, std::int64_t t) { return t + k - 1; }

std::int64_t lb_lowbound(std::int64_t k, std::int64_t t, std::uint32_t q) {
  const cpp_int qk = big_pow(q, k);
  std::int64_t s = 0;
  for (std::int64_t i = 1; i < k; ++i) {
    if (binom(i * t, i) * big_pow(q, i) < qk)
      s = i;
    else
      break;
  }
  return s * t + 1;
}

std::optional<std::int64_t> lb_layered(std::int64_t k, std::int64_t t, std::uint32_t q) {
  std::optional<std::int64_t> best;
  for (std::int64_t s = 1; s <= k - 1; ++s) {
    if (big_pow(q, k - s) >= binom(t * (s + 1), s))
      best = t * (s + 1);
    else
      break;
  }
  return best;
}

bool entropy_holds(std::int64_t n, std::int64_t k, std::int64_t t, std::uint32_t q) {
  return big_pow(t * (q - 1) + 1, n) >= big_pow(big_pow(q, k) - 1, t);
}

std::optional<std::int64_t> lb_entropy(std::int64_t k, std::int64_t t, std::uint32_t q) {
  const auto qk = ipow(q, k);
  if (!qk) return std::nullopt;
  const double bits = static_cast<double>(t) * std::log2(static_cast<double>(*qk));
  if (bits > 4e6) return std::nullopt;
  const cpp_int target = big_pow(*qk - 1, t);
  const std::int64_t base = t * (q - 1) + 1;
  const double est = static_cast<double>(t) * std::log(static_cast<double>(*qk - 1)) / std::log(static_cast<double>(base));
  auto n = std::max<std::int64_t>(0, static_cast<std::int64_t>(est) - 2);
  while (n > 0 && big_pow(base, n) >= target) --n;
  while (big_pow(base, n) < target) ++n;
  return n;
}

std::optional<std::int64_t> lb_q2k(std::int64_t k, std::int64_t t, std::uint32_t q) {
  const auto qk = ipow(q, k);
  const auto q2k = ipow(q, 2 * k);
  if (!qk || !q2k) return std::nullopt;
  const std::int64_t special = *q2k + q - 2;
  if (t != special) return std::nullopt;
  const cpp_int num = cpp_int(2) * (*qk - 1) * special;
  const cpp_int den = *qk + q - 2;
  return static_cast<std::int64_t>((num + den - 1) / den);
}

bool saturates(std::int64_t k, std::int64_t t, std::uint32_t q) { return cpp_int(q) >= binom(k * t, k - 1); }

std::optional<std::int64_t> lb_incr(std::int64_t k, std::uint32_t q, std::int64_t value_below) {
  if (k < 2) return std::nullopt;
  const auto qk = ipow(q, k);
  if (!qk) return std::nullopt;
  const std::int64_t den = *qk - 1;
  std::int64_t x = value_below;
  while (x - ceil_div((q - 1) * x, den) < value_below) ++x;
  return x;
}

std::optional<std::int64_t> ub_conjbound(std::int64_t k, std::int64_t t, std::uint32_t q) {
  const auto qk = ipow(q, k);
  if (!qk || t > *qk + q - 2) return std::nullopt;
  return 2 * (*qk - 1) + (static_cast<std::int64_t>(q) - 2) * k;
}

std::optional<std::int64_t> ub_hollmann(std::int64_t k, std::int64_t t, std::uint32_t q) {
  const auto qk = ipow(q, k);
  if (!qk || t > *qk) return std::nullopt;
  return 2 * (*qk - 1);
}

std::optional<std::int64_t> ub_general(std::int64_t k, std::int64_t t, std::uint32_t q) {
  const std::int64_t h = std::max(k, t);
  const std::int64_t s = std::min(k, t);
  if (s < 2) return std::nullopt;
  std::int64_t g = 0;
  std::int64_t qg = 1;
  while (qg < s) {
    qg *= q;
    ++g;
  }
  const std::int64_t q2 = static_cast<std::int64_t>(q) - 2;
  const cpp_int v = cpp_int(ceil_div(h, s)) * 2 * ceil_div(qg + q2, g) * (qg - 1 + q2 * g);
  if (v > kSatLimit) return std::nullopt;
  return static_cast<std::int64_t>(v);
}

std::optional<std::int64_t> ub_all_nonzero(std::int64_t k, std::int64_t t, std::uint32_t q) {
  const auto qk = ipow(q, k);
  if (!qk) return std::nullopt;
  const std::int64_t half = (*qk + q - 2) / 2;
  const cpp_int v = cpp_int(ceil_div(t, half)) * (*qk - 1);
  if (v > kSatLimit) return std::nullopt;
  return static_cast<std::int64_t>(v);
}

double lowbound_real(std::int64_t k, std::int64_t t, std::uint32_t q) {
  const double lq = std::log(static_cast<double>(q));
  return static_cast<double>(k * t) / (std::log(std::exp(1.0) * static_cast<double>(t)) / lq + 1.0) -
         static_cast<double>(t);
}

// ---------------------------------------------------------- knowledge base

KnowledgeBase::KnowledgeBase(std::vector<Seed> seeds, std::shared_ptr<ValueCache> cache)
    : seeds_(std::move(seeds)), cache_(std::move(cache)) {}

const KnowledgeBase& KnowledgeBase::empty() {
  static const KnowledgeBase kb;
  return kb;
}

std::string KnowledgeBase::builtin_seed_text() { return kBuiltinSeedJson; }

const KnowledgeBase& KnowledgeBase::builtin() {
  static const KnowledgeBase kb = [] {
    KnowledgeBase b(parse_seeds(builtin_seed_text()));
    b.check_integrity();
    return b;
  }();
  return kb;
}

namespace {
std::shared_ptr<const KnowledgeBase>& active_slot() {
  static std::shared_ptr<const KnowledgeBase> slot;
  return slot;
}
}  // namespace

const KnowledgeBase& KnowledgeBase::active() {
  const auto& slot = active_slot();
  return slot ? *slot : builtin();
}

void KnowledgeBase::set_active(std::shared_ptr<const KnowledgeBase> kb) { active_slot() = std::move(kb); }

std::vector<Seed> KnowledgeBase::parse_seeds(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw SeedIntegrityError(std::string("seed file is not valid JSON: ") + e.what());
  }
  const json* list = &doc;
  if (doc.is_object()) {
    if (!doc.contains("version") || !doc["version"].is_number_integer() || doc["version"].get<int>() != 1)
      throw SeedIntegrityError("seed file: unsupported or missing version");
    if (!doc.contains("seeds")) throw SeedIntegrityError("seed file: missing 'seeds'");
    list = &doc["seeds"];
  }
  if (!list->is_array()) throw SeedIntegrityError("seed file: expected an array of seeds");
  std::vector<Seed> out;
  for (const auto& j : *list) {
    if (!j.is_object()) throw SeedIntegrityError("seed entry is not an object");
    for (const char* key : {"kind", "k", "t", "q", "cite"})
      if (!j.contains(key)) throw SeedIntegrityError(std::string("seed entry lacks '") + key + "'");
    for (const char* key : {"k", "t", "q"})
      if (!j[key].is_number_integer()) throw SeedIntegrityError(std::string("seed field '") + key + "' must be an integer");
    if (!j["cite"].is_string() || j["cite"].get<std::string>().empty())
      throw SeedIntegrityError("seed entry needs a citation string");
    if (!j["kind"].is_string()) throw SeedIntegrityError("seed kind must be a string");
    Seed s{kind_of_json(j["kind"]), j["k"].get<std::int64_t>(), j["t"].get<std::int64_t>(), 0, std::nullopt,
           std::nullopt, 0, j["cite"].get<std::string>()};
    const auto q = j["q"].get<std::int64_t>();
    if (q < 2 || !prime_power(static_cast<std::uint64_t>(q))) throw SeedIntegrityError("seed q is not a prime power");
    s.q = static_cast<std::uint32_t>(q);
    if (s.k < 1 || s.t < 1) throw SeedIntegrityError("seed k and t must be positive");
    const bool has_value = j.contains("value");
    const bool has_rel = j.contains("relative_to_t");
    if (has_value == has_rel) throw SeedIntegrityError("seed needs exactly one of 'value' and 'relative_to_t'");
    if (has_value) {
      if (!j["value"].is_number_integer()) throw SeedIntegrityError("seed value must be an integer");
      s.value = j["value"].get<std::int64_t>();
    } else {
      if (!j["relative_to_t"].is_number_integer() || !j.contains("delta") || !j["delta"].is_number_integer())
        throw SeedIntegrityError("relative seed needs integer 'relative_to_t' and 'delta'");
      s.relative_to_t = j["relative_to_t"].get<std::int64_t>();
      s.delta = j["delta"].get<std::int64_t>();
      if (*s.relative_to_t < 1 || *s.relative_to_t == s.t) throw SeedIntegrityError("relative seed has a bad reference t");
    }
    out.push_back(std::move(s));
  }
  return out;
}

KnowledgeBase KnowledgeBase::from_file(const std::filesystem::path& path, std::shared_ptr<ValueCache> cache) {
  std::ifstream in(path);
  if (!in) throw SeedIntegrityError("cannot read seed file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  KnowledgeBase kb(parse_seeds(ss.str()), std::move(cache));
  kb.check_integrity();
  return kb;
}

std::optional<KnownValue> KnowledgeBase::known(CodeKind kind, std::int64_t k, std::int64_t t, std::uint32_t q) const {
  validate(k, t, q);
  return known_impl(kind, k, t, q, 0, true);
}

std::optional<KnownValue> KnowledgeBase::known_impl(CodeKind kind, std::int64_t k, std::int64_t t, std::uint32_t q,
                                                    int depth, bool use_seeds) const {
  if (k < 1 || t < 1 || depth > kMaxDepth) return std::nullopt;
  auto kv = [&](std::int64_t v, std::string why) { return KnownValue{kind, k, t, q, v, std::move(why)}; };
  const bool fb = kind == CodeKind::kFB;

  if (k == 1) return kv(t, "dimension one");
  if (t == 1) return kv(k, "single request");
  if (fb && k == 2) return kv(ceil_div(2 * (q + 1) * t, q + 2), "k2-formula");
  if (fb && t == 2 && q == 2) return kv(ceil_div(3 * k, 2), "binary-t2-formula");

  const auto qk = ipow(q, k);
  if (qk) {
    const std::int64_t half_binary = *qk / 2;  // 2^(k-1) when q = 2
    if (!fb && q == 2 && t % half_binary == 0) return kv((*qk - 1) * (t / half_binary), "fp-binary-multiple");
    if (fb && q == 2 && t % *qk == 0) return kv((2 * *qk - 2) * (t / *qk), "fb-binary-multiple");
    const std::int64_t n_half = (*qk + q - 2) / 2;
    if (!fb && t % n_half == 0) return kv((t / n_half) * (*qk - 1), "fp-all-nonzero-multiple");
    if (fb && q == 2 && t == *qk) return kv(2 * (*qk - 1), "fb-double-binary");
    if (!fb && q == 2 && t > half_binary) {
      const std::int64_t s = t / half_binary;
      const std::int64_t h = t % half_binary;
      if (s + h >= *qk - 1) {
        if (auto below = known_impl(kind, k, t - half_binary, q, depth + 1, use_seeds))
          return kv(below->value + *qk - 1, "fp-recursion <- " + below->provenance);
      }
    }
  }

  if (use_seeds) {
    for (const auto& s : seeds_) {
      if (s.kind != kind || s.k != k || s.t != t || s.q != q) continue;
      if (s.value) return kv(*s.value, "seed: " + s.cite);
      if (auto ref = known_impl(kind, k, *s.relative_to_t, q, depth + 1, use_seeds))
        return kv(ref->value + s.delta, "seed relation (" + s.cite + ") <- " + ref->provenance);
    }
  }

  if (cache_) {
    if (auto e = cache_->find(kind, k, t, q); e && e->value) return kv(*e->value, "solver cache: " + e->provenance);
  }
  return std::nullopt;
}

void KnowledgeBase::check_integrity() const {
  for (std::size_t i = 0; i < seeds_.size(); ++i) {
    const Seed& s = seeds_[i];
    const std::string tag = to_string(s.kind) + "(" + std::to_string(s.k) + "," + std::to_string(s.t) + "," +
                            std::to_string(s.q) + ")";
    if (s.k < 1 || s.t < 1 || !prime_power(s.q)) throw SeedIntegrityError("seed " + tag + " has invalid parameters");
    for (std::size_t j = 0; j < i; ++j) {
      const Seed& o = seeds_[j];
      if (o.kind == s.kind && o.k == s.k && o.t == s.t && o.q == s.q)
        throw SeedIntegrityError("duplicate seed for " + tag);
    }
    std::int64_t value;
    if (s.value) {
      value = *s.value;
      if (auto rule = known_impl(s.kind, s.k, s.t, s.q, 0, false); rule && rule->value != value)
        throw SeedIntegrityError("seed " + tag + " = " + std::to_string(value) + " contradicts " + rule->provenance +
                                 " = " + std::to_string(rule->value));
    } else {
      auto ref = known_impl(s.kind, s.k, *s.relative_to_t, s.q, 0, true);
      if (!ref) throw SeedIntegrityError("seed " + tag + " refers to an unknown value");
      value = ref->value + s.delta;
      if (auto rule = known_impl(s.kind, s.k, s.t, s.q, 0, false); rule && rule->value != value)
        throw SeedIntegrityError("seed " + tag + " contradicts " + rule->provenance);
    }
    BoundOptions closed;
    closed.use_kb = false;
    const auto rec = eval_bounds(s.kind, s.k, s.t, s.q, empty(), closed);
    if (value < rec.lb || value > rec.ub)
      throw SeedIntegrityError("seed " + tag + " = " + std::to_string(value) + " lies outside the proven interval [" +
                               std::to_string(rec.lb) + ", " + std::to_string(rec.ub) + "]");
  }
}

std::optional<KnownValue> known_value(CodeKind kind, std::int64_t k, std::int64_t t, std::uint32_t q,
                                      const KnowledgeBase& kb) {
  return kb.known(kind, k, t, q);
}

// ------------------------------------------------------------- evaluation

namespace {

class Evaluator {
 public:
  Evaluator(const KnowledgeBase& kb, const BoundOptions& opts) : kb_(kb), opts_(opts) {}

  std::vector<BoundSource> base_ub_sources(CodeKind kind, std::int64_t k, std::int64_t t, std::uint32_t q) {
    std::vector<BoundSource> out;
    out.push_back({"trivial", k * t});
    if (auto v = ub_conjbound(k, t, q)) out.push_back({"conjbound", *v});
    if (auto v = ub_hollmann(k, t, q)) out.push_back({"hollmann", *v});
    if (auto v = ub_general(k, t, q)) out.push_back({"general", *v});
    if (auto v = field_extension(k, t, q)) out.push_back({"field-extension", *v});
    if (kind == CodeKind::kFP)
      if (auto v = ub_all_nonzero(k, t, q)) out.push_back({"all-nonzero", *v});
    if (opts_.use_kb) {
      if (auto v = kb_.known(kind, k, t, q)) out.push_back({"kb", v->value});
      if (kind == CodeKind::kFP)
        if (auto v = kb_.known(CodeKind::kFB, k, t, q)) out.push_back({"fb-kb", v->value});
    }
    return out;
  }

  std::int64_t closure(CodeKind kind, std::int64_t k, std::int64_t t, std::uint32_t q) {
    const auto key = std::make_tuple(kind, k, t, q);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (const auto& s : base_ub_sources(kind, k, t, q)) best = std::min(best, s.value);
    if (kind == CodeKind::kFP) best = std::min(best, closure(CodeKind::kFB, k, t, q));
    if (t <= opts_.closure_max_t && k <= opts_.closure_max_k) {
      for (std::int64_t t1 = 1; t1 <= t / 2; ++t1)
        best = std::min(best, closure(kind, k, t1, q) + closure(kind, k, t - t1, q));
      for (std::int64_t k1 = 1; k1 <= k / 2; ++k1)
        best = std::min(best, closure(kind, k1, t, q) + closure(kind, k - k1, t, q));
    }
    memo_.emplace(key, best);
    return best;
  }

  std::vector<BoundSource> lb_sources(CodeKind kind, std::int64_t k, std::int64_t t, std::uint32_t q) {
    std::vector<BoundSource> out;
    out.push_back({"basic", lb_basic(k, t)});
    out.push_back({"lowbound", lb_lowbound(k, t, q)});
    if (kind == CodeKind::kFB) {
      if (auto v = lb_layered(k, t, q)) out.push_back({"layered", *v});
      if (auto v = lb_entropy(k, t, q)) out.push_back({"entropy", *v});
      if (auto v = lb_q2k(k, t, q)) out.push_back({"q2k", *v});
      if (saturates(k, t, q)) out.push_back({"saturation", k * t});
    }
    if (opts_.use_kb) {
      if (k >= 2)
        if (auto below = kb_.known(kind, k - 1, t, q))
          if (auto v = lb_incr(k, q, below->value)) out.push_back({"incrbound", *v});
      if (auto v = kb_.known(kind, k, t, q)) out.push_back({"kb", v->value});
      if (kind == CodeKind::kFB)
        if (auto v = kb_.known(CodeKind::kFP, k, t, q)) out.push_back({"fp-kb", v->value});
    }
    return out;
  }

 private:
  // FB(k, t, p^m) <= FB(k, (m/s1) t, p^s1) for every proper divisor s1 of m.
  std::optional<std::int64_t> field_extension(std::int64_t k, std::int64_t t, std::uint32_t q) {
    const auto pm = prime_power(q);
    if (!pm || pm->second == 1) return std::nullopt;
    const auto [p, m] = *pm;
    std::optional<std::int64_t> best;
    for (std::uint32_t s1 = 1; s1 < m; ++s1) {
      if (m % s1) continue;
      const std::int64_t d = m / s1;
      const auto sub_q = static_cast<std::uint32_t>(*ipow(p, s1));
      const std::int64_t v = closure(CodeKind::kFB, k, d * t, sub_q);
      best = best ? std::min(*best, v) : v;
    }
    return best;
  }

  const KnowledgeBase& kb_;
  BoundOptions opts_;
  std::map<std::tuple<CodeKind, std::int64_t, std::int64_t, std::uint32_t>, std::int64_t> memo_;
};

}  // namespace

BoundRecord eval_bounds(CodeKind kind, std::int64_t k, std::int64_t t, std::uint32_t q, const KnowledgeBase& kb,
                        const BoundOptions& options) {
  validate(k, t, q);
  Evaluator ev(kb, options);
  BoundRecord rec{kind, k, t, q, 0, 0, ev.lb_sources(kind, k, t, q), ev.base_ub_sources(kind, k, t, q), std::nullopt};
  if (kind == CodeKind::kFB && saturates(k, t, q)) rec.ub_sources.push_back({"saturation", k * t});
  rec.ub_sources.push_back({"subadditive", ev.closure(kind, k, t, q)});
  rec.lb = 0;
  for (const auto& s : rec.lb_sources) rec.lb = std::max(rec.lb, s.value);
  rec.ub = std::numeric_limits<std::int64_t>::max();
  for (const auto& s : rec.ub_sources) rec.ub = std::min(rec.ub, s.value);
  if (options.use_kb) rec.exact = kb.known(kind, k, t, q);
  if (rec.lb > rec.ub)
    throw Error("inconsistent bounds for " + to_string(kind) + "(" + std::to_string(k) + "," + std::to_string(t) +
                "," + std::to_string(q) + "): " + std::to_string(rec.lb) + " > " + std::to_string(rec.ub));
  return rec;
}

// --------------------------------------------------------------- ratios

std::string Rational::str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

Rational asymptotic_ratio_fp(std::int64_t k, std::uint32_t q) {
  if (k < 1) throw InvalidInput("k must be at least 1");
  const auto qk = ipow(q, k);
  if (!qk) throw InvalidInput("q^k too large");
  std::int64_t num = 2 * (*qk - 1);
  std::int64_t den = *qk + q - 2;
  const std::int64_t g = std::gcd(num, den);
  return Rational{num / g, den / g};
}

// ----------------------------------------------------------- conjectures

std::string to_string(ConjectureProblem p) {
  switch (p) {
    case ConjectureProblem::kOP1:
      return "OP1";
    case ConjectureProblem::kOP2:
      return "OP2";
    case ConjectureProblem::kFbVsSwap:
      return "FB_vs_swap";
  }
  return "OP1";
}

ConjectureProblem parse_problem(const std::string& s) {
  if (s == "OP1") return ConjectureProblem::kOP1;
  if (s == "OP2") return ConjectureProblem::kOP2;
  if (s == "FB_vs_swap" || s == "swap") return ConjectureProblem::kFbVsSwap;
  throw InvalidInput("unknown problem '" + s + "' (OP1, OP2, FB_vs_swap)");
}

std::string to_string(ConjectureOutcome o) {
  switch (o) {
    case ConjectureOutcome::kConsistent:
      return "consistent";
    case ConjectureOutcome::kCounterexample:
      return "counterexample";
    case ConjectureOutcome::kUndecided:
      return "undecided";
  }
  return "undecided";
}

ConjectureReport conjecture_check(ConjectureProblem problem, std::int64_t k, std::uint32_t q,
                                  const ConjectureBudget& budget, const KnowledgeBase& kb,
                                  std::optional<std::int64_t> t_opt) {
  validate(k, 1, q);
  const auto qk = ipow(q, k);
  if (!qk) throw InvalidInput("q^k too large");

  if (problem == ConjectureProblem::kFbVsSwap) {
    const std::int64_t t = t_opt.value_or(*qk + q - 2);
    const auto a = eval_bounds(CodeKind::kFB, k, t, q, kb);
    const auto b = eval_bounds(CodeKind::kFB, t, k, q, kb);
    ConjectureReport r{ConjectureOutcome::kUndecided, t, 0, a.lb, a.ub, "bounds", a.ub < b.lb, ""};
    r.detail = "FB(k,t,q) in [" + std::to_string(a.lb) + "," + std::to_string(a.ub) + "], FB(t,k,q) in [" +
               std::to_string(b.lb) + "," + std::to_string(b.ub) + "]";
    if (r.separated || (a.is_exact() && b.is_exact())) r.outcome = ConjectureOutcome::kConsistent;
    return r;
  }

  const std::int64_t points = (*qk - 1) / (q - 1);
  const std::int64_t t = problem == ConjectureProblem::kOP1 ? *qk + q - 2 : points + 1;
  const std::int64_t conj = problem == ConjectureProblem::kOP1 ? 2 * *qk - 2 : 2 * points;
  const auto rec = eval_bounds(CodeKind::kFB, k, t, q, kb);
  ConjectureReport r{ConjectureOutcome::kUndecided, t, conj, rec.lb, rec.ub, rec.exact ? "kb" : "bounds", false, ""};
  auto decide = [&](std::int64_t value) {
    r.lb = r.ub = value;
    r.outcome = value == conj ? ConjectureOutcome::kConsistent : ConjectureOutcome::kCounterexample;
  };
  if (rec.is_exact()) {
    decide(rec.lb);
  } else if (conj < rec.lb || conj > rec.ub) {
    r.outcome = ConjectureOutcome::kCounterexample;
  } else if (multiset_count(static_cast<std::uint64_t>(points), static_cast<std::uint64_t>(t)) <= budget.max_lists) {
    SearchOptions so;
    so.max_nodes = budget.max_nodes;
    so.max_seconds = budget.max_seconds;
    so.max_lists = budget.max_lists;
    so.start_length = rec.lb;
    so.certify_below = false;
    try {
      const auto res = min_length(CodeKind::kFB, static_cast<std::size_t>(k), static_cast<std::size_t>(t), q, so);
      r.method = "solver";
      decide(res.n_min);
    } catch (const BudgetExceeded& e) {
      r.lb = std::max(r.lb, e.lower());
      r.detail = e.what();
    } catch (const InstanceTooLarge& e) {
      r.detail = e.what();
    }
  } else {
    r.detail = "request multisets exceed the list budget";
  }
  if (r.detail.empty())
    r.detail = "FB(" + std::to_string(k) + "," + std::to_string(t) + "," + std::to_string(q) + ") in [" +
               std::to_string(r.lb) + "," + std::to_string(r.ub) + "], conjectured " + std::to_string(conj);
  return r;
}

}  // namespace fbpir
