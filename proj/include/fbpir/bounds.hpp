#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "fbpir/kind.hpp"

namespace fbpir {

class ValueCache;

struct BoundSource {
  std::string name;
  std::int64_t value;
};

struct KnownValue {
  CodeKind kind;
  std::int64_t k;
  std::int64_t t;
  std::uint32_t q;
  std::int64_t value;
  std::string provenance;
};

struct BoundRecord {
  CodeKind kind;
  std::int64_t k;
  std::int64_t t;
  std::uint32_t q;
  std::int64_t lb;
  std::int64_t ub;
  std::vector<BoundSource> lb_sources;
  std::vector<BoundSource> ub_sources;
  std::optional<KnownValue> exact;

  bool is_exact() const { return lb == ub; }
  bool has_source(const std::string& name) const;
};

/// An exact value proved elsewhere. Either absolute, or relative to the value
/// of the same (kind, k, q) at another t.
struct Seed {
  CodeKind kind;
  std::int64_t k;
  std::int64_t t;
  std::uint32_t q;
  std::optional<std::int64_t> value;
  std::optional<std::int64_t> relative_to_t;
  std::int64_t delta = 0;
  std::string cite;
};

struct BoundOptions {
  /// Consult exact values (rules, seeds, cache). Off gives closed forms only.
  bool use_kb = true;
  /// Subadditive closure is skipped above these sizes.
  std::int64_t closure_max_t = 256;
  std::int64_t closure_max_k = 32;
};

/// Registry of exact values: closed-form families, the FP recursion, external
/// seeds and solver results.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  explicit KnowledgeBase(std::vector<Seed> seeds, std::shared_ptr<ValueCache> cache = nullptr);

  /// No seeds and no cache; rules only.
  static const KnowledgeBase& empty();
  /// Seeds shipped with the library. Integrity-checked on first use.
  static const KnowledgeBase& builtin();
  /// The knowledge base used by default arguments: builtin() unless another
  /// one was installed with set_active().
  static const KnowledgeBase& active();
  static void set_active(std::shared_ptr<const KnowledgeBase> kb);
  /// Seeds from a JSON file; throws SeedIntegrityError on any defect.
  static KnowledgeBase from_file(const std::filesystem::path& path, std::shared_ptr<ValueCache> cache = nullptr);
  static std::vector<Seed> parse_seeds(const std::string& json_text);
  static std::string builtin_seed_text();

  const std::vector<Seed>& seeds() const { return seeds_; }
  const std::shared_ptr<ValueCache>& cache() const { return cache_; }
  void set_cache(std::shared_ptr<ValueCache> cache) { cache_ = std::move(cache); }

  std::optional<KnownValue> known(CodeKind kind, std::int64_t k, std::int64_t t, std::uint32_t q) const;

  /// Every absolute seed must agree with the rules wherever a rule applies,
  /// and every seed must fall inside the closed-form interval.
  void check_integrity() const;

 private:
  std::optional<KnownValue> known_impl(CodeKind kind, std::int64_t k, std::int64_t t, std::uint32_t q, int depth,
                                       bool use_seeds) const;

  std::vector<Seed> seeds_;
  std::shared_ptr<ValueCache> cache_;
};

std::optional<KnownValue> known_value(CodeKind kind, std::int64_t k, std::int64_t t, std::uint32_t q,
                                      const KnowledgeBase& kb = KnowledgeBase::active());

BoundRecord eval_bounds(CodeKind kind, std::int64_t k, std::int64_t t, std::uint32_t q,
                        const KnowledgeBase& kb = KnowledgeBase::active(), const BoundOptions& options = {});

// Individual sources, exposed for tests. Each returns nullopt when it does
// not apply.
std::int64_t lb_basic(std::int64_t k, std::int64_t t);
std::int64_t lb_lowbound(std::int64_t k, std::int64_t t, std::uint32_t q);
std::optional<std::int64_t> lb_layered(std::int64_t k, std::int64_t t, std::uint32_t q);
std::optional<std::int64_t> lb_entropy(std::int64_t k, std::int64_t t, std::uint32_t q);
std::optional<std::int64_t> lb_q2k(std::int64_t k, std::int64_t t, std::uint32_t q);
bool saturates(std::int64_t k, std::int64_t t, std::uint32_t q);
std::optional<std::int64_t> lb_incr(std::int64_t k, std::uint32_t q, std::int64_t value_below);
std::optional<std::int64_t> ub_conjbound(std::int64_t k, std::int64_t t, std::uint32_t q);
std::optional<std::int64_t> ub_hollmann(std::int64_t k, std::int64_t t, std::uint32_t q);
std::optional<std::int64_t> ub_general(std::int64_t k, std::int64_t t, std::uint32_t q);
std::optional<std::int64_t> ub_all_nonzero(std::int64_t k, std::int64_t t, std::uint32_t q);
/// Display-only real-valued form of the lowbound, kt/(log_q(e t) + 1) - t.
double lowbound_real(std::int64_t k, std::int64_t t, std::uint32_t q);

/// Exact power and binomial comparisons used by the sources; exposed for tests.
bool entropy_holds(std::int64_t n, std::int64_t k, std::int64_t t, std::uint32_t q);

struct Rational {
  std::int64_t num;
  std::int64_t den;
  bool operator==(const Rational&) const = default;
  std::string str() const;
};

/// 2(q^k - 1)/(q^k + q - 2) in lowest terms.
Rational asymptotic_ratio_fp(std::int64_t k, std::uint32_t q);

enum class ConjectureProblem { kOP1, kOP2, kFbVsSwap };
enum class ConjectureOutcome { kConsistent, kCounterexample, kUndecided };

std::string to_string(ConjectureProblem p);
ConjectureProblem parse_problem(const std::string& s);
std::string to_string(ConjectureOutcome o);

struct ConjectureReport {
  ConjectureOutcome outcome;
  std::int64_t t;
  std::int64_t conjectured;  // the predicted value; 0 for the swap check
  std::int64_t lb;
  std::int64_t ub;
  std::string method;  // "kb", "bounds", "solver"
  /// Swap check only: an interval separation FB(k,t,q) < FB(t,k,q) was shown.
  bool separated = false;
  std::string detail;
};

struct ConjectureBudget {
  std::uint64_t max_nodes = 2'000'000;
  double max_seconds = 30;
  std::uint64_t max_lists = 200'000;
};

/// OP1: FB(k, q^k+q-2, q) = 2q^k - 2. OP2: FB(k, (q^k-1)/(q-1)+1, q) =
/// 2(q^k-1)/(q-1). Swap: compares FB(k,t,q) with FB(t,k,q), default
/// t = q^k+q-2; it reports a separation flag and is never a counterexample.
ConjectureReport conjecture_check(ConjectureProblem problem, std::int64_t k, std::uint32_t q,
                                  const ConjectureBudget& budget = {},
                                  const KnowledgeBase& kb = KnowledgeBase::active(),
                                  std::optional<std::int64_t> t = std::nullopt);

}  // namespace fbpir
