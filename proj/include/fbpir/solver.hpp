#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fbpir/kind.hpp"
#include "fbpir/linalg.hpp"
#include "fbpir/serve.hpp"

namespace fbpir {

class KnowledgeBase;

inline constexpr const char* kSolverVersion = "fbpir-solver-1";

struct SearchOptions {
  std::uint64_t max_nodes = 0;  // candidate matrices per search, 0 = unlimited
  double max_seconds = 0;       // wall clock per search, 0 = unlimited
  /// Only enumerate column multisets containing e_1..e_k. Sound because an
  /// invertible change of basis preserves both properties.
  bool systematic = false;
  /// When the first length tried already succeeds, also exhaust the length
  /// below it so that the result carries an enumeration certificate.
  bool certify_below = true;
  std::uint64_t max_lists = kDefaultListBudget;
  std::optional<std::int64_t> start_length;
};

struct SearchResult {
  CodeKind kind;
  std::size_t k;
  std::size_t t;
  std::uint32_t q;
  std::int64_t n_min;
  MatrixFq witness;
  bool exhausted_below;
  std::int64_t start_length;
  std::uint64_t candidates;
  double seconds;
};

/// Column multisets of length n over projective points, i.e. nondecreasing
/// point-index sequences, restricted to rank k. Each multiset is emitted once.
class CandidateEnumerator {
 public:
  CandidateEnumerator(const PackedSpace& space, std::size_t n, bool systematic = false);

  /// Advances to the next candidate; false when exhausted.
  bool next();
  /// Point indices of the current candidate (nondecreasing unless systematic,
  /// where the unit points come first).
  std::span<const std::uint32_t> points() const { return points_; }
  std::span<const PackedSpace::Packed> columns() const { return columns_; }
  std::uint64_t emitted() const { return emitted_; }

 private:
  bool advance_from(std::ptrdiff_t pos, bool increment);
  std::ptrdiff_t carry_position(std::ptrdiff_t j) const;
  bool extend(std::size_t j);

  const PackedSpace& space_;
  std::size_t n_;
  std::size_t free_len_;
  bool systematic_;
  bool started_ = false;
  bool done_ = false;
  std::vector<std::uint32_t> seq_;
  std::vector<std::uint32_t> points_;
  std::vector<PackedSpace::Packed> columns_;
  // basis_[j] is the echelon basis of the first j sequence entries, stored as
  // vectors normalized to a leading one, indexed by pivot coordinate.
  std::vector<std::vector<PackedSpace::Packed>> basis_;
  std::vector<std::size_t> rank_;
  std::vector<std::uint32_t> place_;
  std::uint64_t emitted_ = 0;
};

/// Decides the FP/FB property for candidates of one (k, t, q); reuses its
/// recovery index and request lists across candidates.
class PropertyChecker {
 public:
  PropertyChecker(const PackedSpace& space, CodeKind kind, std::size_t t, std::uint64_t max_lists);
  bool check(std::span<const std::uint32_t> points, std::span<const PackedSpace::Packed> columns);

 private:
  const PackedSpace& space_;
  CodeKind kind_;
  std::size_t t_;
  RecoveryIndex index_;
  std::vector<std::vector<Demand>> lists_;
  std::vector<std::uint32_t> multiplicity_;
};

enum class LengthOutcome { kFound, kNone, kBudget };

struct LengthSearch {
  LengthOutcome outcome;
  std::optional<MatrixFq> witness;
  std::uint64_t candidates;
};

/// Exhausts every candidate of length n (first success wins, lexicographic).
LengthSearch search_length(CodeKind kind, std::size_t k, std::size_t t, const FieldPtr& field, std::size_t n,
                           const SearchOptions& options = {});

/// Exact FP(k, t, q) / FB(k, t, q). Starts at the best closed-form lower bound.
/// Throws BudgetExceeded with the proven interval.
SearchResult min_length(CodeKind kind, std::size_t k, std::size_t t, std::uint32_t q,
                        const SearchOptions& options = {});
SearchResult min_length_fp(std::size_t k, std::size_t t, std::uint32_t q, const SearchOptions& options = {});
SearchResult min_length_fb(std::size_t k, std::size_t t, std::uint32_t q, const SearchOptions& options = {});

enum class VerifyStatus { kConfirmed, kRefutedShorter, kRefutedInfeasible, kUndecided };

std::string to_string(VerifyStatus s);

struct VerifyResult {
  VerifyStatus status;
  std::optional<MatrixFq> witness;  // at claimed_n when confirmed, at claimed_n - 1 when refuted shorter
  std::string detail;
};

/// Confirms claimed_n by full enumeration at claimed_n and claimed_n - 1.
VerifyResult verify_value(CodeKind kind, std::size_t k, std::size_t t, std::uint32_t q, std::int64_t claimed_n,
                          const SearchOptions& options = {});

/// Re-checks a witness through the public serve API and verify_plan, one
/// request list at a time.
bool certify_witness(CodeKind kind, const MatrixFq& m, std::size_t t, std::uint64_t max_lists = kDefaultListBudget);

}  // namespace fbpir
