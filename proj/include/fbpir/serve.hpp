#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fbpir/linalg.hpp"

namespace fbpir {

/// Multiset of requested vectors, stored as projective points with
/// multiplicities. Entries are sorted by point and merged.
class RequestList {
 public:
  struct Entry {
    ProjectivePoint point;
    std::size_t mult;
  };

  /// Each input vector is canonicalized; zero vectors throw ZeroVector and
  /// zero multiplicities throw InvalidInput. Total multiplicity must be >= 1.
  RequestList(FieldPtr field, std::size_t k, const std::vector<std::pair<Vector, std::size_t>>& entries);

  static RequestList from_vectors(FieldPtr field, std::size_t k, const std::vector<Vector>& vectors);
  static RequestList repeated(FieldPtr field, std::size_t k, const Vector& v, std::size_t t);

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  std::size_t k() const { return k_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t total() const { return total_; }
  /// Representatives, each repeated by its multiplicity.
  std::vector<Vector> expanded() const;

 private:
  FieldPtr field_;
  std::size_t k_;
  std::vector<Entry> entries_;
  std::size_t total_ = 0;
};

/// One request served by one index set. Indices are 0-based here and 1-based
/// in the JSON form.
struct Assignment {
  ProjectivePoint request;
  std::vector<std::size_t> indices;
  std::vector<Element> coefficients;
  /// sum_j coefficients[j] * column(indices[j]) == scalar * request.rep
  Element scalar = 1;
};

struct RecoveryPlan {
  std::vector<Assignment> assignments;
};

struct RecoverySet {
  std::vector<std::size_t> indices;
  std::vector<Element> coefficients;  // witness with scalar one
};

/// All inclusion-minimal recovery sets of size <= max_size (0 means k), in
/// increasing size then lexicographic order.
std::vector<RecoverySet> minimal_recovery_sets(const MatrixFq& m, const ProjectivePoint& v, std::size_t max_size = 0);

enum class ServeStatus { kServed, kUnservable, kBudgetExhausted };

struct ServeOutcome {
  ServeStatus status = ServeStatus::kUnservable;
  std::optional<RecoveryPlan> plan;
  std::uint64_t nodes = 0;
};

/// Exact search. max_nodes = 0 means unlimited.
ServeOutcome try_serve(const MatrixFq& m, const RequestList& requests, std::uint64_t max_nodes = 0);

/// Plan if one exists, empty optional if provably none.
std::optional<RecoveryPlan> can_serve(const MatrixFq& m, const RequestList& requests);

/// Direct arithmetic check of every plan invariant against m and requests.
bool verify_plan(const MatrixFq& m, const RequestList& requests, const RecoveryPlan& plan);

struct PirCheck {
  bool ok = false;
  std::optional<ProjectivePoint> witness;  // a point that cannot be served t times
};

struct BatchCheck {
  bool ok = false;
  std::optional<RequestList> witness;  // an unservable list
};

inline constexpr std::uint64_t kDefaultListBudget = 10'000'000;

PirCheck is_functional_pir(const MatrixFq& m, std::size_t t);

/// Throws InstanceTooLarge if the number of request multisets exceeds max_lists.
BatchCheck is_functional_batch(const MatrixFq& m, std::size_t t, std::uint64_t max_lists = kDefaultListBudget);

/// Column index set for matrices with at most 128 columns.
class ColumnSet {
 public:
  static constexpr std::size_t kMaxColumns = 128;

  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  bool disjoint(const ColumnSet& o) const { return !(w_[0] & o.w_[0]) && !(w_[1] & o.w_[1]); }
  std::size_t count() const { return std::popcount(w_[0]) + std::popcount(w_[1]); }
  ColumnSet operator|(const ColumnSet& o) const {
    ColumnSet r;
    r.w_ = {w_[0] | o.w_[0], w_[1] | o.w_[1]};
    return r;
  }
  ColumnSet& operator|=(const ColumnSet& o) {
    w_[0] |= o.w_[0];
    w_[1] |= o.w_[1];
    return *this;
  }
  ColumnSet& operator^=(const ColumnSet& o) {
    w_[0] ^= o.w_[0];
    w_[1] ^= o.w_[1];
    return *this;
  }
  bool operator==(const ColumnSet&) const = default;
  std::vector<std::size_t> indices() const;

 private:
  std::array<std::uint64_t, 2> w_{0, 0};
};

/// A request group for the packing search: a projective point index of a
/// PackedSpace and how many disjoint recovery sets it needs.
struct Demand {
  std::uint32_t point;
  std::uint32_t mult;
};

/// Minimal recovery sets of every projective point for one matrix, plus the
/// exact disjoint set-packing search. Reusable across matrices of the same
/// space; not thread-safe.
class RecoveryIndex {
 public:
  explicit RecoveryIndex(const PackedSpace& space);

  /// Recomputes the index for the given packed columns (all nonzero).
  void build(std::span<const PackedSpace::Packed> columns, std::size_t max_size = 0);

  std::size_t n() const { return n_; }
  const std::vector<ColumnSet>& sets(std::uint32_t point) const { return sets_[point]; }
  /// Number of columns lying on the point's line.
  std::uint32_t line_count(std::uint32_t point) const { return line_count_[point]; }

  /// Disjoint sets for every demand; `chosen` receives one set per unit of
  /// multiplicity, grouped by demand in input order.
  ServeStatus serve(std::span<const Demand> demands, std::vector<ColumnSet>* chosen = nullptr,
                    std::uint64_t max_nodes = 0);
  std::uint64_t nodes() const { return nodes_; }

 private:
  struct Group {
    std::uint32_t point;
    std::uint32_t need;
    std::int32_t last;
    std::size_t first_choice;
  };

  void dfs_sets(std::size_t start, std::size_t depth, ColumnSet mask, std::size_t max_size);
  bool pack(ColumnSet used, std::size_t free_columns);

  const PackedSpace& space_;
  std::size_t n_ = 0;
  std::vector<PackedSpace::Packed> columns_;
  std::vector<std::vector<ColumnSet>> sets_;
  std::vector<std::uint32_t> line_count_;
  std::vector<std::uint8_t> level_;
  std::vector<PackedSpace::Packed> span_;
  std::vector<std::vector<PackedSpace::Packed>> sums_;
  // packing state
  std::vector<Group> groups_;
  std::vector<std::pair<std::size_t, std::size_t>> picks_;  // (group, set index)
  std::uint64_t nodes_ = 0;
  std::uint64_t max_nodes_ = 0;
  bool exhausted_ = false;
};

/// Every multiset of `t` points out of `num_points`, as demand lists, in
/// lexicographic order of the nondecreasing point sequence.
std::vector<std::vector<Demand>> all_request_multisets(std::uint32_t num_points, std::size_t t);

/// C(num_points + t - 1, t), saturating at UINT64_MAX.
std::uint64_t multiset_count(std::uint64_t num_points, std::uint64_t t);

}  // namespace fbpir
