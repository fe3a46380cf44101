#include "fbpir/solver.hpp"

#include <algorithm>
#include <chrono>
#include <string>

#include "fbpir/bounds.hpp"
#include "fbpir/errors.hpp"

namespace fbpir {

// -------------------------------------------------------- CandidateEnumerator

CandidateEnumerator::CandidateEnumerator(const PackedSpace& space, std::size_t n, bool systematic)
    : space_(space), n_(n), systematic_(systematic) {
  const std::size_t k = space_.k();
  place_.assign(k, 1);
  for (std::size_t pos = k - 1; pos-- > 0;) place_[pos] = place_[pos + 1] * space_.field().q();
  if (n_ < k) {
    done_ = true;
    free_len_ = 0;
    return;
  }
  free_len_ = systematic_ ? n_ - k : n_;
  seq_.assign(free_len_, 0);
  basis_.assign(free_len_ + 1, std::vector<PackedSpace::Packed>(k, 0));
  rank_.assign(free_len_ + 1, 0);
}

std::ptrdiff_t CandidateEnumerator::carry_position(std::ptrdiff_t j) const {
  const std::uint32_t last = space_.num_points() - 1;
  while (j >= 0 && seq_[static_cast<std::size_t>(j)] == last) --j;
  return j;
}

bool CandidateEnumerator::extend(std::size_t j) {
  if (systematic_) return true;
  const std::size_t k = space_.k();
  const std::uint32_t q = space_.field().q();
  basis_[j + 1] = basis_[j];
  auto& basis = basis_[j + 1];
  PackedSpace::Packed v = space_.point_rep(seq_[j]);
  for (std::size_t pos = 0; pos < k && v; ++pos) {
    const Element d = (v / place_[pos]) % q;
    if (d == 0) continue;
    if (basis[pos]) {
      v = space_.sub(v, space_.scale(d, basis[pos]));
    } else {
      basis[pos] = space_.scale(space_.field().inv(d), v);
      v = 0;
      rank_[j + 1] = rank_[j] + 1;
      return rank_[j + 1] + (free_len_ - j - 1) >= k;
    }
  }
  rank_[j + 1] = rank_[j];
  return rank_[j + 1] + (free_len_ - j - 1) >= k;
}

bool CandidateEnumerator::advance_from(std::ptrdiff_t pos, bool increment) {
  while (true) {
    if (pos < 0) {
      done_ = true;
      return false;
    }
    const auto p = static_cast<std::size_t>(pos);
    if (increment) {
      ++seq_[p];
      std::fill(seq_.begin() + pos + 1, seq_.end(), seq_[p]);
    }
    increment = true;
    bool ok = true;
    for (std::size_t j = p; j < free_len_; ++j) {
      if (!extend(j)) {
        pos = carry_position(static_cast<std::ptrdiff_t>(j));
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
}

bool CandidateEnumerator::next() {
  if (done_) return false;
  bool ok;
  if (!started_) {
    started_ = true;
    if (free_len_ == 0) {
      ok = systematic_;  // n == k: the identity is the only systematic candidate
      if (!systematic_) ok = false;
    } else {
      ok = advance_from(0, false);
    }
  } else {
    ok = free_len_ == 0 ? false : advance_from(carry_position(static_cast<std::ptrdiff_t>(free_len_) - 1), true);
  }
  if (!ok) {
    done_ = true;
    return false;
  }
  points_.clear();
  if (systematic_) {
    std::vector<std::uint32_t> units;
    for (std::size_t i = 0; i < space_.k(); ++i)
      units.push_back(static_cast<std::uint32_t>(space_.point_of(place_[i])));
    std::sort(units.begin(), units.end());
    points_ = units;
  }
  points_.insert(points_.end(), seq_.begin(), seq_.end());
  columns_.resize(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) columns_[i] = space_.point_rep(points_[i]);
  ++emitted_;
  return true;
}

// ------------------------------------------------------------ PropertyChecker

PropertyChecker::PropertyChecker(const PackedSpace& space, CodeKind kind, std::size_t t, std::uint64_t max_lists)
    : space_(space), kind_(kind), t_(t), index_(space), multiplicity_(space.num_points(), 0) {
  const auto tt = static_cast<std::uint32_t>(t);
  for (std::uint32_t pt = 0; pt < space.num_points(); ++pt) lists_.push_back({Demand{pt, tt}});
  if (kind == CodeKind::kFB) {
    const std::uint64_t count = multiset_count(space.num_points(), t);
    if (count > max_lists)
      throw InstanceTooLarge(std::to_string(count) + " request multisets exceed the budget of " +
                             std::to_string(max_lists));
    for (auto& ds : all_request_multisets(space.num_points(), t))
      if (ds.size() > 1) lists_.push_back(std::move(ds));
  }
}

bool PropertyChecker::check(std::span<const std::uint32_t> points, std::span<const PackedSpace::Packed> columns) {
  const std::size_t n = columns.size();
  std::fill(multiplicity_.begin(), multiplicity_.end(), 0);
  for (auto p : points) ++multiplicity_[p];
  // Recovery sets off the line of v have at least two columns.
  for (auto mv : multiplicity_)
    if (mv < t_ && 2 * t_ - mv > n) return false;
  index_.build(columns);
  for (std::size_t i = 0; i < lists_.size(); ++i) {
    if (index_.serve(lists_[i]) != ServeStatus::kServed) {
      if (i != 0) std::swap(lists_[i], lists_[0]);
      return false;
    }
  }
  return true;
}

// --------------------------------------------------------------------- search

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

MatrixFq matrix_from(const PackedSpace& space, std::span<const PackedSpace::Packed> cols) {
  std::vector<Vector> out;
  for (auto c : cols) out.push_back(space.decode(c));
  return MatrixFq(space.field_ptr(), space.k(), std::move(out));
}

}  // namespace

LengthSearch search_length(CodeKind kind, std::size_t k, std::size_t t, const FieldPtr& field, std::size_t n,
                           const SearchOptions& options) {
  if (k == 0 || t == 0) throw InvalidInput("k and t must be at least 1");
  PackedSpace space(field, k);
  PropertyChecker checker(space, kind, t, options.max_lists);
  CandidateEnumerator en(space, n, options.systematic);
  const auto t0 = Clock::now();
  while (en.next()) {
    if (options.max_nodes && en.emitted() > options.max_nodes)
      return LengthSearch{LengthOutcome::kBudget, std::nullopt, en.emitted()};
    if (options.max_seconds > 0 && (en.emitted() & 1023) == 0 && seconds_since(t0) > options.max_seconds)
      return LengthSearch{LengthOutcome::kBudget, std::nullopt, en.emitted()};
    if (checker.check(en.points(), en.columns()))
      return LengthSearch{LengthOutcome::kFound, matrix_from(space, en.columns()), en.emitted()};
  }
  return LengthSearch{LengthOutcome::kNone, std::nullopt, en.emitted()};
}

SearchResult min_length(CodeKind kind, std::size_t k, std::size_t t, std::uint32_t q, const SearchOptions& options) {
  if (k == 0 || t == 0) throw InvalidInput("k and t must be at least 1");
  auto field = Field::make(q);
  const auto closed = eval_bounds(kind, static_cast<std::int64_t>(k), static_cast<std::int64_t>(t), q,
                                  KnowledgeBase::empty(), BoundOptions{false});
  const std::int64_t start = std::max<std::int64_t>(1, options.start_length.value_or(closed.lb));
  const auto t0 = Clock::now();
  std::uint64_t candidates = 0;
  for (std::int64_t n = start;; ++n) {
    const auto res = search_length(kind, k, t, field, static_cast<std::size_t>(n), options);
    candidates += res.candidates;
    if (res.outcome == LengthOutcome::kBudget)
      throw BudgetExceeded("search budget exhausted at length " + std::to_string(n), n, closed.ub);
    if (res.outcome == LengthOutcome::kNone) {
      if (n >= closed.ub)
        throw Error("no " + to_string(kind) + " code found at the proven upper bound " + std::to_string(closed.ub));
      continue;
    }
    bool exhausted_below = n > start;
    if (!exhausted_below && options.certify_below) {
      if (n - 1 < static_cast<std::int64_t>(k)) {
        exhausted_below = true;  // no rank-k matrix is shorter than k
      } else {
        const auto below = search_length(kind, k, t, field, static_cast<std::size_t>(n - 1), options);
        candidates += below.candidates;
        if (below.outcome == LengthOutcome::kFound)
          throw Error("a code of length " + std::to_string(n - 1) + " beats the closed-form lower bound");
        exhausted_below = below.outcome == LengthOutcome::kNone;
      }
    }
    return SearchResult{kind, k, t, q, n, *res.witness, exhausted_below, start, candidates, seconds_since(t0)};
  }
}

SearchResult min_length_fp(std::size_t k, std::size_t t, std::uint32_t q, const SearchOptions& options) {
  return min_length(CodeKind::kFP, k, t, q, options);
}

SearchResult min_length_fb(std::size_t k, std::size_t t, std::uint32_t q, const SearchOptions& options) {
  return min_length(CodeKind::kFB, k, t, q, options);
}

std::string to_string(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::kConfirmed:
      return "confirmed";
    case VerifyStatus::kRefutedShorter:
      return "refuted_with_witness";
    case VerifyStatus::kRefutedInfeasible:
      return "refuted_infeasible";
    case VerifyStatus::kUndecided:
      return "undecided";
  }
  return "undecided";
}

VerifyResult verify_value(CodeKind kind, std::size_t k, std::size_t t, std::uint32_t q, std::int64_t claimed_n,
                          const SearchOptions& options) {
  if (claimed_n < 1) throw InvalidInput("claimed length must be at least 1");
  auto field = Field::make(q);
  try {
    if (claimed_n - 1 >= 1) {
      auto below = search_length(kind, k, t, field, static_cast<std::size_t>(claimed_n - 1), options);
      if (below.outcome == LengthOutcome::kBudget)
        return VerifyResult{VerifyStatus::kUndecided, std::nullopt, "budget exhausted at length " + std::to_string(claimed_n - 1)};
      if (below.outcome == LengthOutcome::kFound)
        return VerifyResult{VerifyStatus::kRefutedShorter, below.witness,
                            "a code of length " + std::to_string(claimed_n - 1) + " exists"};
    }
    auto at = search_length(kind, k, t, field, static_cast<std::size_t>(claimed_n), options);
    if (at.outcome == LengthOutcome::kBudget)
      return VerifyResult{VerifyStatus::kUndecided, std::nullopt, "budget exhausted at length " + std::to_string(claimed_n)};
    if (at.outcome == LengthOutcome::kNone)
      return VerifyResult{VerifyStatus::kRefutedInfeasible, std::nullopt,
                          "no code of length " + std::to_string(claimed_n) + " exists"};
    return VerifyResult{VerifyStatus::kConfirmed, at.witness, "exhaustive at lengths n-1 and n"};
  } catch (const InstanceTooLarge& e) {
    return VerifyResult{VerifyStatus::kUndecided, std::nullopt, e.what()};
  }
}

bool certify_witness(CodeKind kind, const MatrixFq& m, std::size_t t, std::uint64_t max_lists) {
  if (rank(m) != m.k()) return false;
  PackedSpace space(m.field_ptr(), m.k());
  std::vector<std::vector<Demand>> lists;
  if (kind == CodeKind::kFP) {
    for (std::uint32_t pt = 0; pt < space.num_points(); ++pt) lists.push_back({Demand{pt, static_cast<std::uint32_t>(t)}});
  } else {
    if (multiset_count(space.num_points(), t) > max_lists) throw InstanceTooLarge("too many request lists to certify");
    lists = all_request_multisets(space.num_points(), t);
  }
  for (const auto& ds : lists) {
    std::vector<std::pair<Vector, std::size_t>> e;
    for (const auto& d : ds) e.emplace_back(space.decode(space.point_rep(d.point)), d.mult);
    RequestList req(m.field_ptr(), m.k(), e);
    auto plan = can_serve(m, req);
    if (!plan || !verify_plan(m, req, *plan)) return false;
  }
  return true;
}

}  // namespace fbpir
