#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "fbpir/kind.hpp"
#include "fbpir/linalg.hpp"

namespace fbpir {

struct SearchResult;

struct CacheEntry {
  CodeKind kind = CodeKind::kFB;
  std::int64_t k = 0;
  std::int64_t t = 0;
  std::uint32_t q = 0;
  std::optional<std::int64_t> value;  // exact value, absent for an interval
  std::int64_t lb = 0;
  std::int64_t ub = 0;
  std::string provenance;
  std::vector<Vector> witness;  // columns, empty when not recorded
  std::string witness_path;
  bool exhausted_below = false;
  std::string tool_version;
  std::string timestamp;
};

/// Append-only JSON-lines store of computed values. Later lines for the same
/// key refine earlier ones; a conflicting exact value under the same tool
/// version raises CacheMismatch instead of being overwritten.
class ValueCache {
 public:
  using Key = std::tuple<CodeKind, std::int64_t, std::int64_t, std::uint32_t>;

  /// Loads the file when it exists. Malformed lines raise ParseError.
  explicit ValueCache(std::filesystem::path path);

  const std::filesystem::path& path() const { return path_; }
  std::optional<CacheEntry> find(CodeKind kind, std::int64_t k, std::int64_t t, std::uint32_t q) const;
  std::size_t size() const { return entries_.size(); }

  /// Appends one line. Throws CacheMismatch on a conflicting exact value.
  void record(const CacheEntry& entry);

  static CacheEntry from_search(const SearchResult& r, const std::string& witness_path = "");

 private:
  void merge(const CacheEntry& e);

  std::filesystem::path path_;
  std::map<Key, CacheEntry> entries_;
};

std::string utc_timestamp();

}  // namespace fbpir
