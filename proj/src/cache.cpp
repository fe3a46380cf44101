#include "fbpir/cache.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

#include "json.hpp"

#include "fbpir/errors.hpp"
#include "fbpir/solver.hpp"

namespace fbpir {

using json = nlohmann::json;

namespace {

json to_json(const CacheEntry& e) {
  json j{{"kind", to_string(e.kind)}, {"k", e.k},   {"t", e.t},
         {"q", e.q},                  {"lb", e.lb}, {"ub", e.ub},
         {"provenance", e.provenance}, {"exhausted_below", e.exhausted_below},
         {"tool_version", e.tool_version}, {"timestamp", e.timestamp}};
  j["value"] = e.value ? json(*e.value) : json(nullptr);
  if (!e.witness.empty()) j["witness"] = e.witness;
  if (!e.witness_path.empty()) j["witness_path"] = e.witness_path;
  return j;
}

CacheEntry from_json(const json& j) {
  CacheEntry e;
  e.kind = parse_kind(j.at("kind").get<std::string>());
  e.k = j.at("k").get<std::int64_t>();
  e.t = j.at("t").get<std::int64_t>();
  e.q = j.at("q").get<std::uint32_t>();
  if (j.contains("value") && !j["value"].is_null()) e.value = j["value"].get<std::int64_t>();
  e.lb = j.value("lb", e.value.value_or(0));
  e.ub = j.value("ub", e.value.value_or(0));
  e.provenance = j.value("provenance", "");
  if (j.contains("witness")) e.witness = j["witness"].get<std::vector<Vector>>();
  e.witness_path = j.value("witness_path", "");
  e.exhausted_below = j.value("exhausted_below", false);
  e.tool_version = j.value("tool_version", "");
  e.timestamp = j.value("timestamp", "");
  return e;
}

}  // namespace

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ValueCache::ValueCache(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      merge(from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ParseError("cache " + path_.string() + ":" + std::to_string(lineno) + ": " + e.what());
    } catch (const InvalidInput& e) {
      throw ParseError("cache " + path_.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void ValueCache::merge(const CacheEntry& e) {
  const Key key{e.kind, e.k, e.t, e.q};
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    entries_.emplace(key, e);
    return;
  }
  CacheEntry& old = it->second;
  if (old.value && e.value && *old.value != *e.value && old.tool_version == e.tool_version)
    throw CacheMismatch("cached " + to_string(e.kind) + "(" + std::to_string(e.k) + "," + std::to_string(e.t) + "," +
                        std::to_string(e.q) + ") = " + std::to_string(*old.value) + " but recomputed " +
                        std::to_string(*e.value));
  if (!old.value || e.value) old = e;
}

std::optional<CacheEntry> ValueCache::find(CodeKind kind, std::int64_t k, std::int64_t t, std::uint32_t q) const {
  auto it = entries_.find(Key{kind, k, t, q});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void ValueCache::record(const CacheEntry& entry) {
  merge(entry);
  std::ofstream out(path_, std::ios::app);
  if (!out) throw InvalidInput("cannot append to cache " + path_.string());
  out << to_json(entry).dump() << '\n';
}

CacheEntry ValueCache::from_search(const SearchResult& r, const std::string& witness_path) {
  CacheEntry e;
  e.kind = r.kind;
  e.k = static_cast<std::int64_t>(r.k);
  e.t = static_cast<std::int64_t>(r.t);
  e.q = r.q;
  e.value = r.n_min;
  e.lb = e.ub = r.n_min;
  e.provenance = std::string("exhaustive search, ") + (r.exhausted_below ? "length n-1 exhausted" : "started at proven lower bound");
  e.witness = r.witness.columns();
  e.witness_path = witness_path;
  e.exhausted_below = r.exhausted_below;
  e.tool_version = kSolverVersion;
  e.timestamp = utc_timestamp();
  return e;
}

}  // namespace fbpir
