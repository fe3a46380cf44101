#include "fbpir/io.hpp"

#include <fstream>
#include <sstream>

#include "fbpir/errors.hpp"

namespace fbpir {

using json = nlohmann::json;

namespace {

std::uint64_t get_uint(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  const auto& v = j[key];
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw ParseError(std::string("field '") + key + "' must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

Vector get_vector(const json& j, std::size_t k, std::uint32_t q) {
  if (!j.is_array()) throw ParseError("vector must be an array");
  if (j.size() != k) throw DimensionMismatch("vector has " + std::to_string(j.size()) + " coordinates, expected " +
                                             std::to_string(k));
  Vector v;
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<std::int64_t>() < 0 || x.get<std::int64_t>() >= q)
      throw ParseError("field element out of range [0, " + std::to_string(q) + ")");
    v.push_back(x.get<Element>());
  }
  return v;
}

}  // namespace

json field_to_json(const Field& f) { return json{{"p", f.p()}, {"m", f.m()}, {"modulus", f.modulus()}}; }

json matrix_to_json(const MatrixFq& m) {
  json cols = json::array();
  for (const auto& c : m.columns()) cols.push_back(c);
  return json{{"q", m.field().q()}, {"k", m.k()}, {"columns", cols}};
}

MatrixFq matrix_from_json(const json& j, std::uint64_t q_cap) {
  const auto q = get_uint(j, "q");
  const auto k = get_uint(j, "k");
  if (k < 1) throw ParseError("k must be at least 1");
  if (!j.contains("columns") || !j["columns"].is_array()) throw ParseError("missing array 'columns'");
  auto field = Field::make(q, q_cap);
  std::vector<Vector> cols;
  for (const auto& c : j["columns"]) cols.push_back(get_vector(c, k, field->q()));
  return MatrixFq(field, k, std::move(cols));
}

std::string matrix_to_text(const MatrixFq& m) {
  std::ostringstream os;
  os << m.field().q() << ' ' << m.k() << ' ' << m.n() << '\n';
  for (std::size_t r = 0; r < m.k(); ++r) {
    for (std::size_t c = 0; c < m.n(); ++c) os << (c ? " " : "") << m.column(c)[r];
    os << '\n';
  }
  return os.str();
}

MatrixFq matrix_from_text(const std::string& text, std::uint64_t q_cap) {
  std::istringstream in(text);
  std::int64_t q, k, n;
  if (!(in >> q >> k >> n) || q < 0 || k < 1 || n < 0) throw ParseError("expected header 'q k n'");
  auto field = Field::make(static_cast<std::uint64_t>(q), q_cap);
  std::vector<Vector> cols(static_cast<std::size_t>(n), Vector(static_cast<std::size_t>(k)));
  for (std::int64_t r = 0; r < k; ++r)
    for (std::int64_t c = 0; c < n; ++c) {
      std::int64_t x;
      if (!(in >> x)) throw ParseError("matrix body ended early");
      if (x < 0 || x >= q) throw ParseError("field element out of range");
      cols[c][r] = static_cast<Element>(x);
    }
  std::string rest;
  if (in >> rest) throw ParseError("trailing data after the matrix");
  return MatrixFq(field, static_cast<std::size_t>(k), std::move(cols));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << text;
}

MatrixFq load_matrix(const std::filesystem::path& path, std::uint64_t q_cap) {
  const std::string text = read_file(path);
  const auto pos = text.find_first_not_of(" \t\r\n");
  if (pos != std::string::npos && (text[pos] == '{' || text[pos] == '[')) {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw ParseError(std::string("matrix JSON: ") + e.what());
    }
    return matrix_from_json(j, q_cap);
  }
  return matrix_from_text(text, q_cap);
}

json requests_to_json(const RequestList& l) {
  json reqs = json::array();
  for (const auto& e : l.entries()) reqs.push_back(json{{"vector", e.point.rep}, {"mult", e.mult}});
  return json{{"q", l.field().q()}, {"k", l.k()}, {"requests", reqs}};
}

RequestList requests_from_json(const json& j, const FieldPtr& field, std::size_t k) {
  if (get_uint(j, "q") != field->q()) throw DimensionMismatch("request list and matrix use different fields");
  if (get_uint(j, "k") != k) throw DimensionMismatch("request list and matrix have different k");
  if (!j.contains("requests") || !j["requests"].is_array()) throw ParseError("missing array 'requests'");
  std::vector<std::pair<Vector, std::size_t>> entries;
  for (const auto& r : j["requests"]) {
    if (!r.is_object() || !r.contains("vector")) throw ParseError("request needs a 'vector'");
    const std::size_t mult = r.contains("mult") ? get_uint(r, "mult") : 1;
    entries.emplace_back(get_vector(r["vector"], k, field->q()), mult);
  }
  return RequestList(field, k, entries);
}

RequestList load_requests(const std::filesystem::path& path, const FieldPtr& field, std::size_t k) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw ParseError(std::string("request JSON: ") + e.what());
  }
  return requests_from_json(j, field, k);
}

json plan_to_json(const RecoveryPlan& plan) {
  json out = json::array();
  for (const auto& a : plan.assignments) {
    std::vector<std::size_t> one_based;
    for (auto i : a.indices) one_based.push_back(i + 1);
    out.push_back(json{{"request", a.request.rep},
                       {"indices", one_based},
                       {"coefficients", a.coefficients},
                       {"scalar", a.scalar}});
  }
  return json{{"assignments", out}};
}

RecoveryPlan plan_from_json(const json& j) {
  if (!j.is_object() || !j.contains("assignments") || !j["assignments"].is_array())
    throw ParseError("plan needs an 'assignments' array");
  RecoveryPlan plan;
  for (const auto& a : j["assignments"]) {
    Assignment as;
    try {
      as.request.rep = a.at("request").get<Vector>();
      for (auto i : a.at("indices").get<std::vector<std::size_t>>()) {
        if (i == 0) throw ParseError("plan indices are 1-based");
        as.indices.push_back(i - 1);
      }
      as.coefficients = a.at("coefficients").get<std::vector<Element>>();
      as.scalar = a.value("scalar", Element{1});
    } catch (const json::exception& e) {
      throw ParseError(std::string("plan: ") + e.what());
    }
    plan.assignments.push_back(std::move(as));
  }
  return plan;
}

}  // namespace fbpir
