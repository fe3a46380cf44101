#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "fbpir/gf.hpp"
#include "fbpir/linalg.hpp"
#include "fbpir/serve.hpp"

namespace fbpir {

/// {"p", "m", "modulus"}
nlohmann::json field_to_json(const Field& f);

/// {"q", "k", "columns"}; columns as written, in the matrix's order.
nlohmann::json matrix_to_json(const MatrixFq& m);
MatrixFq matrix_from_json(const nlohmann::json& j, std::uint64_t q_cap = kDefaultFieldCap);

/// Plain text: "q k n" then k rows of n indices.
std::string matrix_to_text(const MatrixFq& m);
MatrixFq matrix_from_text(const std::string& text, std::uint64_t q_cap = kDefaultFieldCap);

/// Detects JSON by the first non-space character. Throws ParseError.
MatrixFq load_matrix(const std::filesystem::path& path, std::uint64_t q_cap = kDefaultFieldCap);

/// {"q", "k", "requests": [{"vector", "mult"}]}
nlohmann::json requests_to_json(const RequestList& l);
RequestList requests_from_json(const nlohmann::json& j, const FieldPtr& field, std::size_t k);
RequestList load_requests(const std::filesystem::path& path, const FieldPtr& field, std::size_t k);

/// Indices are written 1-based.
nlohmann::json plan_to_json(const RecoveryPlan& plan);
RecoveryPlan plan_from_json(const nlohmann::json& j);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace fbpir
