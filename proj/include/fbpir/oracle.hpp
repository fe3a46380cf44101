#pragma once

#include <cstddef>
#include <vector>

#include "fbpir/kind.hpp"
#include "fbpir/linalg.hpp"

// Exponential reference implementations, independent of the serve engine.
// Test and acceptance use only.
namespace fbpir::oracle {

/// Tries every labelling of the columns with a request number or "unused"
/// and checks each labelled group by in_span.
bool can_serve(const MatrixFq& m, const std::vector<Vector>& requests);

/// Whether some raw column tuple of length n (every nonzero vector allowed at
/// every position, no symmetry reduction) is a t-functional PIR/batch code.
bool exists_code(CodeKind kind, std::size_t k, std::size_t t, const FieldPtr& field, std::size_t n);

/// All orderings of GF(q)^k checked directly; true iff some g has g_i + a_i
/// running over the group.
bool hall_exists(std::size_t k, const FieldPtr& field, const std::vector<Vector>& a);

}  // namespace fbpir::oracle
