#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fbpir/kind.hpp"
#include "fbpir/linalg.hpp"
#include "fbpir/serve.hpp"

namespace fbpir {

enum class ConstructionName {
  kK2Projective,        // K2_PROJECTIVE
  kBinaryT2Even,        // BINARY_T2_EVEN
  kBinaryT2Odd,         // BINARY_T2_ODD
  kAllNonzeroRepeated,  // ALL_NONZERO_REPEATED
  kDoubleAllNonzero,    // DOUBLE_ALL_NONZERO
};

std::string to_string(ConstructionName n);
ConstructionName parse_construction(const std::string& s);

struct Construction {
  ConstructionName name;
  std::size_t k;
  std::size_t t;  // parameter t where the construction takes one, else 0
  std::uint32_t q;
  std::size_t s;  // repetition count where applicable, else 0
  MatrixFq matrix;
  std::size_t claimed_t;
  CodeKind claimed_kind;
};

/// Nonzero vectors of GF(q)^k in lexicographic order.
std::vector<Vector> nonzero_vectors(std::size_t k, const Field& f);

/// FB, k = 2: t = x(q+2) + y; x copies of PG(1,q) with every point doubled,
/// then the first ceil(2(q+1)y/(q+2)) entries of (points, points) in
/// lexicographic point order.
Construction construct_k2(std::size_t t, std::uint32_t q);

/// FB, t = q = 2, length ceil(3k/2). Even k: (I | e_{2i-1}+e_{2i}).
/// Odd k: (I | e_{2i}+e_{2i+1} | e_1).
Construction construct_binary_t2(std::size_t k);

/// FP: every nonzero vector s times, copy by copy; serves s(q^k+q-2)/2.
Construction construct_all_nonzero(std::size_t k, std::uint32_t q, std::size_t s);

/// FB: every nonzero vector twice; serves any list of q^k requests.
Construction construct_double_all_nonzero(std::size_t k, std::uint32_t q);

/// Two disjoint recovery sets for {a, b} in construct_binary_t2(k). Throws
/// InvalidInput for zero or badly sized vectors.
RecoveryPlan plan_binary_t2(std::size_t k, const Vector& a, const Vector& b);

/// v served s(q^k+q-2)/2 times by construct_all_nonzero(k, q, s): per copy
/// the q-1 singletons {alpha v} and the pairs {w, v+w} (q even) or
/// {v+w, v-w} (q odd).
RecoveryPlan plan_pir_partition(std::size_t k, std::uint32_t q, const ProjectivePoint& v, std::size_t s);

struct HallOrdering {
  std::size_t k;
  std::uint32_t q;
  std::vector<Vector> a;
  std::vector<Vector> g;  // g[i] + a[i] runs over the whole group
};

/// Orders GF(q)^k as g_1..g_n (n = q^k) so that g_i + a_i is again a
/// permutation. Throws SumNonzero when sum a_i != 0, WrongListSize when
/// |a| != q^k and InstanceTooLarge when q^k > 64.
HallOrdering hall_ordering(std::size_t k, std::uint32_t q, const std::vector<Vector>& a);

/// Serves a list of q^k nonzero requests with construct_double_all_nonzero(k, q).
/// Throws WrongListSize when the list total is not q^k.
RecoveryPlan plan_batch_double(std::size_t k, std::uint32_t q, const RequestList& requests);

/// Same, against a user matrix; throws WrongMatrix unless its columns are
/// every nonzero vector exactly twice. Indices refer to m's own order.
RecoveryPlan plan_batch_double(const MatrixFq& m, const RequestList& requests);

}  // namespace fbpir
