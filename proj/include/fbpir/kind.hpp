#pragma once

#include <string>
#include <string_view>

#include "fbpir/errors.hpp"

namespace fbpir {

/// Functional PIR (serve v^t for every v) or functional batch (serve every
/// list of t vectors).
enum class CodeKind { kFP, kFB };

inline std::string to_string(CodeKind k) { return k == CodeKind::kFP ? "FP" : "FB"; }

inline CodeKind parse_kind(std::string_view s) {
  if (s == "FP" || s == "fp") return CodeKind::kFP;
  if (s == "FB" || s == "fb") return CodeKind::kFB;
  throw InvalidInput("kind must be FP or FB, got '" + std::string(s) + "'");
}

}  // namespace fbpir
