// One PASS/FAIL line per acceptance criterion. Usage: fbpir_acceptance [fast|full]
#include <cstdio>
#include <string>

#include "fbpir/acceptance.hpp"

int main(int argc, char** argv) {
  const std::string suite_name = argc > 1 ? argv[1] : "fast";
  const auto suite = fbpir::parse_suite(suite_name);
  int failed = 0;
  const auto results = fbpir::run_acceptance(suite, [&](const fbpir::CriterionResult& r) {
    std::printf("%s criterion %d: %s (%.2f s)%s%s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.detail.empty() ? "" : " | ", r.detail.c_str());
    std::fflush(stdout);
    failed += !r.pass;
  });
  std::printf("%zu/%d criteria passed (%s suite)\n", results.size() - failed, fbpir::kCriterionCount,
              suite_name.c_str());
  return failed == 0 && static_cast<int>(results.size()) == fbpir::kCriterionCount ? 0 : 1;
}
