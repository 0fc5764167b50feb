// Acceptance runner: one PASS/FAIL line per criterion, failing checks listed below it.
#include <cstdio>
#include <cstdlib>
#include <algorithm>
#include <cstring>
#include <exception>
#include <string>
#include <thread>

#include "gausseig/verify.hpp"

using namespace gausseig;

namespace {

bool report(int id, const VerifyConfig& cfg, bool verbose) {
  try {
    const auto r = run_criterion(id, cfg);
    std::printf("%s criterion %2d: %s (%zu checks, %.1fs)\n", r.pass() ? "PASS" : "FAIL", id, r.title.c_str(),
                r.checks.size(), r.seconds);
    for (const auto& c : r.checks) {
      if (verbose || !c.pass) {
        std::printf("    %s %s: lhs=%.12g rhs=%.12g slack=%.3g\n", c.pass ? "ok  " : "FAIL", c.name.c_str(), c.lhs,
                    c.rhs, c.slack);
      }
    }
    return r.pass();
  } catch (const std::exception& e) {
    std::printf("FAIL criterion %2d: %s (exception: %s)\n", id, criterion_title(id), e.what());
    return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  bool verbose = false;
  VerifyConfig cfg;
  cfg.workers = std::max(1u, std::thread::hardware_concurrency());
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (!std::strcmp(argv[i], "--verbose")) {
      verbose = true;
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N] [--verbose]\n");
      return 2;
    }
  }
  if (only < 0 || only > kCriteria) {
    std::fprintf(stderr, "criterion must be in 1..%d\n", kCriteria);
    return 2;
  }
  bool ok = true;
  for (int id = 1; id <= kCriteria; ++id) {
    if (only == 0 || only == id) ok = report(id, cfg, verbose) && ok;
  }
  return ok ? 0 : 1;
}
