#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "elab/scan.hpp"

namespace elab {

// One property suite: pass iff worst_margin <= threshold over every checked
// sample. Thresholds are either the run tolerance or a pinned per-suite
// constant (oracle agreement, filter idempotence, ...). Non-fatal suites are
// reported but never fail the run.
struct SuiteResult {
  std::string name;
  bool fatal = true;
  bool passed = true;
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  double threshold = 0.0;
  double worst_margin = 0.0;  // -inf when nothing contributed
  std::int64_t worst_index = -1;
  std::string worst_state_json;  // state attaining worst_margin, "" if n/a
  std::string note;
};

struct VerifySummary {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::vector<SuiteResult> suites;
  std::vector<std::string> warnings;
  bool all_passed = true;  // over fatal suites only
};

VerifySummary run_verify(std::uint64_t samples, std::uint64_t seed, double tol,
                         Exec exec);

std::string verify_to_json(const VerifySummary& v);

}  // namespace elab
