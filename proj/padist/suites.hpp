#pragma once

// Verification suites run from a job configuration.  Each check yields one
// record; a check that throws becomes a failing record carrying the error.

#include <string>
#include <vector>

#include "padist/config.hpp"
#include "padist/report.hpp"

namespace padist {

struct SuiteOptions {
  // Prefix of the reproduction command, e.g. "padist run --config job.json --seed 7".
  std::string repro_base = "padist run";
  // Keep only the record with this id (empty keeps all).
  std::string only;
};

Report run_suites(const Environment& env, const std::vector<std::string>& suites, const SuiteOptions& opt = {});

}  // namespace padist
