#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tto/report.hpp"
#include "tto/tolerances.hpp"

namespace tto {

struct VerifyOptions {
  std::string suite = "all";
  std::uint64_t seed = 7;
  int degree_max = 3;
  Tolerances tol;
  // Task ids to run; empty runs every task of the suite.
  std::vector<std::string> tasks;
};

struct TaskResult {
  CheckReport report;
  double elapsed = 0;  // seconds
};

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  int degree_max = 0;
  Tolerances tol;
  std::vector<TaskResult> tasks;  // sorted by task id

  bool passed() const;
  int count(bool passed, bool skipped) const;
};

// Suite names accepted by run_verify, without "all".
const std::vector<std::string>& suite_names();

// Runs one suite or all of them. Every task draws from its own stream derived from the seed and
// the task id, so results do not depend on which suites run. Throws InvalidParams for an unknown
// suite, a degree below 1, or a requested task id that the suite does not have.
VerificationReport run_verify(const VerifyOptions& opts);

}  // namespace tto
