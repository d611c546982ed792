// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tto/verify.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Requirement {
  std::string task;
  long long min_cases = 0;
};

struct Criterion {
  std::string name;
  std::string suite;
  int degree_max;
  double seconds;
  std::vector<Requirement> required;
};

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool run_criterion(const Criterion& c) {
  tto::VerifyOptions o;
  o.suite = c.suite;
  o.degree_max = c.degree_max;
  o.seed = 7;
  std::vector<std::string> problems;
  auto t0 = Clock::now();
  tto::VerificationReport r;
  try {
    r = tto::run_verify(o);
  } catch (const std::exception& e) {
    problems.push_back(e.what());
  }
  const double elapsed = since(t0);
  std::map<std::string, const tto::CheckReport*> by_id;
  for (const auto& t : r.tasks) {
    by_id[t.report.id] = &t.report;
    if (!t.report.passed) problems.push_back(t.report.id + " failed");
  }
  for (const auto& req : c.required) {
    auto it = by_id.find(req.task);
    if (it == by_id.end()) {
      problems.push_back(req.task + " missing");
      continue;
    }
    if (it->second->skipped) problems.push_back(req.task + " skipped");
    if (req.min_cases > 0) {
      auto d = it->second->dimensions.find("cases");
      long long n = d == it->second->dimensions.end() ? 0 : d->second;
      if (n < req.min_cases)
        problems.push_back(req.task + " ran " + std::to_string(n) + " cases, need " + std::to_string(req.min_cases));
    }
  }
  if (elapsed > c.seconds) problems.push_back("took " + std::to_string(elapsed) + " s");
  const bool ok = problems.empty();
  std::cout << c.name << " " << (ok ? "PASS" : "FAIL") << " suite=" << c.suite << " degree_max=" << c.degree_max
            << " tasks=" << r.tasks.size() << " elapsed=" << elapsed << "s";
  for (const auto& p : problems) std::cout << " [" << p << "]";
  std::cout << "\n";
  return ok;
}

struct CliRun {
  int code = -1;
  std::string out;
  double seconds = 0;
};

CliRun run_cli(const std::string& args) {
  CliRun r;
  auto t0 = Clock::now();
  std::string cmd = std::string(TTO_CLI_PATH) + " " + args;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe.release());
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.seconds = since(t0);
  return r;
}

bool end_to_end() {
  const std::string args = "verify all --degree-max 3 --seed 7 --no-timing";
  CliRun first = run_cli(args);
  CliRun second = run_cli(args);
  std::vector<std::string> problems;
  if (first.code != 0 || second.code != 0)
    problems.push_back("exit codes " + std::to_string(first.code) + "," + std::to_string(second.code));
  if (first.seconds > 60) problems.push_back("took " + std::to_string(first.seconds) + " s");
  if (first.out.empty() || first.out != second.out) problems.push_back("reports differ");
  const bool ok = problems.empty();
  std::cout << "AC11 " << (ok ? "PASS" : "FAIL") << " verify all exit=" << first.code << " elapsed=" << first.seconds
            << "s bytes=" << first.out.size();
  for (const auto& p : problems) std::cout << " [" << p << "]";
  std::cout << "\n";
  return ok;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"AC1", "projections", 5, 5, {{"projections.two_formulas", 30}, {"projections.idempotence", 30}}},
      {"AC2",
       "conjugations",
       5,
       5,
       {{"conjugations.involution_isometry", 30}, {"conjugations.symmetry", 30}}},
      {"AC3", "zero_symbol", 5, 10, {{"zero_symbol.constructed", 50}, {"zero_symbol.generic", 50}}},
      {"AC4",
       "rank_one",
       5,
       10,
       {{"rank_one.F2a", 20}, {"rank_one.F2b", 20}, {"rank_one.F4", 20}, {"rank_one.F6", 20}}},
      {"AC5", "defect", 5, 5, {{"defect.rank_one", 20}}},
      {"AC6", "factorization", 5, 10, {{"factorization.identities", 20}}},
      {"AC7",
       "kernels",
       5,
       20,
       {{"kernels.divisor_sweep", 1}, {"kernels.random", 30}, {"kernels.correspondence", 0}}},
      {"AC8", "lattice", 6, 20, {{"lattice.invariant_subspaces", 1}, {"lattice.cyclicity", 20}}},
      {"AC9", "transfer", 5, 10, {{"transfer.isometry", 0}, {"transfer.diagram", 20}}},
      {"AC10", "oracle", 5, 10, {{"oracle.inner_products", 100}}},
  };
  bool all = true;
  for (const auto& c : criteria) all = run_criterion(c) && all;
  all = end_to_end() && all;
  std::cout << (all ? "ALL PASS" : "SOME FAILED") << "\n";
  return all ? 0 : 1;
}
