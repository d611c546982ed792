#pragma once

#include <map>
#include <string>
#include <vector>

namespace tto {

// Three significant digits, scientific.
std::string fmt(double v);

// Pass/fail evidence for one verification task. Repeated residual names keep the worst value.
struct CheckReport {
  std::string id;
  bool passed = true;
  bool skipped = false;
  std::map<std::string, double> residuals;
  std::map<std::string, long long> dimensions;
  std::vector<std::string> notes;

  // value must be <= limit (NaN fails); keeps the maximum.
  void check(const std::string& name, double value, double limit);
  // value must be > limit; keeps the minimum. Use a "min_" name so absorb() keeps minima too.
  void check_above(const std::string& name, double value, double limit);
  void require(const std::string& name, bool ok);
  void record(const std::string& name, double value);
  void dimension(const std::string& name, long long value) { dimensions[name] = value; }
  void fail(const std::string& why);
  void note(const std::string& text) { notes.push_back(text); }
  // Folds another report in; its names are kept as they are.
  void absorb(const CheckReport& other);
};

}  // namespace tto
