#include "tto/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tto {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

void CheckReport::check(const std::string& name, double value, double limit) {
  auto it = residuals.find(name);
  if (it == residuals.end() || std::isnan(value) || value > it->second) residuals[name] = value;
  if (!(value <= limit)) fail(name + " = " + fmt(value) + " exceeds " + fmt(limit));
}

void CheckReport::check_above(const std::string& name, double value, double limit) {
  auto it = residuals.find(name);
  if (it == residuals.end() || std::isnan(value) || value < it->second) residuals[name] = value;
  if (!(value > limit)) fail(name + " = " + fmt(value) + " is not above " + fmt(limit));
}

void CheckReport::require(const std::string& name, bool ok) {
  if (!ok) fail(name + " does not hold");
}

void CheckReport::record(const std::string& name, double value) {
  auto it = residuals.find(name);
  if (it == residuals.end() || value > it->second) residuals[name] = value;
}

void CheckReport::fail(const std::string& why) {
  passed = false;
  if (std::find(notes.begin(), notes.end(), why) == notes.end() && notes.size() < 20) notes.push_back(why);
}

void CheckReport::absorb(const CheckReport& other) {
  passed = passed && other.passed;
  for (const auto& [k, v] : other.residuals) {
    auto it = residuals.find(k);
    const bool lower_bound = k.rfind("min_", 0) == 0;
    if (it == residuals.end() || (lower_bound ? v < it->second : v > it->second)) residuals[k] = v;
  }
  for (const auto& [k, v] : other.dimensions) dimensions[k] = v;
  for (const auto& n : other.notes)
    if (std::find(notes.begin(), notes.end(), n) == notes.end() && notes.size() < 20) notes.push_back(n);
}

}  // namespace tto
