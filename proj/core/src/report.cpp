#include "metaschwarz/report.hpp"

#include <algorithm>
#include <cmath>

namespace metaschwarz {

void Report::add(std::string name, double value, double threshold, Check::Bound bound) {
  const bool ok = bound == Check::Bound::upper ? value <= threshold : value > threshold;
  checks_.push_back({std::move(name), value, threshold, bound, ok && !std::isnan(value)});
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (Check c : other.checks_) {
    c.name = prefix + c.name;
    checks_.push_back(std::move(c));
  }
  for (const auto& [phase, ms] : other.timings_) timings_[prefix + phase] = ms;
}

bool Report::passed() const noexcept {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.passed; });
}

const Check* Report::first_failure() const noexcept {
  auto it = std::find_if(checks_.begin(), checks_.end(), [](const Check& c) { return !c.passed; });
  return it == checks_.end() ? nullptr : &*it;
}

const Check* Report::find(const std::string& name) const noexcept {
  auto it = std::find_if(checks_.begin(), checks_.end(), [&](const Check& c) { return c.name == name; });
  return it == checks_.end() ? nullptr : &*it;
}

}  // namespace metaschwarz
