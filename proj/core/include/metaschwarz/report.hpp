#pragma once

#include <map>
#include <string>
#include <vector>

namespace metaschwarz {

/// One measured quantity against its threshold. Upper-bound checks pass when
/// value <= threshold; lower-bound checks (negative controls) pass when
/// value > threshold.
struct Check {
  enum class Bound { upper, lower };

  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  Bound bound = Bound::upper;
  bool passed = false;
};

class Report {
 public:
  void add(std::string name, double value, double threshold, Check::Bound bound = Check::Bound::upper);
  void merge(const Report& other, const std::string& prefix = {});
  void set_timing(const std::string& phase, double milliseconds) { timings_[phase] = milliseconds; }

  [[nodiscard]] bool passed() const noexcept;
  [[nodiscard]] const std::vector<Check>& checks() const noexcept { return checks_; }
  [[nodiscard]] const std::map<std::string, double>& timings() const noexcept { return timings_; }
  /// First failing check, or nullptr.
  [[nodiscard]] const Check* first_failure() const noexcept;
  [[nodiscard]] const Check* find(const std::string& name) const noexcept;

 private:
  std::vector<Check> checks_;
  std::map<std::string, double> timings_;
};

}  // namespace metaschwarz
