#pragma once

#include <string>
#include <vector>

namespace topcorr {

struct Violation {
  std::string check;
  std::string witness;
};

/// Report-valued validation: empty means pass.
class ValidationReport {
 public:
  void fail(std::string check, std::string witness) {
    violations_.push_back({std::move(check), std::move(witness)});
  }
  void merge(const ValidationReport& other, const std::string& prefix = {}) {
    for (const auto& v : other.violations_)
      violations_.push_back({prefix.empty() ? v.check : prefix + "." + v.check, v.witness});
  }
  bool ok() const { return violations_.empty(); }
  explicit operator bool() const { return ok(); }
  const std::vector<Violation>& violations() const { return violations_; }

  std::string summary() const {
    if (ok()) return "pass";
    std::string s;
    for (const auto& v : violations_) {
      if (!s.empty()) s += "; ";
      s += v.check + " [" + v.witness + "]";
    }
    return s;
  }

 private:
  std::vector<Violation> violations_;
};

}  // namespace topcorr
