#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

namespace biskt {

struct Check {
  std::string name;
  bool passed = true;
  std::string witness; // first violation, empty when passed
};

struct CheckReport {
  std::vector<Check> checks;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](Check const& c) { return c.passed; });
  }

  Check const* first_failure() const {
    for (auto const& c : checks)
      if (!c.passed) return &c;
    return nullptr;
  }

  Check const* find(std::string const& name) const {
    for (auto const& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }

  Check& add(std::string name) { return checks.emplace_back(Check{std::move(name), true, {}}); }
};

inline void fail(Check& c, std::string witness) {
  if (!c.passed) return;
  c.passed = false;
  c.witness = std::move(witness);
}

inline std::ostream& operator<<(std::ostream& os, CheckReport const& r) {
  for (auto const& c : r.checks) {
    os << (c.passed ? "  pass  " : "  FAIL  ") << c.name;
    if (!c.passed) os << ": " << c.witness;
    os << '\n';
  }
  return os;
}

} // namespace biskt
