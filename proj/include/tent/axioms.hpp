#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tent {

// One executable property of the t-entropy measure. `worst` is the smallest
// signed margin observed (distance from violating the property, after the
// stated tolerance); a check passes when every trial kept a margin ≥ 0.
struct AxiomCheck {
  std::string name;
  bool passed = true;
  double worst = 0.0;
  double tolerance = 0.0;
  int trials = 0;
};

struct AxiomSuiteResult {
  std::vector<AxiomCheck> checks;
  std::uint64_t seed = 0;
  int trials_per_check = 0;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

// Fuzzes `trials` random probability vectors / joint tables per property over
// c ∈ {0.1, 1, 10, 50} and evaluates every inequality and identity the
// t-entropy measure is required to satisfy. Deterministic under `seed`.
AxiomSuiteResult run_axiom_suite(std::uint64_t seed, int trials = 1000);

}  // namespace tent
