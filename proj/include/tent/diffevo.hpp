#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace tent {

// Control parameters for classic rand/1/bin differential evolution.
// population_size 0 resolves to max(20, 10·dimension).
struct DEConfig {
  int population_size = 0;
  double scale_factor = 0.8;    // F
  double crossover_rate = 0.9;  // CR
  int max_generations = 200;
  // When set: stop once the best value has improved by less than this over
  // the last 30 generations.
  std::optional<double> target_tolerance;
  std::uint64_t seed = 0;
};

struct BoxBounds {
  std::vector<double> lower;
  std::vector<double> upper;
  std::size_t dim() const { return lower.size(); }
};

enum class OptSense { maximize, minimize };

struct DEResult {
  std::vector<double> best_x;
  double best_value = 0.0;
  // history[g] = best value after generation g (index 0 = initial population),
  // in the caller's sense; non-decreasing for maximize, non-increasing for
  // minimize by greedy selection.
  std::vector<double> history;
  long evaluations = 0;
};

// Classic rand/1/bin: uniform initialization in the box; mutant
// v = x_r1 + F·(x_r2 − x_r3) with r1, r2, r3 distinct and ≠ target;
// out-of-bounds components reflected back into the box; binomial crossover
// with one forced index; greedy selection. Fully deterministic given cfg.seed
// for any thread count (trial vectors are generated sequentially; only their
// evaluations run in parallel).
DEResult de_optimize(const std::function<double(const std::vector<double>&)>& objective,
                     const BoxBounds& bounds, const DEConfig& cfg,
                     OptSense sense, unsigned threads = 1);

}  // namespace tent
