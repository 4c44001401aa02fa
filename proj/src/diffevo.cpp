#include "tent/diffevo.hpp"

#include <algorithm>
#include <cmath>

#include "tent/errors.hpp"
#include "tent/parallel.hpp"
#include "tent/rng.hpp"

namespace tent {

namespace {

// Folds a component back into [lo, hi] by reflection at whichever face it
// crossed. Reflection (vs clipping) keeps the search from piling up on the
// box faces. The loop terminates because every double reflection shrinks the
// excursion by the box width; the counter is a belt-and-braces clamp.
double reflect(double x, double lo, double hi) {
  int guard = 0;
  while (x < lo || x > hi) {
    if (x < lo) x = 2.0 * lo - x;
    if (x > hi) x = 2.0 * hi - x;
    if (++guard > 64) return std::clamp(x, lo, hi);
  }
  return x;
}

}  // namespace

DEResult de_optimize(
    const std::function<double(const std::vector<double>&)>& objective,
    const BoxBounds& bounds, const DEConfig& cfg, OptSense sense,
    unsigned threads) {
  std::size_t d = bounds.dim();
  if (d == 0 || bounds.upper.size() != d)
    throw Error(Errc::InvalidConfig, "bounds must be non-empty and same length");
  for (std::size_t j = 0; j < d; ++j) {
    if (!(bounds.lower[j] < bounds.upper[j]))
      throw Error(Errc::InvalidConfig,
                  "bounds must satisfy lower < upper componentwise");
  }
  int np = cfg.population_size > 0
               ? cfg.population_size
               : std::max(20, 10 * static_cast<int>(d));
  if (np < 4)
    throw Error(Errc::InvalidConfig, "population size must be >= 4");
  if (!(cfg.scale_factor > 0.0) || cfg.scale_factor > 2.0)
    throw Error(Errc::InvalidConfig, "scale factor F must be in (0, 2]");
  if (!(cfg.crossover_rate >= 0.0) || cfg.crossover_rate > 1.0)
    throw Error(Errc::InvalidConfig, "crossover rate CR must be in [0, 1]");
  if (cfg.max_generations < 0)
    throw Error(Errc::InvalidConfig, "max_generations must be >= 0");

  // Work in minimize space; flip at the reporting boundary.
  double flip = (sense == OptSense::maximize) ? -1.0 : 1.0;
  std::mt19937_64 rng(cfg.seed);
  long evaluations = 0;

  std::vector<std::vector<double>> pop(static_cast<std::size_t>(np),
                                       std::vector<double>(d));
  std::vector<double> value(static_cast<std::size_t>(np));
  for (auto& x : pop)
    for (std::size_t j = 0; j < d; ++j)
      x[j] = bounds.lower[j] +
             uniform_double(rng) * (bounds.upper[j] - bounds.lower[j]);
  parallel_for(static_cast<std::size_t>(np), threads,
               [&](std::size_t i) { value[i] = flip * objective(pop[i]); });
  evaluations += np;

  std::size_t best = 0;
  for (std::size_t i = 1; i < pop.size(); ++i)
    if (value[i] < value[best]) best = i;

  DEResult result;
  result.history.push_back(flip * value[best]);

  std::vector<std::vector<double>> trials(static_cast<std::size_t>(np),
                                          std::vector<double>(d));
  std::vector<double> trial_value(static_cast<std::size_t>(np));
  for (int gen = 1; gen <= cfg.max_generations; ++gen) {
    // Trial construction consumes the RNG sequentially so the trajectory is
    // independent of the evaluation thread count.
    for (std::size_t i = 0; i < pop.size(); ++i) {
      std::size_t r1, r2, r3;
      do { r1 = static_cast<std::size_t>(uniform_int(rng, 0, np - 1)); } while (r1 == i);
      do { r2 = static_cast<std::size_t>(uniform_int(rng, 0, np - 1)); } while (r2 == i || r2 == r1);
      do { r3 = static_cast<std::size_t>(uniform_int(rng, 0, np - 1)); } while (r3 == i || r3 == r1 || r3 == r2);
      std::size_t forced = static_cast<std::size_t>(
          uniform_int(rng, 0, static_cast<std::int64_t>(d) - 1));
      for (std::size_t j = 0; j < d; ++j) {
        double mutant = pop[r1][j] + cfg.scale_factor * (pop[r2][j] - pop[r3][j]);
        mutant = reflect(mutant, bounds.lower[j], bounds.upper[j]);
        bool cross = uniform_double(rng) < cfg.crossover_rate || j == forced;
        trials[i][j] = cross ? mutant : pop[i][j];
      }
    }
    parallel_for(static_cast<std::size_t>(np), threads, [&](std::size_t i) {
      trial_value[i] = flip * objective(trials[i]);
    });
    evaluations += np;
    for (std::size_t i = 0; i < pop.size(); ++i) {
      if (trial_value[i] <= value[i]) {  // greedy; ties move to the trial
        pop[i].swap(trials[i]);
        value[i] = trial_value[i];
        if (value[i] < value[best]) best = i;
      }
    }
    result.history.push_back(flip * value[best]);

    if (cfg.target_tolerance && result.history.size() > 30) {
      double now = result.history.back();
      double before = result.history[result.history.size() - 31];
      if (std::abs(now - before) < *cfg.target_tolerance) break;
    }
  }

  result.best_x = pop[best];
  result.best_value = flip * value[best];
  result.evaluations = evaluations;
  return result;
}

}  // namespace tent
