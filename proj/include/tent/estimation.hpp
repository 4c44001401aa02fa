#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "tent/prob.hpp"

namespace tent {

// Parametric family θ ↦ pmf over a finite ordered support, with box bounds on
// θ. Only scalar θ is supported by the fitting routine; the vector signature
// is kept for forward compatibility.
struct DiscreteModel {
  std::vector<int> support;
  std::function<double(const std::vector<double>& theta, int outcome)> pmf;
  std::vector<std::pair<double, double>> param_bounds;

  // pmf evaluated across the whole support at θ, in support order.
  std::vector<double> pmf_vector(const std::vector<double>& theta) const;
};

// Binomial(N, θ) with support {0..N} and θ ∈ [1e-6, 1−1e-6] (keeps the pmf
// strictly positive, so the q = 0 divergence convention never fires).
DiscreteModel binomial_model(int N);

struct EstimationResult {
  enum class Method { grid, golden_section };
  std::vector<double> theta_hat;
  double divergence_at_min = 0.0;
  long evaluations = 0;
  Method method = Method::golden_section;
};

// Minimum t-divergence estimate: θ̂ = argmin_θ D_t(p̂_n ‖ p_θ). Global coarse
// grid (201 points) over the box, then golden-section refinement of the best
// bracket down to |interval| < 1e-6.
EstimationResult fit_min_t_divergence(const std::vector<int>& samples,
                                      const DiscreteModel& model);

// Closed-form binomial MLE: (Σ samples)/(n·N).
double mle_binomial(const std::vector<int>& samples, int N);

// Inverse-CDF draws from the model at θ, consuming one uniform per sample.
std::vector<int> draw_samples(const DiscreteModel& model,
                              const std::vector<double>& theta, int n,
                              std::uint64_t seed);

// --- Experiment harnesses -------------------------------------------------

struct ContaminationConfig {
  int binomial_N = 100;
  double true_theta = 0.2;
  int sample_size = 200;    // clean draws per replicate
  int outlier_count = 10;   // appended on top of sample_size
  std::vector<int> outlier_values;  // drawn uniformly per outlier
  int replicates = 100;
  std::uint64_t seed = 0;
};

struct ContaminationRow {
  std::uint64_t seed;  // the replicate's derived RNG seed
  double theta_t;
  double theta_mle;
};

struct ContaminationReport {
  ContaminationConfig config;
  std::vector<ContaminationRow> rows;
  double median_t = 0.0, median_mle = 0.0;
  double mae_t = 0.0, mae_mle = 0.0;  // mean absolute error vs true_theta
};

// Per replicate: draw clean samples, append outlier_count contaminants drawn
// uniformly from outlier_values, then estimate with both estimators.
ContaminationReport run_contamination_experiment(const ContaminationConfig& cfg,
                                                 unsigned threads = 0);

struct BreakdownPoint {
  double eps;
  double median_t;
  double median_mle;
  std::vector<ContaminationRow> rows;
};

struct BreakdownReport {
  int binomial_N;
  double true_theta;
  int sample_size;
  int outlier_value;
  int replicates;
  std::uint64_t seed;
  std::vector<BreakdownPoint> points;
};

// For each ε: replace the last ⌊εn⌋ clean samples with outlier_value (exact
// contamination fraction), then estimate with both estimators.
BreakdownReport run_breakdown_sweep(int binomial_N, double true_theta,
                                    const std::vector<double>& eps_grid,
                                    int outlier_value, int n, int replicates,
                                    std::uint64_t seed, unsigned threads = 0);

struct ConsistencyPoint {
  int n;
  double median_abs_error;
  std::vector<double> abs_errors;
};

struct ConsistencyReport {
  int binomial_N;
  double true_theta;
  int replicates;
  std::uint64_t seed;
  std::vector<ConsistencyPoint> points;
};

// Median |θ̂_t − θ| on clean data across growing sample sizes.
ConsistencyReport run_consistency_curve(int binomial_N, double true_theta,
                                        const std::vector<int>& n_grid,
                                        int replicates, std::uint64_t seed,
                                        unsigned threads = 0);

}  // namespace tent
