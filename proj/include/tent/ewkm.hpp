#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tent/errors.hpp"

namespace tent {

// n × p numeric matrix (row-major) with optional integer ground-truth labels.
struct Dataset {
  std::size_t n = 0;
  std::size_t p = 0;
  std::vector<double> x;  // n*p, row-major
  std::optional<std::vector<int>> labels;

  double at(std::size_t i, std::size_t l) const { return x[i * p + l]; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(x.data() + i * p, p);
  }
};

// Zero-mean, unit-variance copy (population σ per column; constant columns
// are centered only). Applied by the CLI and experiment pipelines before
// fitting so one λ grid serves all datasets; `fit` itself never preprocesses.
Dataset standardized(const Dataset& data);

enum class Regularizer { TEntropy, Shannon, None };

struct FitConfig {
  int k = 2;
  double lambda = 1.0;  // ignored by Regularizer::None
  Regularizer regularizer = Regularizer::TEntropy;
  int restarts = 20;
  int max_iterations = 100;
  double tolerance = 1e-6;  // convergence threshold on objective change
  std::uint64_t seed = 0;
};

struct WeightedClusteringState {
  std::size_t k = 0, p = 0;
  std::vector<double> centroids;  // k*p row-major
  std::vector<double> weights;    // k*p row-major, each row on the simplex
  std::vector<int> labels;        // n cluster ids in [0, k)
  double objective = 0.0;
  int iterations = 0;
};

// Per-restart summary used by reports (best-of and mean-over-restarts).
struct RestartOutcome {
  std::uint64_t seed = 0;
  double objective = 0.0;
  int iterations = 0;
  std::vector<int> labels;
};

// Each point goes to the cluster minimizing Σ_l W_jl·(x_il − θ_jl)²; ties to
// the lowest cluster id. Distance terms are summed order-independently so
// permuting feature columns cannot flip an assignment.
std::vector<int> assign(const Dataset& data,
                        const std::vector<double>& centroids,
                        const std::vector<double>& weights, std::size_t k);

// Centroid j = per-coordinate mean of the points labeled j (the weights
// factor out of the quadratic). Throws EmptyCluster if some label is absent.
std::vector<double> update_centroids(const Dataset& data,
                                     const std::vector<int>& labels,
                                     std::size_t k);

// D_jl = Σ_{i: label i = j} (x_il − θ_jl)².
std::vector<double> cluster_dispersions(const Dataset& data,
                                        const std::vector<int>& labels,
                                        const std::vector<double>& centroids,
                                        std::size_t k);

// Closed form W_jl ∝ exp(−D_jl/λ), computed with a max-shift.
std::vector<double> update_weights_shannon(std::span<const double> dispersion_row,
                                           double lambda);

// Minimizes Σ_l w_l·D_l − λ·Σ_l w_l·arctan(1/w_l) on the simplex. KKT
// stationarity gives w_l = g⁻¹((D_l + μ)/λ) with g(w) = arctan(1/w) − w/(1+w²)
// strictly decreasing; inner bisection inverts g, outer bisection finds μ so
// that Σ w_l = 1. Coordinates whose target reaches g(0⁺) = π/2 pin to 0.
std::vector<double> update_weights_t(std::span<const double> dispersion_row,
                                     double lambda);

// Full Eq.-form objective: Σ_i min_j Σ_l W_jl(x_il − θ_jl)² plus the
// regularizer term (−λ·Σ_jl W_jl·arctan(1/W_jl) for TEntropy,
// +λ·Σ_jl W_jl·log W_jl for Shannon, nothing for None).
double objective(const Dataset& data, const WeightedClusteringState& state,
                 const FitConfig& cfg);

// Seeded multi-restart coordinate descent: k-means++ seeding, uniform W;
// iterate assign → centroids → per-cluster weight rows until the objective
// change drops below tolerance. Returns the best restart by objective.
// `outcomes` (if given) receives one entry per restart in restart order;
// `traces` receives each restart's per-iteration objective sequence.
WeightedClusteringState fit(const Dataset& data, const FitConfig& cfg,
                            unsigned threads = 0,
                            std::vector<RestartOutcome>* outcomes = nullptr,
                            std::vector<std::vector<double>>* traces = nullptr);

}  // namespace tent
