#include "tent/ewkm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "tent/numeric.hpp"
#include "tent/parallel.hpp"
#include "tent/rng.hpp"

namespace tent {

namespace {

constexpr double kPi2 = 1.57079632679489661923;
constexpr double kRowSumTolerance = 1e-10;

// g(w) = arctan(1/w) − w/(1+w²); strictly decreasing from π/2 (w→0⁺) to 0,
// so bisection inverts it globally.
double g_of(double w) {
  return std::atan(1.0 / w) - w / (1.0 + w * w);
}

// g⁻¹(target) on [0, 1]; targets at or above g(0⁺) = π/2 pin the weight to 0.
// Monotone targets in, monotone weights out, to inner tolerance 1e-13.
double g_inverse(double target) {
  if (target >= kPi2) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-13) {
    double mid = 0.5 * (lo + hi);
    if (mid == 0.0 || g_of(mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Weighted squared distance from point row to centroid row, summed
// order-independently so feature permutations commute with assignment.
double weighted_dist2(std::span<const double> point, const double* centroid,
                      const double* weight_row, std::vector<double>& scratch) {
  scratch.clear();
  for (std::size_t l = 0; l < point.size(); ++l) {
    double d = point[l] - centroid[l];
    scratch.push_back(weight_row[l] * d * d);
  }
  return stable_sum_inplace(scratch);
}

double regularizer_term(const std::vector<double>& weights, std::size_t k,
                        std::size_t p, Regularizer reg, double lambda) {
  if (reg == Regularizer::None) return 0.0;
  std::vector<double> terms;
  terms.reserve(k * p);
  for (double w : weights) {
    if (w == 0.0) continue;  // 0·arctan(∞) = 0 and 0·log 0 = 0
    if (reg == Regularizer::TEntropy)
      terms.push_back(-lambda * w * (kPi2 - std::atan(w)));
    else
      terms.push_back(lambda * w * std::log(w));
  }
  return stable_sum_inplace(terms);
}

struct SingleFit {
  WeightedClusteringState state;
  std::vector<double> trace;
};

std::vector<double> update_weight_row(std::span<const double> D, double lambda,
                                      Regularizer reg) {
  switch (reg) {
    case Regularizer::TEntropy: return update_weights_t(D, lambda);
    case Regularizer::Shannon: return update_weights_shannon(D, lambda);
    case Regularizer::None:
      return std::vector<double>(D.size(), 1.0 / static_cast<double>(D.size()));
  }
  throw Error(Errc::InvalidConfig, "unknown regularizer");
}

// k-means++ seeding with unweighted squared Euclidean distances.
std::vector<double> seed_centroids(const Dataset& data, std::size_t k,
                                   std::mt19937_64& rng) {
  std::size_t n = data.n, p = data.p;
  std::vector<double> centroids(k * p);
  std::vector<double> scratch;
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  std::vector<double> ones(p, 1.0);

  std::size_t first =
      static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(n) - 1));
  std::copy_n(data.x.begin() + static_cast<std::ptrdiff_t>(first * p), p,
              centroids.begin());
  for (std::size_t i = 0; i < n; ++i)
    nearest[i] = weighted_dist2(data.row(i), centroids.data(), ones.data(), scratch);

  for (std::size_t j = 1; j < k; ++j) {
    double total = stable_sum(nearest);
    std::size_t pick;
    if (total > 0.0) {
      double u = uniform_double(rng) * total;
      double run = 0.0;
      pick = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        run += nearest[i];
        if (u < run) { pick = i; break; }
      }
    } else {
      // All remaining distances zero (duplicated points); any choice works.
      pick = static_cast<std::size_t>(
          uniform_int(rng, 0, static_cast<std::int64_t>(n) - 1));
    }
    std::copy_n(data.x.begin() + static_cast<std::ptrdiff_t>(pick * p), p,
                centroids.begin() + static_cast<std::ptrdiff_t>(j * p));
    for (std::size_t i = 0; i < n; ++i) {
      double d = weighted_dist2(data.row(i), centroids.data() + j * p,
                                ones.data(), scratch);
      nearest[i] = std::min(nearest[i], d);
    }
  }
  return centroids;
}

// Centroid update that keeps empty clusters' previous centroids (the public
// update_centroids throws instead; inside fit emptiness is already repaired
// or deliberately tolerated when repair is impossible).
void centroids_in_place(const Dataset& data, const std::vector<int>& labels,
                        std::size_t k, std::vector<double>& centroids) {
  std::size_t p = data.p;
  std::vector<double> sums(k * p, 0.0);
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t i = 0; i < data.n; ++i) {
    std::size_t j = static_cast<std::size_t>(labels[i]);
    ++sizes[j];
    for (std::size_t l = 0; l < p; ++l) sums[j * p + l] += data.at(i, l);
  }
  for (std::size_t j = 0; j < k; ++j) {
    if (sizes[j] == 0) continue;
    for (std::size_t l = 0; l < p; ++l)
      centroids[j * p + l] = sums[j * p + l] / static_cast<double>(sizes[j]);
  }
}

SingleFit fit_single(const Dataset& data, const FitConfig& cfg,
                     std::uint64_t seed) {
  std::size_t n = data.n, p = data.p;
  std::size_t k = static_cast<std::size_t>(cfg.k);
  std::mt19937_64 rng(seed);

  SingleFit out;
  WeightedClusteringState& st = out.state;
  st.k = k;
  st.p = p;
  st.centroids = seed_centroids(data, k, rng);
  st.weights.assign(k * p, 1.0 / static_cast<double>(p));
  st.labels.assign(n, 0);

  std::vector<double> scratch;
  auto labeled_objective = [&]() {
    std::vector<double> dist_terms(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t j = static_cast<std::size_t>(st.labels[i]);
      dist_terms[i] = weighted_dist2(data.row(i), st.centroids.data() + j * p,
                                     st.weights.data() + j * p, scratch);
    }
    KahanSum acc;
    for (double d : dist_terms) acc.add(d);
    return acc.value() +
           regularizer_term(st.weights, k, p, cfg.regularizer, cfg.lambda);
  };

  auto assign_and_repair = [&]() {
    st.labels = assign(data, st.centroids, st.weights, k);
    // Re-seed any empty cluster at the point farthest from its current
    // centroid (in the current weighted metric), then re-assign. Moving an
    // unused centroid can only create better options, so the objective never
    // increases. Bounded attempts; a still-empty cluster (possible only with
    // heavily duplicated points) is tolerated and simply attracts nothing.
    for (std::size_t attempt = 0; attempt < k; ++attempt) {
      std::vector<std::size_t> sizes(k, 0);
      for (int lab : st.labels) ++sizes[static_cast<std::size_t>(lab)];
      std::size_t empty = k;
      for (std::size_t j = 0; j < k; ++j)
        if (sizes[j] == 0) { empty = j; break; }
      if (empty == k) return;
      std::size_t farthest = 0;
      double far_dist = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = static_cast<std::size_t>(st.labels[i]);
        double d = weighted_dist2(data.row(i), st.centroids.data() + j * p,
                                  st.weights.data() + j * p, scratch);
        if (d > far_dist) { far_dist = d; farthest = i; }
      }
      std::copy_n(data.x.begin() + static_cast<std::ptrdiff_t>(farthest * p), p,
                  st.centroids.begin() + static_cast<std::ptrdiff_t>(empty * p));
      st.labels = assign(data, st.centroids, st.weights, k);
    }
  };

  double previous = std::numeric_limits<double>::infinity();
  st.iterations = 0;
  for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
    assign_and_repair();
    centroids_in_place(data, st.labels, k, st.centroids);
    std::vector<double> D = cluster_dispersions(data, st.labels, st.centroids, k);
    std::vector<std::size_t> sizes(k, 0);
    for (int lab : st.labels) ++sizes[static_cast<std::size_t>(lab)];
    for (std::size_t j = 0; j < k; ++j) {
      if (sizes[j] == 0) continue;  // keep the row; cluster holds no points
      std::vector<double> row = update_weight_row(
          std::span<const double>(D.data() + j * p, p), cfg.lambda,
          cfg.regularizer);
      std::copy(row.begin(), row.end(),
                st.weights.begin() + static_cast<std::ptrdiff_t>(j * p));
    }
    double value = labeled_objective();
    out.trace.push_back(value);
    st.iterations = iter;
    if (std::abs(previous - value) < cfg.tolerance) break;
    previous = value;
  }

  // Sync labels with the final (Θ, W) so the stored objective equals the
  // min-based form recomputed from the state, exactly.
  assign_and_repair();
  st.objective = labeled_objective();
  out.trace.push_back(st.objective);
  return out;
}

}  // namespace

Dataset standardized(const Dataset& data) {
  Dataset out = data;
  for (std::size_t l = 0; l < data.p; ++l) {
    KahanSum sum;
    for (std::size_t i = 0; i < data.n; ++i) sum.add(data.at(i, l));
    double mean = sum.value() / static_cast<double>(data.n);
    KahanSum sq;
    for (std::size_t i = 0; i < data.n; ++i) {
      double d = data.at(i, l) - mean;
      sq.add(d * d);
    }
    double sigma = std::sqrt(sq.value() / static_cast<double>(data.n));
    double scale = sigma > 0.0 ? 1.0 / sigma : 1.0;
    for (std::size_t i = 0; i < data.n; ++i)
      out.x[i * data.p + l] = (data.at(i, l) - mean) * scale;
  }
  return out;
}

std::vector<int> assign(const Dataset& data,
                        const std::vector<double>& centroids,
                        const std::vector<double>& weights, std::size_t k) {
  std::size_t n = data.n, p = data.p;
  std::vector<int> labels(n, 0);
  std::vector<double> scratch;
  for (std::size_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    int best_j = 0;
    for (std::size_t j = 0; j < k; ++j) {
      double d = weighted_dist2(data.row(i), centroids.data() + j * p,
                                weights.data() + j * p, scratch);
      if (d < best) {  // strict: ties stay with the lowest cluster id
        best = d;
        best_j = static_cast<int>(j);
      }
    }
    labels[i] = best_j;
  }
  return labels;
}

std::vector<double> update_centroids(const Dataset& data,
                                     const std::vector<int>& labels,
                                     std::size_t k) {
  if (labels.size() != data.n)
    throw Error(Errc::LengthMismatch, "labels length must equal n");
  std::vector<std::size_t> sizes(k, 0);
  for (int lab : labels) {
    if (lab < 0 || static_cast<std::size_t>(lab) >= k)
      throw Error(Errc::InvalidConfig, "label outside [0, k)");
    ++sizes[static_cast<std::size_t>(lab)];
  }
  for (std::size_t j = 0; j < k; ++j) {
    if (sizes[j] == 0) {
      std::ostringstream msg;
      msg << "cluster " << j << " has no points";
      throw Error(Errc::EmptyCluster, msg.str());
    }
  }
  std::vector<double> centroids(k * data.p, 0.0);
  centroids_in_place(data, labels, k, centroids);
  return centroids;
}

std::vector<double> cluster_dispersions(const Dataset& data,
                                        const std::vector<int>& labels,
                                        const std::vector<double>& centroids,
                                        std::size_t k) {
  std::size_t p = data.p;
  std::vector<double> D(k * p, 0.0);
  for (std::size_t i = 0; i < data.n; ++i) {
    std::size_t j = static_cast<std::size_t>(labels[i]);
    for (std::size_t l = 0; l < p; ++l) {
      double d = data.at(i, l) - centroids[j * p + l];
      D[j * p + l] += d * d;
    }
  }
  return D;
}

std::vector<double> update_weights_shannon(std::span<const double> D,
                                           double lambda) {
  if (!(lambda > 0.0))
    throw Error(Errc::ParameterOutOfRange, "lambda must be > 0");
  std::size_t p = D.size();
  double dmin = *std::min_element(D.begin(), D.end());
  std::vector<double> w(p);
  std::vector<double> terms(p);
  for (std::size_t l = 0; l < p; ++l) {
    w[l] = std::exp(-(D[l] - dmin) / lambda);  // max-shift: exponents ≤ 0
    terms[l] = w[l];
  }
  double total = stable_sum_inplace(terms);
  for (double& v : w) v /= total;
  return w;
}

std::vector<double> update_weights_t(std::span<const double> D, double lambda) {
  if (!(lambda > 0.0))
    throw Error(Errc::ParameterOutOfRange, "lambda must be > 0");
  std::size_t p = D.size();
  if (p == 1) return {1.0};
  double dmin = *std::min_element(D.begin(), D.end());

  // Solve Σ_l g⁻¹(m_l + ν) = 1 in the shifted variable ν = (μ + D_min)/λ with
  // m_l = (D_l − D_min)/λ ≥ 0. The bracket is exact by construction: at
  // ν = g(1) the minimum-dispersion coordinate maps to w = 1 (sum ≥ 1); at
  // ν = g(1/p) every coordinate maps to w ≤ 1/p (sum ≤ 1).
  std::vector<double> m(p);
  for (std::size_t l = 0; l < p; ++l) m[l] = (D[l] - dmin) / lambda;

  std::vector<double> w(p);
  std::vector<double> terms(p);
  auto weight_sum = [&](double nu) {
    for (std::size_t l = 0; l < p; ++l) {
      w[l] = g_inverse(m[l] + nu);
      terms[l] = w[l];
    }
    return stable_sum_inplace(terms);
  };

  double nu_lo = g_of(1.0);
  double nu_hi = g_of(1.0 / static_cast<double>(p));
  double total = 0.0;
  bool converged = false;
  for (int iter = 0; iter < 200; ++iter) {
    double nu = 0.5 * (nu_lo + nu_hi);
    total = weight_sum(nu);
    if (std::abs(total - 1.0) < kRowSumTolerance) {
      converged = true;
      break;
    }
    if (total > 1.0)
      nu_lo = nu;
    else
      nu_hi = nu;
  }
  if (!converged)
    throw Error(Errc::NonConvergence,
                "weight row bisection failed; lambda is pathologically small");
  for (double& v : w) v /= total;  // final polish onto the simplex
  return w;
}

double objective(const Dataset& data, const WeightedClusteringState& state,
                 const FitConfig& cfg) {
  std::size_t k = state.k, p = state.p;
  std::vector<double> scratch;
  std::vector<double> dist_terms(data.n);
  for (std::size_t i = 0; i < data.n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < k; ++j) {
      double d = weighted_dist2(data.row(i), state.centroids.data() + j * p,
                                state.weights.data() + j * p, scratch);
      best = std::min(best, d);
    }
    dist_terms[i] = best;
  }
  KahanSum acc;
  for (double d : dist_terms) acc.add(d);
  return acc.value() +
         regularizer_term(state.weights, k, p, cfg.regularizer, cfg.lambda);
}

WeightedClusteringState fit(const Dataset& data, const FitConfig& cfg,
                            unsigned threads,
                            std::vector<RestartOutcome>* outcomes,
                            std::vector<std::vector<double>>* traces) {
  if (cfg.k < 2)
    throw Error(Errc::InvalidConfig, "k must be >= 2");
  if (data.n < static_cast<std::size_t>(cfg.k)) {
    std::ostringstream msg;
    msg << "n = " << data.n << " must be >= k = " << cfg.k;
    throw Error(Errc::InvalidConfig, msg.str());
  }
  if (data.p == 0 || data.x.size() != data.n * data.p)
    throw Error(Errc::InvalidConfig, "dataset shape is inconsistent");
  if (cfg.regularizer != Regularizer::None && !(cfg.lambda > 0.0))
    throw Error(Errc::InvalidConfig, "lambda must be > 0 for this regularizer");
  if (cfg.restarts < 1 || cfg.max_iterations < 1)
    throw Error(Errc::InvalidConfig, "restarts and max_iterations must be >= 1");

  std::size_t restarts = static_cast<std::size_t>(cfg.restarts);
  std::vector<SingleFit> fits(restarts);
  std::vector<std::uint64_t> seeds(restarts);
  for (std::size_t r = 0; r < restarts; ++r) seeds[r] = derive_seed(cfg.seed, r);
  parallel_for(restarts, threads,
               [&](std::size_t r) { fits[r] = fit_single(data, cfg, seeds[r]); });

  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r)
    if (fits[r].state.objective < fits[best].state.objective) best = r;

  if (outcomes) {
    outcomes->clear();
    for (std::size_t r = 0; r < restarts; ++r)
      outcomes->push_back(RestartOutcome{seeds[r], fits[r].state.objective,
                                         fits[r].state.iterations,
                                         fits[r].state.labels});
  }
  if (traces) {
    traces->clear();
    for (auto& f : fits) traces->push_back(std::move(f.trace));
  }
  return std::move(fits[best].state);
}

}  // namespace tent
