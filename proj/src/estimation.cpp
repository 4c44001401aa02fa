#include "tent/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tent/divergence.hpp"
#include "tent/numeric.hpp"
#include "tent/parallel.hpp"
#include "tent/rng.hpp"

namespace tent {

namespace {

constexpr int kGridPoints = 201;
constexpr double kRefineTolerance = 1e-6;
constexpr double kGolden = 0.61803398874989484820;  // 1/φ

// Empirical pmf of the samples as a raw vector (validated via empirical_pmf
// for the SampleOutsideSupport check, then reused unwrapped).
std::vector<double> empirical_vector(const std::vector<int>& samples,
                                     const std::vector<int>& support) {
  return empirical_pmf(samples, support).probs();
}

}  // namespace

std::vector<double> DiscreteModel::pmf_vector(
    const std::vector<double>& theta) const {
  std::vector<double> out(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) out[i] = pmf(theta, support[i]);
  return out;
}

DiscreteModel binomial_model(int N) {
  if (N < 1)
    throw Error(Errc::ParameterOutOfRange, "binomial N must be >= 1");
  DiscreteModel m;
  m.support.resize(static_cast<std::size_t>(N) + 1);
  for (int x = 0; x <= N; ++x) m.support[static_cast<std::size_t>(x)] = x;
  m.param_bounds = {{1e-6, 1.0 - 1e-6}};
  m.pmf = [N](const std::vector<double>& theta, int x) {
    double th = theta.at(0);
    // log C(N,x) + x·log θ + (N−x)·log(1−θ), exponentiated; stable for all
    // θ in the open unit interval and exact enough for a 1e-9 pmf-sum check.
    double log_choose = std::lgamma(N + 1.0) - std::lgamma(x + 1.0) -
                        std::lgamma(N - x + 1.0);
    return std::exp(log_choose + x * std::log(th) +
                    (N - x) * std::log1p(-th));
  };
  return m;
}

EstimationResult fit_min_t_divergence(const std::vector<int>& samples,
                                      const DiscreteModel& model) {
  if (model.param_bounds.size() != 1)
    throw Error(Errc::InvalidConfig,
                "only scalar-parameter models are supported");
  std::vector<double> emp = empirical_vector(samples, model.support);

  long evaluations = 0;
  std::vector<double> theta(1);
  auto objective = [&](double th) {
    theta[0] = th;
    std::vector<double> q = model.pmf_vector(theta);
    ++evaluations;
    return detail::t_divergence_raw(emp, q);
  };

  auto [lo, hi] = model.param_bounds[0];
  // Global coarse grid guards against multimodality of θ ↦ D_t.
  double best_theta = lo, best_value = objective(lo);
  int best_index = 0;
  for (int j = 1; j < kGridPoints; ++j) {
    double th = lo + (hi - lo) * j / (kGridPoints - 1);
    double v = objective(th);
    if (v < best_value) {
      best_value = v;
      best_theta = th;
      best_index = j;
    }
  }

  double a = lo + (hi - lo) * std::max(0, best_index - 1) / (kGridPoints - 1);
  double b = lo + (hi - lo) * std::min(kGridPoints - 1, best_index + 1) /
                      (kGridPoints - 1);
  EstimationResult result;
  if (b - a < kRefineTolerance) {
    result.method = EstimationResult::Method::grid;
  } else {
    result.method = EstimationResult::Method::golden_section;
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = objective(x1);
    double f2 = objective(x2);
    while (b - a > kRefineTolerance) {
      if (f1 <= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - kGolden * (b - a);
        f1 = objective(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + kGolden * (b - a);
        f2 = objective(x2);
      }
      if (f1 < best_value) { best_value = f1; best_theta = x1; }
      if (f2 < best_value) { best_value = f2; best_theta = x2; }
    }
  }
  result.theta_hat = {best_theta};
  result.divergence_at_min = best_value;
  result.evaluations = evaluations;
  return result;
}

double mle_binomial(const std::vector<int>& samples, int N) {
  if (samples.empty())
    throw Error(Errc::ParameterOutOfRange, "need at least one sample");
  long long sum = 0;
  for (int s : samples) sum += s;
  return static_cast<double>(sum) /
         (static_cast<double>(samples.size()) * static_cast<double>(N));
}

std::vector<int> draw_samples(const DiscreteModel& model,
                              const std::vector<double>& theta, int n,
                              std::uint64_t seed) {
  std::vector<double> pmf = model.pmf_vector(theta);
  std::vector<double> cdf(pmf.size());
  double run = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    run += pmf[i];
    cdf[i] = run;
  }
  cdf.back() = 1.0;  // guard the final bucket against rounding shortfall
  std::mt19937_64 rng(seed);
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double u = uniform_double(rng);
    std::size_t idx = static_cast<std::size_t>(
        std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    if (idx >= model.support.size()) idx = model.support.size() - 1;
    out[static_cast<std::size_t>(i)] = model.support[idx];
  }
  return out;
}

ContaminationReport run_contamination_experiment(const ContaminationConfig& cfg,
                                                 unsigned threads) {
  if (cfg.replicates < 1 || cfg.sample_size < 1)
    throw Error(Errc::InvalidConfig, "replicates and sample size must be >= 1");
  if (cfg.outlier_count > 0 && cfg.outlier_values.empty())
    throw Error(Errc::InvalidConfig, "outlier_count > 0 needs outlier values");
  DiscreteModel model = binomial_model(cfg.binomial_N);
  for (int v : cfg.outlier_values) {
    if (v < 0 || v > cfg.binomial_N) {
      std::ostringstream msg;
      msg << "outlier value " << v << " outside support {0.." << cfg.binomial_N
          << "}";
      throw Error(Errc::SampleOutsideSupport, msg.str());
    }
  }

  ContaminationReport report;
  report.config = cfg;
  report.rows.resize(static_cast<std::size_t>(cfg.replicates));
  parallel_for(
      static_cast<std::size_t>(cfg.replicates), threads, [&](std::size_t r) {
        std::uint64_t rep_seed = derive_seed(cfg.seed, r);
        std::vector<int> samples =
            draw_samples(model, {cfg.true_theta}, cfg.sample_size, rep_seed);
        // Contaminants are appended ("add 10 outliers"), drawn uniformly from
        // the configured values with a stream derived from the replicate seed
        // so the clean prefix is identical with and without contamination.
        std::mt19937_64 rng(splitmix64(rep_seed));
        for (int j = 0; j < cfg.outlier_count; ++j) {
          std::size_t pick = static_cast<std::size_t>(uniform_int(
              rng, 0, static_cast<std::int64_t>(cfg.outlier_values.size()) - 1));
          samples.push_back(cfg.outlier_values[pick]);
        }
        ContaminationRow row;
        row.seed = rep_seed;
        row.theta_t = fit_min_t_divergence(samples, model).theta_hat[0];
        row.theta_mle = mle_binomial(samples, cfg.binomial_N);
        report.rows[r] = row;
      });

  std::vector<double> ts, mles, err_t, err_mle;
  for (const auto& row : report.rows) {
    ts.push_back(row.theta_t);
    mles.push_back(row.theta_mle);
    err_t.push_back(std::abs(row.theta_t - cfg.true_theta));
    err_mle.push_back(std::abs(row.theta_mle - cfg.true_theta));
  }
  report.median_t = median(ts);
  report.median_mle = median(mles);
  report.mae_t = stable_sum(err_t) / static_cast<double>(err_t.size());
  report.mae_mle = stable_sum(err_mle) / static_cast<double>(err_mle.size());
  return report;
}

BreakdownReport run_breakdown_sweep(int binomial_N, double true_theta,
                                    const std::vector<double>& eps_grid,
                                    int outlier_value, int n, int replicates,
                                    std::uint64_t seed, unsigned threads) {
  if (replicates < 1 || n < 1)
    throw Error(Errc::InvalidConfig, "replicates and n must be >= 1");
  DiscreteModel model = binomial_model(binomial_N);
  if (outlier_value < 0 || outlier_value > binomial_N)
    throw Error(Errc::SampleOutsideSupport, "outlier value outside support");
  for (double eps : eps_grid) {
    if (!(eps >= 0.0) || eps >= 0.5)
      throw Error(Errc::InvalidConfig, "eps grid must lie in [0, 0.5)");
  }

  BreakdownReport report;
  report.binomial_N = binomial_N;
  report.true_theta = true_theta;
  report.sample_size = n;
  report.outlier_value = outlier_value;
  report.replicates = replicates;
  report.seed = seed;
  report.points.resize(eps_grid.size());

  for (std::size_t e = 0; e < eps_grid.size(); ++e) {
    double eps = eps_grid[e];
    int contaminated = static_cast<int>(std::floor(eps * n));
    BreakdownPoint& point = report.points[e];
    point.eps = eps;
    point.rows.resize(static_cast<std::size_t>(replicates));
    parallel_for(
        static_cast<std::size_t>(replicates), threads, [&](std::size_t r) {
          std::uint64_t rep_seed =
              derive_seed(seed, e * static_cast<std::size_t>(replicates) + r);
          std::vector<int> samples =
              draw_samples(model, {true_theta}, n, rep_seed);
          // Replace (not append) the tail so the fraction is exactly ⌊εn⌋/n.
          for (int j = 0; j < contaminated; ++j)
            samples[samples.size() - 1 - static_cast<std::size_t>(j)] =
                outlier_value;
          ContaminationRow row;
          row.seed = rep_seed;
          row.theta_t = fit_min_t_divergence(samples, model).theta_hat[0];
          row.theta_mle = mle_binomial(samples, binomial_N);
          point.rows[r] = row;
        });
    std::vector<double> ts, mles;
    for (const auto& row : point.rows) {
      ts.push_back(row.theta_t);
      mles.push_back(row.theta_mle);
    }
    point.median_t = median(ts);
    point.median_mle = median(mles);
  }
  return report;
}

ConsistencyReport run_consistency_curve(int binomial_N, double true_theta,
                                        const std::vector<int>& n_grid,
                                        int replicates, std::uint64_t seed,
                                        unsigned threads) {
  if (replicates < 1)
    throw Error(Errc::InvalidConfig, "replicates must be >= 1");
  DiscreteModel model = binomial_model(binomial_N);
  ConsistencyReport report;
  report.binomial_N = binomial_N;
  report.true_theta = true_theta;
  report.replicates = replicates;
  report.seed = seed;
  report.points.resize(n_grid.size());
  for (std::size_t g = 0; g < n_grid.size(); ++g) {
    int n = n_grid[g];
    ConsistencyPoint& point = report.points[g];
    point.n = n;
    point.abs_errors.resize(static_cast<std::size_t>(replicates));
    parallel_for(
        static_cast<std::size_t>(replicates), threads, [&](std::size_t r) {
          std::uint64_t rep_seed =
              derive_seed(seed, g * static_cast<std::size_t>(replicates) + r);
          std::vector<int> samples =
              draw_samples(model, {true_theta}, n, rep_seed);
          double theta_t = fit_min_t_divergence(samples, model).theta_hat[0];
          point.abs_errors[r] = std::abs(theta_t - true_theta);
        });
    point.median_abs_error = median(point.abs_errors);
  }
  return report;
}

}  // namespace tent
