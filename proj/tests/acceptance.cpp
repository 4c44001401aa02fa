// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
// the exit status is the number of failed criteria.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tent/axioms.hpp"
#include "tent/entropy.hpp"
#include "tent/estimation.hpp"
#include "tent/ewkm.hpp"
#include "tent/delimited.hpp"
#include "tent/image.hpp"
#include "tent/metrics.hpp"
#include "tent/thresholding.hpp"

namespace fs = std::filesystem;

namespace {

constexpr double kPi4 = 0.78539816339744830962;

struct Check {
  bool ok = true;
  std::string detail;
  double budget_seconds = 0.0;  // 0 = no runtime bound

  void require(bool condition, const std::string& message) {
    if (!condition && ok) {
      ok = false;
      detail = message;
    }
  }
  void budget(double seconds) { budget_seconds = seconds; }
};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string str(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// ---- 1. fuzzed property suite ---------------------------------------------

void axiom_suite(Check& c) {
  c.budget(30.0);
  auto result = tent::run_axiom_suite(2026, 1000);
  c.require(result.checks.size() == 16, "expected 16 property checks, got " +
                                            std::to_string(result.checks.size()));
  for (const auto& check : result.checks)
    c.require(check.passed, check.name + " violated (worst margin " +
                                str(check.worst) + ")");
}

// ---- 2. uniform closed form ------------------------------------------------

void uniform_closed_form(Check& c) {
  for (double cc : {0.1, 1.0, 10.0, 50.0}) {
    for (int n = 1; n <= 10000; ++n) {
      std::vector<double> u(n, 1.0 / n);
      double got = tent::detail::t_entropy_raw(u, cc);
      double want = std::atan(std::pow(static_cast<double>(n), cc)) - kPi4;
      if (std::fabs(got - want) > 1e-12) {
        c.require(false, "n=" + std::to_string(n) + " c=" + str(cc) +
                             ": |" + str(got) + " - " + str(want) + "| > 1e-12");
        return;
      }
    }
  }
}

// ---- 3. robustness under fixed contamination -------------------------------

void robust_estimation(Check& c) {
  c.budget(60.0);
  tent::ContaminationConfig cfg;
  cfg.binomial_N = 100;
  cfg.true_theta = 0.2;
  cfg.sample_size = 200;
  cfg.outlier_count = 10;
  cfg.outlier_values.resize(10);
  std::iota(cfg.outlier_values.begin(), cfg.outlier_values.end(), 91);
  cfg.replicates = 100;
  cfg.seed = 42;

  auto report = tent::run_contamination_experiment(cfg);
  c.require(report.median_t >= 0.18 && report.median_t <= 0.22,
            "median theta-t " + str(report.median_t) + " outside [0.18, 0.22]");
  c.require(report.median_mle >= 0.22,
            "median theta-mle " + str(report.median_mle) + " < 0.22");

  std::vector<double> err_t, err_mle;
  for (const auto& row : report.rows) {
    err_t.push_back(std::fabs(row.theta_t - cfg.true_theta));
    err_mle.push_back(std::fabs(row.theta_mle - cfg.true_theta));
  }
  double ratio = median(err_t) / median(err_mle);
  c.require(ratio < 0.25, "median-error ratio " + str(ratio) + " >= 0.25");
}

// ---- 4. breakdown sweep ------------------------------------------------------

void breakdown_sweep(Check& c) {
  c.budget(90.0);
  auto report = tent::run_breakdown_sweep(100, 0.2, {0.1, 0.2, 0.3, 0.4}, 100,
                                          200, 50, 7);
  for (const auto& point : report.points)
    c.require(point.median_t < 0.35, "median theta-t " + str(point.median_t) +
                                         " at eps " + str(point.eps));
  c.require(report.points.back().median_mle > 0.5,
            "median theta-mle " + str(report.points.back().median_mle) +
                " at eps 0.4 not above 0.5");
}

// ---- 5. consistency curve ---------------------------------------------------

void consistency_curve(Check& c) {
  auto report = tent::run_consistency_curve(100, 0.2, {50, 500, 5000}, 50, 11);
  for (std::size_t i = 1; i < report.points.size(); ++i)
    c.require(report.points[i].median_abs_error <=
                  report.points[i - 1].median_abs_error,
              "median error rose from n=" +
                  std::to_string(report.points[i - 1].n) + " to n=" +
                  std::to_string(report.points[i].n));
}

// ---- 6. search matches exhaustive enumeration -------------------------------

tent::Histogram random_histogram(std::mt19937_64& rng, bool smooth) {
  std::uniform_int_distribution<int> levels(16, 64);
  int L = levels(rng);
  tent::Histogram h;
  h.counts.resize(L);
  if (smooth) {
    std::uniform_int_distribution<int> step(-6, 6);
    long long run = 40;
    for (int i = 0; i < L; ++i) {
      run = std::max<long long>(10, run + step(rng));
      h.counts[i] = run;
    }
  } else {
    std::uniform_int_distribution<int> count(0, 50);
    for (int i = 0; i < L; ++i) h.counts[i] = count(rng);
  }
  h.total = std::accumulate(h.counts.begin(), h.counts.end(), 0LL);
  if (h.occupied_levels() < 8) return random_histogram(rng, true);
  return h;
}

void thresholding_oracle(Check& c) {
  c.budget(120.0);
  std::mt19937_64 rng(123);
  const std::vector<tent::EntropyMeasure> measures = {
      tent::EntropyMeasure::t(0.1), tent::EntropyMeasure::t(1.0),
      tent::EntropyMeasure::shannon(), tent::EntropyMeasure::renyi(2.0),
      tent::EntropyMeasure::tsallis(2.0)};

  int cases = 0, exact = 0;
  for (int trial = 0; trial < 50; ++trial) {
    auto h = random_histogram(rng, trial % 2 == 0);
    for (int k : {2, 3}) {
      for (const auto& m : measures) {
        auto best = tent::exhaustive_thresholds(h, k, m);
        auto found =
            tent::optimize_thresholds(h, k, m, tent::DEConfig{},
                                      static_cast<std::uint64_t>(cases) + 1);
        ++cases;
        double slack = 1e-3 * std::max(1.0, std::fabs(best.objective));
        c.require(found.objective >= best.objective - slack,
                  "trial " + std::to_string(trial) + " k=" + std::to_string(k) +
                      " " + m.family_name() + ": gap " +
                      str(best.objective - found.objective));
        c.require(found.objective <= best.objective + 1e-12,
                  "search exceeded the exhaustive optimum");
        if (std::fabs(found.objective - best.objective) <= 1e-12) ++exact;
      }
    }
  }
  double rate = static_cast<double>(exact) / cases;
  c.require(rate >= 0.90, "exact-match rate " + str(rate) + " < 0.90 (" +
                              std::to_string(exact) + "/" +
                              std::to_string(cases) + ")");
}

// ---- 7. synthetic bimodal segmentation --------------------------------------

void synthetic_segmentation(Check& c) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> low(0, 15), high(48, 63);
  tent::GrayImage img;
  img.width = 128;
  img.height = 128;
  img.levels = 64;
  std::vector<int> truth;
  for (int i = 0; i < 8192; ++i) {
    img.pixels.push_back(low(rng));
    truth.push_back(0);
  }
  for (int i = 0; i < 8192; ++i) {
    img.pixels.push_back(high(rng));
    truth.push_back(1);
  }
  std::vector<std::size_t> order(img.pixels.size());
  std::iota(order.begin(), order.end(), 0u);
  std::shuffle(order.begin(), order.end(), rng);
  tent::GrayImage shuffled = img;
  std::vector<int> truth_shuffled(truth.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    shuffled.pixels[i] = img.pixels[order[i]];
    truth_shuffled[i] = truth[order[i]];
  }

  auto h = tent::histogram(shuffled);
  auto ts = tent::optimize_thresholds(h, 2, tent::EntropyMeasure::t(0.1),
                                      tent::DEConfig{}, 5);
  c.require(ts.thresholds.size() == 1, "expected a single threshold");
  int t = ts.thresholds[0];
  c.require(t >= 16 && t <= 47,
            "threshold " + std::to_string(t) + " outside [16, 47]");

  std::vector<int> predicted(shuffled.pixels.size());
  for (std::size_t i = 0; i < predicted.size(); ++i)
    predicted[i] = shuffled.pixels[i] <= t ? 0 : 1;
  c.require(tent::pri(predicted, {truth_shuffled}) == 1.0, "PRI != 1");
  c.require(tent::gce(predicted, truth_shuffled) == 0.0, "GCE != 0");
  c.require(tent::voi(predicted, truth_shuffled) == 0.0, "VoI != 0");
}

// ---- 8. clustering never ascends ---------------------------------------------

tent::Dataset fuzz_dataset(std::mt19937_64& rng, int k) {
  std::uniform_int_distribution<int> n_dist(30, 120), p_dist(2, 5);
  std::uniform_real_distribution<double> center(-5.0, 5.0), sigma(0.3, 2.0);
  tent::Dataset data;
  data.n = static_cast<std::size_t>(n_dist(rng));
  data.p = static_cast<std::size_t>(p_dist(rng));
  std::vector<double> centers(static_cast<std::size_t>(k) * data.p);
  for (double& v : centers) v = center(rng);
  double s = sigma(rng);
  std::normal_distribution<double> noise(0.0, s);
  std::uniform_int_distribution<int> pick(0, k - 1);
  for (std::size_t i = 0; i < data.n; ++i) {
    int j = pick(rng);
    for (std::size_t l = 0; l < data.p; ++l)
      data.x.push_back(centers[static_cast<std::size_t>(j) * data.p + l] +
                       noise(rng));
  }
  return data;
}

void clustering_descent(Check& c) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> k_dist(2, 4);
  std::uniform_real_distribution<double> lam(0.2, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    int k = k_dist(rng);
    auto data = fuzz_dataset(rng, k);
    for (auto reg : {tent::Regularizer::TEntropy, tent::Regularizer::Shannon}) {
      tent::FitConfig cfg;
      cfg.k = k;
      cfg.lambda = lam(rng);
      cfg.regularizer = reg;
      cfg.restarts = 2;
      cfg.max_iterations = 40;
      cfg.seed = static_cast<std::uint64_t>(trial);
      std::vector<std::vector<double>> traces;
      tent::fit(data, cfg, 0, nullptr, &traces);
      for (const auto& trace : traces)
        for (std::size_t i = 1; i < trace.size(); ++i)
          c.require(trace[i] <= trace[i - 1] + 1e-8,
                    "objective rose by " + str(trace[i] - trace[i - 1]) +
                        " on trial " + std::to_string(trial));
    }
  }
}

// ---- 9. weight solver vs simplex grid ----------------------------------------

double weight_objective(const std::vector<double>& w,
                        const std::vector<double>& d, double lambda) {
  double value = 0.0;
  for (std::size_t l = 0; l < w.size(); ++l) {
    value += w[l] * d[l];
    if (w[l] > 0.0) value -= lambda * w[l] * std::atan(1.0 / w[l]);
  }
  return value;
}

void weight_solver_oracle(Check& c) {
  std::mt19937_64 rng(321);
  std::uniform_real_distribution<double> disp(0.0, 5.0);
  std::uniform_real_distribution<double> log_lambda(std::log(0.05),
                                                    std::log(10.0));
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t p = trial % 2 == 0 ? 2 : 3;
    std::vector<double> d(p);
    for (double& v : d) v = disp(rng);
    if (trial % 10 == 0) std::fill(d.begin(), d.end(), d[0]);
    double lambda = std::exp(log_lambda(rng));

    auto solved = tent::update_weights_t(d, lambda);
    std::vector<double> best;
    double best_value = 0.0;
    auto consider = [&](const std::vector<double>& w) {
      double value = weight_objective(w, d, lambda);
      if (best.empty() || value < best_value) {
        best = w;
        best_value = value;
      }
    };
    if (p == 2) {
      for (int i = 0; i <= 1000; ++i)
        consider({i / 1000.0, (1000 - i) / 1000.0});
    } else {
      for (int i = 0; i <= 1000; ++i)
        for (int j = 0; j <= 1000 - i; ++j)
          consider({i / 1000.0, j / 1000.0, (1000 - i - j) / 1000.0});
    }
    for (std::size_t l = 0; l < p; ++l)
      c.require(std::fabs(solved[l] - best[l]) <= 1e-3 + 1e-12,
                "trial " + std::to_string(trial) + " coordinate " +
                    std::to_string(l) + ": |" + str(solved[l]) + " - " +
                    str(best[l]) + "| > 1e-3");
  }
}

// ---- 10. iris benchmark -------------------------------------------------------

void iris_benchmark(Check& c) {
  c.budget(30.0);
  tent::DelimitedOptions opts;
  opts.label_column = -1;
  auto data = tent::read_delimited(
      slurp(fs::path(TENT_DATA_DIR) / "iris.csv"), opts);
  c.require(data.n == 150 && data.p == 4, "unexpected iris shape");
  auto scaled = tent::standardized(data);
  const auto& truth = *scaled.labels;

  double best_nmi = 0.0, best_ari = 0.0;
  for (double lambda : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    tent::FitConfig cfg;
    cfg.k = 3;
    cfg.lambda = lambda;
    cfg.regularizer = tent::Regularizer::TEntropy;
    cfg.restarts = 20;
    cfg.seed = 1;
    auto state = tent::fit(scaled, cfg);
    best_nmi = std::max(best_nmi, tent::nmi(state.labels, truth));
    best_ari = std::max(best_ari, tent::ari(state.labels, truth));
  }
  c.require(best_nmi >= 0.70, "best NMI " + str(best_nmi) + " < 0.70");
  c.require(best_ari >= 0.65, "best ARI " + str(best_ari) + " < 0.65");
}

// ---- 11. byte-identical reports ------------------------------------------------

int run_tool(const std::string& args) {
  std::string command = std::string("\"") + TENT_CLI_PATH + "\" " + args +
                        " > /dev/null 2> /dev/null";
  int raw = std::system(command.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

void report_determinism(Check& c) {
  fs::path dir = fs::temp_directory_path() /
                 ("tent_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::string iris = (fs::path(TENT_DATA_DIR) / "iris.csv").string();
  std::vector<std::string> commands = {
      "experiment --name axiom-suite --trials 200 --seed 9",
      "experiment --name consistency --seed 13",
      "cluster --input \"" + iris + "\" --k 3 --lambda 1 --restarts 5 --seed 4",
  };
  for (std::size_t i = 0; i < commands.size(); ++i) {
    fs::path a = dir / ("run" + std::to_string(i) + "a.json");
    fs::path b = dir / ("run" + std::to_string(i) + "b.json");
    c.require(run_tool(commands[i] + " --out \"" + a.string() + "\"") == 0,
              "command failed: " + commands[i]);
    c.require(run_tool(commands[i] + " --out \"" + b.string() + "\"") == 0,
              "rerun failed: " + commands[i]);
    std::string bytes = slurp(a);
    c.require(!bytes.empty() && bytes == slurp(b),
              "reports differ for: " + commands[i]);
  }
  fs::remove_all(dir);
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Check&)> body;
  };
  const std::vector<Criterion> criteria = {
      {"axiom-suite", axiom_suite},
      {"uniform-closed-form", uniform_closed_form},
      {"robust-estimation", robust_estimation},
      {"breakdown-sweep", breakdown_sweep},
      {"consistency-curve", consistency_curve},
      {"thresholding-oracle", thresholding_oracle},
      {"synthetic-segmentation", synthetic_segmentation},
      {"clustering-descent", clustering_descent},
      {"weight-solver-oracle", weight_solver_oracle},
      {"iris-benchmark", iris_benchmark},
      {"report-determinism", report_determinism},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].body(check);
    } catch (const std::exception& e) {
      check.require(false, std::string("exception: ") + e.what());
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (check.budget_seconds > 0.0 && seconds > check.budget_seconds)
      check.require(false, "runtime " + str(seconds) + "s over the " +
                               str(check.budget_seconds) + "s budget");
    failures += check.ok ? 0 : 1;
    std::printf("%s %2zu %-24s (%.2fs)%s%s\n", check.ok ? "PASS" : "FAIL",
                i + 1, criteria[i].name, seconds, check.ok ? "" : " — ",
                check.ok ? "" : check.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}
