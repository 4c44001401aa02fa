#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tent/axioms.hpp"
#include "tent/delimited.hpp"
#include "tent/entropy.hpp"
#include "tent/errors.hpp"
#include "tent/estimation.hpp"
#include "tent/ewkm.hpp"
#include "tent/metrics.hpp"
#include "tent/pgm.hpp"
#include "tent/report.hpp"
#include "tent/thresholding.hpp"

namespace {

using tent::Json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw tent::Error(tent::Errc::InvalidConfig, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw tent::Error(tent::Errc::InvalidConfig, "cannot write " + path);
  out << bytes;
}

void emit(const tent::ReportDocument& doc, const std::string& out_path) {
  std::string bytes = doc.to_bytes();
  if (out_path.empty())
    std::cout << bytes;
  else
    write_file(out_path, bytes);
}

Json input_provenance(const std::string& path, const std::string& bytes) {
  Json j;
  j["path"] = path;
  j["fnv1a64"] = tent::fnv1a64_hex(bytes);
  return j;
}

// --- shared flag groups -----------------------------------------------------

struct MeasureFlags {
  std::string measure = "t";
  double c = 1.0;
  double alpha = 2.0;
  double q = 2.0;
};

void add_measure_flags(CLI::App* cmd, MeasureFlags& m) {
  cmd->add_option("--measure", m.measure,
                  "Entropy family: t, shannon, renyi or tsallis")
      ->capture_default_str()
      ->check(CLI::IsMember({"t", "shannon", "renyi", "tsallis"}));
  cmd->add_option("--c", m.c, "t-entropy order c > 0 (measure t)")
      ->capture_default_str();
  cmd->add_option("--alpha", m.alpha, "Renyi order > 0, != 1 (measure renyi)")
      ->capture_default_str();
  cmd->add_option("--q", m.q, "Tsallis order > 0, != 1 (measure tsallis)")
      ->capture_default_str();
}

tent::EntropyMeasure make_measure(const MeasureFlags& m) {
  if (m.measure == "t") return tent::EntropyMeasure::t(m.c);
  if (m.measure == "shannon") return tent::EntropyMeasure::shannon();
  if (m.measure == "renyi") return tent::EntropyMeasure::renyi(m.alpha);
  return tent::EntropyMeasure::tsallis(m.q);
}

void echo_measure(Json& cfg, const MeasureFlags& m) {
  cfg["measure"] = m.measure;
  cfg["c"] = m.c;
  cfg["alpha"] = m.alpha;
  cfg["q"] = m.q;
}

char parse_delimiter(const std::string& s) {
  if (s == "tab" || s == "\\t") return '\t';
  if (s == "comma") return ',';
  if (s.size() == 1) return s[0];
  throw tent::Error(tent::Errc::InvalidConfig,
                    "delimiter must be a single character, 'comma' or 'tab'");
}

std::optional<int> parse_label_column(const std::string& s) {
  if (s == "none") return std::nullopt;
  if (s == "last") return -1;
  int idx = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), idx);
  if (ec != std::errc() || ptr != s.data() + s.size() || idx < 0)
    throw tent::Error(tent::Errc::InvalidConfig,
                      "label column must be 'last', 'none' or a 0-based index");
  return idx;
}

std::string trimmed(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// One probability vector per line; rows may have different lengths, unlike
// the rectangular dataset reader.
std::vector<std::vector<double>> parse_probability_rows(
    const std::string& bytes, char delimiter) {
  std::vector<std::vector<double>> rows;
  std::size_t start = 0;
  std::size_t lineno = 0;
  while (start <= bytes.size()) {
    std::size_t pos = bytes.find('\n', start);
    std::string line = (pos == std::string::npos)
                           ? bytes.substr(start)
                           : bytes.substr(start, pos - start);
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!trimmed(line).empty()) {
      std::vector<double> row;
      std::size_t cell_start = 0, col = 0;
      while (true) {
        std::size_t cut = line.find(delimiter, cell_start);
        std::string cell = trimmed(
            cut == std::string::npos
                ? line.substr(cell_start)
                : line.substr(cell_start, cut - cell_start));
        ++col;
        double value = 0.0;
        auto [ptr, ec] =
            std::from_chars(cell.data(), cell.data() + cell.size(), value);
        if (ec != std::errc() || ptr != cell.data() + cell.size()) {
          std::ostringstream msg;
          msg << "row " << lineno << ", column " << col << ": cell '" << cell
              << "' is not numeric";
          throw tent::Error(tent::Errc::NonNumericCell, msg.str());
        }
        row.push_back(value);
        if (cut == std::string::npos) break;
        cell_start = cut + 1;
      }
      rows.push_back(std::move(row));
    }
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (rows.empty())
    throw tent::Error(tent::Errc::InvalidConfig, "input has no data rows");
  return rows;
}

std::vector<int> parse_int_samples(const std::string& bytes) {
  std::string spaced = bytes;
  for (char& ch : spaced)
    if (ch == ',' || ch == '\t' || ch == '\r') ch = ' ';
  std::istringstream in(spaced);
  std::vector<int> out;
  std::string tok;
  while (in >> tok) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw tent::Error(tent::Errc::NonNumericCell,
                        "sample '" + tok + "' is not an integer");
    out.push_back(v);
  }
  if (out.empty())
    throw tent::Error(tent::Errc::InvalidConfig, "input has no samples");
  return out;
}

// --- entropy ----------------------------------------------------------------

struct EntropyFlags {
  std::string input;
  std::string out;
  std::string kind = "proper";
  std::string delimiter = ",";
  MeasureFlags measure;
};

int run_entropy(const EntropyFlags& f) {
  std::string bytes = read_file(f.input);
  char delim = parse_delimiter(f.delimiter);
  auto rows = parse_probability_rows(bytes, delim);
  tent::VectorKind kind = (f.kind == "generalized")
                              ? tent::VectorKind::generalized
                              : tent::VectorKind::proper;
  tent::EntropyMeasure m = make_measure(f.measure);

  Json values = Json::array();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    try {
      auto pv = tent::ProbabilityVector::validate(rows[r], kind);
      values.push_back(tent::entropy(pv, m));
    } catch (const tent::Error& e) {
      throw tent::Error(e.code(),
                        "row " + std::to_string(r + 1) + ": " + e.message());
    }
  }

  tent::ReportDocument doc;
  doc.command = "entropy";
  doc.config["input"] = f.input;
  echo_measure(doc.config, f.measure);
  doc.config["kind"] = f.kind;
  doc.config["delimiter"] = f.delimiter;
  doc.results["rows"] = rows.size();
  doc.results["entropies"] = values;
  doc.provenance["input"] = input_provenance(f.input, bytes);
  emit(doc, f.out);
  return 0;
}

// --- segment ----------------------------------------------------------------

struct SegmentFlags {
  std::string input;
  std::string out;
  std::string out_image;
  std::string image_format = "p5";
  int k = 2;
  MeasureFlags measure;
  std::uint64_t seed = 0;
  int generations = 200;
  int np = 0;
  double f = 0.8;
  double cr = 0.9;
  unsigned threads = 0;
};

int run_segment(const SegmentFlags& f) {
  if (f.k < 2 || f.k > 64)
    throw tent::Error(tent::Errc::InvalidConfig,
                      "segment count k must be in [2, 64]");
  std::string bytes = read_file(f.input);
  tent::GrayImage img = tent::read_pgm(bytes);
  tent::Histogram h = tent::histogram(img);
  tent::EntropyMeasure m = make_measure(f.measure);

  tent::DEConfig de;
  de.population_size = f.np;
  de.max_generations = f.generations;
  de.scale_factor = f.f;
  de.crossover_rate = f.cr;
  tent::ThresholdSet ts =
      tent::optimize_thresholds(h, f.k, m, de, f.seed, f.threads);

  tent::ReportDocument doc;
  doc.command = "segment";
  doc.config["input"] = f.input;
  doc.config["k"] = f.k;
  echo_measure(doc.config, f.measure);
  doc.config["seed"] = f.seed;
  doc.config["generations"] = f.generations;
  doc.config["np"] = f.np;
  doc.config["f"] = f.f;
  doc.config["cr"] = f.cr;
  doc.config["threads"] = f.threads;
  doc.config["out-image"] = f.out_image;
  doc.config["image-format"] = f.image_format;

  doc.results["thresholds"] = ts.thresholds;
  doc.results["k"] = ts.k;
  doc.results["objective"] = ts.objective;
  Json segments = Json::array();
  for (const auto& seg : tent::segment_distributions(h, ts)) {
    Json s;
    s["lo"] = seg.lo;
    s["hi"] = seg.hi;
    s["mass"] = seg.mass;
    segments.push_back(s);
  }
  doc.results["segments"] = segments;
  doc.results["levels"] = h.levels();
  doc.results["occupied-levels"] = h.occupied_levels();

  doc.provenance["input"] = input_provenance(f.input, bytes);
  doc.provenance["generator"] = tent::kGeneratorName;

  if (!f.out_image.empty()) {
    tent::PgmVariant variant =
        (f.image_format == "p2") ? tent::PgmVariant::P2 : tent::PgmVariant::P5;
    write_file(f.out_image,
               tent::write_pgm(tent::apply_thresholds(img, ts), variant));
  }
  emit(doc, f.out);
  return 0;
}

// --- estimate / experiment ---------------------------------------------------

struct PresetFlags {
  std::string name;
  std::uint64_t seed = 0;
  int replicates = 0;  // 0 → preset default
  int trials = 1000;   // axiom-suite only
  int binomial_N = 100;
  double theta = 0.2;
  int sample_size = 200;
  unsigned threads = 0;
};

void add_preset_flags(CLI::App* cmd, PresetFlags& p, bool name_required) {
  auto* name =
      cmd->add_option("--name", p.name,
                      "Named experiment: binomial-robustness, breakdown-sweep, "
                      "consistency or axiom-suite")
          ->check(CLI::IsMember({"binomial-robustness", "breakdown-sweep",
                                 "consistency", "axiom-suite"}));
  if (name_required) name->required();
  cmd->add_option("--seed", p.seed, "Master RNG seed")->capture_default_str();
  cmd->add_option("--replicates", p.replicates,
                  "Replicates per point (0 = experiment default)")
      ->capture_default_str();
  cmd->add_option("--trials", p.trials, "Fuzz trials per property (axiom-suite)")
      ->capture_default_str();
  cmd->add_option("--binomial-N", p.binomial_N, "Binomial trial count N")
      ->capture_default_str();
  cmd->add_option("--theta", p.theta, "True success probability")
      ->capture_default_str();
  cmd->add_option("--n", p.sample_size, "Clean sample size per replicate")
      ->capture_default_str();
  cmd->add_option("--threads", p.threads,
                  "Worker threads (0 = machine parallelism)")
      ->capture_default_str();
}

Json contamination_rows(const std::vector<tent::ContaminationRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json row;
    row["seed"] = r.seed;
    row["theta-t"] = r.theta_t;
    row["theta-mle"] = r.theta_mle;
    out.push_back(row);
  }
  return out;
}

tent::ReportDocument run_named_experiment(const std::string& command,
                                          const PresetFlags& p) {
  tent::ReportDocument doc;
  doc.command = command;
  Json& cfg = doc.config;
  cfg["name"] = p.name;
  cfg["seed"] = p.seed;
  cfg["threads"] = p.threads;

  if (p.name == "binomial-robustness") {
    tent::ContaminationConfig cc;
    cc.binomial_N = p.binomial_N;
    cc.true_theta = p.theta;
    cc.sample_size = p.sample_size;
    cc.outlier_count = 10;
    for (int v = 91; v <= 100; ++v) cc.outlier_values.push_back(v);
    cc.replicates = p.replicates > 0 ? p.replicates : 100;
    cc.seed = p.seed;
    auto rep = tent::run_contamination_experiment(cc, p.threads);

    cfg["binomial-N"] = cc.binomial_N;
    cfg["theta"] = cc.true_theta;
    cfg["n"] = cc.sample_size;
    cfg["outlier-count"] = cc.outlier_count;
    cfg["outlier-values"] = cc.outlier_values;
    cfg["replicates"] = cc.replicates;
    doc.results["rows"] = contamination_rows(rep.rows);
    doc.results["median-theta-t"] = rep.median_t;
    doc.results["median-theta-mle"] = rep.median_mle;
    doc.results["mae-theta-t"] = rep.mae_t;
    doc.results["mae-theta-mle"] = rep.mae_mle;
  } else if (p.name == "breakdown-sweep") {
    std::vector<double> eps = {0.1, 0.2, 0.3, 0.4};
    int replicates = p.replicates > 0 ? p.replicates : 50;
    auto rep = tent::run_breakdown_sweep(p.binomial_N, p.theta, eps, 100,
                                         p.sample_size, replicates, p.seed,
                                         p.threads);
    cfg["binomial-N"] = p.binomial_N;
    cfg["theta"] = p.theta;
    cfg["n"] = p.sample_size;
    cfg["eps-grid"] = eps;
    cfg["outlier-value"] = 100;
    cfg["replicates"] = replicates;
    Json points = Json::array();
    for (const auto& pt : rep.points) {
      Json q;
      q["eps"] = pt.eps;
      q["median-theta-t"] = pt.median_t;
      q["median-theta-mle"] = pt.median_mle;
      q["rows"] = contamination_rows(pt.rows);
      points.push_back(q);
    }
    doc.results["points"] = points;
  } else if (p.name == "consistency") {
    std::vector<int> n_grid = {50, 500, 5000};
    int replicates = p.replicates > 0 ? p.replicates : 50;
    auto rep = tent::run_consistency_curve(p.binomial_N, p.theta, n_grid,
                                           replicates, p.seed, p.threads);
    cfg["binomial-N"] = p.binomial_N;
    cfg["theta"] = p.theta;
    cfg["n-grid"] = n_grid;
    cfg["replicates"] = replicates;
    Json points = Json::array();
    for (const auto& pt : rep.points) {
      Json q;
      q["n"] = pt.n;
      q["median-abs-error"] = pt.median_abs_error;
      q["abs-errors"] = pt.abs_errors;
      points.push_back(q);
    }
    doc.results["points"] = points;
  } else if (p.name == "axiom-suite") {
    auto suite = tent::run_axiom_suite(p.seed, p.trials);
    cfg["trials"] = p.trials;
    doc.results["all-passed"] = suite.all_passed();
    Json checks = Json::array();
    for (const auto& c : suite.checks) {
      Json q;
      q["name"] = c.name;
      q["passed"] = c.passed;
      q["worst-margin"] = c.worst;
      q["tolerance"] = c.tolerance;
      q["trials"] = c.trials;
      checks.push_back(q);
    }
    doc.results["checks"] = checks;
  } else {
    throw tent::Error(tent::Errc::InvalidConfig,
                      "unknown experiment name: " + p.name);
  }
  doc.provenance["generator"] = tent::kGeneratorName;
  return doc;
}

struct EstimateFlags {
  std::string input;
  std::string out;
  PresetFlags preset;
};

int run_estimate(const EstimateFlags& f) {
  if (f.input.empty() && f.preset.name.empty())
    throw tent::Error(tent::Errc::InvalidConfig,
                      "pass either --input (sample file) or --name (experiment)");
  if (!f.input.empty() && !f.preset.name.empty())
    throw tent::Error(tent::Errc::InvalidConfig,
                      "--input and --name are mutually exclusive");

  if (!f.preset.name.empty()) {
    emit(run_named_experiment("estimate", f.preset), f.out);
    return 0;
  }

  std::string bytes = read_file(f.input);
  std::vector<int> samples = parse_int_samples(bytes);
  tent::DiscreteModel model = tent::binomial_model(f.preset.binomial_N);
  tent::EstimationResult fit = tent::fit_min_t_divergence(samples, model);
  double mle = tent::mle_binomial(samples, f.preset.binomial_N);

  tent::ReportDocument doc;
  doc.command = "estimate";
  doc.config["input"] = f.input;
  doc.config["binomial-N"] = f.preset.binomial_N;
  doc.results["samples"] = samples.size();
  doc.results["theta-t"] = fit.theta_hat[0];
  doc.results["divergence-at-min"] = fit.divergence_at_min;
  doc.results["evaluations"] = fit.evaluations;
  doc.results["method"] =
      fit.method == tent::EstimationResult::Method::grid ? "grid"
                                                         : "golden-section";
  doc.results["theta-mle"] = mle;
  doc.provenance["input"] = input_provenance(f.input, bytes);
  emit(doc, f.out);
  return 0;
}

// --- cluster ----------------------------------------------------------------

struct ClusterFlags {
  std::string input;
  std::string out;
  int k = 2;
  std::string reg = "t";
  double lambda = 0.0;  // 0 = unset, use the grid
  std::string lambda_grid;
  int restarts = 20;
  int max_iterations = 100;
  double tolerance = 1e-6;
  std::uint64_t seed = 0;
  std::string label_col = "last";
  std::string delimiter = ",";
  bool header = false;
  bool no_standardize = false;
  unsigned threads = 0;
};

std::vector<double> resolve_lambda_grid(const ClusterFlags& f) {
  if (f.lambda != 0.0 && !f.lambda_grid.empty())
    throw tent::Error(tent::Errc::InvalidConfig,
                      "--lambda and --lambda-grid are mutually exclusive");
  if (f.lambda != 0.0) {
    if (!(f.lambda > 0.0))
      throw tent::Error(tent::Errc::ParameterOutOfRange, "lambda must be > 0");
    return {f.lambda};
  }
  if (f.lambda_grid.empty() || f.lambda_grid == "default")
    return {0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
  std::vector<double> grid;
  std::size_t start = 0;
  while (start <= f.lambda_grid.size()) {
    std::size_t pos = f.lambda_grid.find(',', start);
    std::string cell = trimmed(pos == std::string::npos
                                   ? f.lambda_grid.substr(start)
                                   : f.lambda_grid.substr(start, pos - start));
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || !(v > 0.0))
      throw tent::Error(tent::Errc::InvalidConfig,
                        "lambda grid entry '" + cell + "' is not a positive number");
    grid.push_back(v);
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return grid;
}

int run_cluster(const ClusterFlags& f) {
  std::string bytes = read_file(f.input);
  tent::DelimitedOptions opt;
  opt.delimiter = parse_delimiter(f.delimiter);
  opt.has_header = f.header;
  opt.label_column = parse_label_column(f.label_col);
  tent::Dataset data = tent::read_delimited(bytes, opt);
  if (!f.no_standardize) data = tent::standardized(data);

  tent::Regularizer reg = tent::Regularizer::TEntropy;
  if (f.reg == "shannon") reg = tent::Regularizer::Shannon;
  if (f.reg == "none") reg = tent::Regularizer::None;
  std::vector<double> grid = resolve_lambda_grid(f);

  tent::ReportDocument doc;
  doc.command = "cluster";
  doc.config["input"] = f.input;
  doc.config["k"] = f.k;
  doc.config["reg"] = f.reg;
  doc.config["lambda-grid"] = grid;
  doc.config["restarts"] = f.restarts;
  doc.config["max-iterations"] = f.max_iterations;
  doc.config["tolerance"] = f.tolerance;
  doc.config["seed"] = f.seed;
  doc.config["label-col"] = f.label_col;
  doc.config["delimiter"] = f.delimiter;
  doc.config["header"] = f.header;
  doc.config["standardize"] = !f.no_standardize;
  doc.config["threads"] = f.threads;

  const auto& truth = data.labels;
  Json per_lambda = Json::array();
  double best_nmi = -1.0, best_ari = -2.0;
  double best_nmi_lambda = 0.0, best_ari_lambda = 0.0;

  for (double lambda : grid) {
    tent::FitConfig cfg;
    cfg.k = f.k;
    cfg.lambda = lambda;
    cfg.regularizer = reg;
    cfg.restarts = f.restarts;
    cfg.max_iterations = f.max_iterations;
    cfg.tolerance = f.tolerance;
    cfg.seed = f.seed;
    std::vector<tent::RestartOutcome> outcomes;
    tent::WeightedClusteringState state =
        tent::fit(data, cfg, f.threads, &outcomes, nullptr);

    Json block;
    block["lambda"] = lambda;
    block["best-objective"] = state.objective;
    block["best-iterations"] = state.iterations;
    double mean_obj = 0.0;
    for (const auto& o : outcomes) mean_obj += o.objective;
    block["mean-objective"] = mean_obj / static_cast<double>(outcomes.size());
    block["labels"] = state.labels;
    Json weights = Json::array();
    Json centroids = Json::array();
    for (std::size_t j = 0; j < state.k; ++j) {
      std::vector<double> wrow(state.weights.begin() +
                                   static_cast<long>(j * state.p),
                               state.weights.begin() +
                                   static_cast<long>((j + 1) * state.p));
      std::vector<double> crow(state.centroids.begin() +
                                   static_cast<long>(j * state.p),
                               state.centroids.begin() +
                                   static_cast<long>((j + 1) * state.p));
      weights.push_back(wrow);
      centroids.push_back(crow);
    }
    block["weights"] = weights;
    block["centroids"] = centroids;

    if (truth) {
      double v_nmi = tent::nmi(state.labels, *truth);
      double v_ari = tent::ari(state.labels, *truth);
      block["nmi"] = v_nmi;
      block["ari"] = v_ari;
      double mean_nmi = 0.0, mean_ari = 0.0;
      for (const auto& o : outcomes) {
        mean_nmi += tent::nmi(o.labels, *truth);
        mean_ari += tent::ari(o.labels, *truth);
      }
      block["mean-nmi"] = mean_nmi / static_cast<double>(outcomes.size());
      block["mean-ari"] = mean_ari / static_cast<double>(outcomes.size());
      if (v_nmi > best_nmi) {
        best_nmi = v_nmi;
        best_nmi_lambda = lambda;
      }
      if (v_ari > best_ari) {
        best_ari = v_ari;
        best_ari_lambda = lambda;
      }
    }
    per_lambda.push_back(block);
  }

  doc.results["n"] = data.n;
  doc.results["p"] = data.p;
  doc.results["per-lambda"] = per_lambda;
  if (truth) {
    doc.results["best-nmi"] = best_nmi;
    doc.results["best-nmi-lambda"] = best_nmi_lambda;
    doc.results["best-ari"] = best_ari;
    doc.results["best-ari-lambda"] = best_ari_lambda;
  }
  doc.provenance["input"] = input_provenance(f.input, bytes);
  doc.provenance["generator"] = tent::kGeneratorName;
  emit(doc, f.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "t-entropy toolkit: entropy evaluation, Kapur multilevel segmentation, "
      "minimum-divergence robust estimation and entropy-weighted clustering"};
  app.require_subcommand(1);

  EntropyFlags ef;
  auto* entropy_cmd = app.add_subcommand(
      "entropy", "Per-row entropy of probability vectors from a delimited file");
  entropy_cmd->add_option("--input", ef.input, "Delimited file, one vector per row")
      ->required();
  add_measure_flags(entropy_cmd, ef.measure);
  entropy_cmd->add_option("--kind", ef.kind, "Vector kind: proper or generalized")
      ->capture_default_str()
      ->check(CLI::IsMember({"proper", "generalized"}));
  entropy_cmd->add_option("--delimiter", ef.delimiter, "Cell delimiter")
      ->capture_default_str();
  entropy_cmd->add_option("--out", ef.out, "Report path (default stdout)");

  SegmentFlags sf;
  auto* segment_cmd = app.add_subcommand(
      "segment", "Multilevel threshold segmentation of a PGM image");
  segment_cmd->add_option("--input", sf.input, "PGM image (P2 or P5)")
      ->required();
  segment_cmd->add_option("--k", sf.k, "Number of segments (2..64)")
      ->required();
  add_measure_flags(segment_cmd, sf.measure);
  segment_cmd->add_option("--seed", sf.seed, "RNG seed")->capture_default_str();
  segment_cmd
      ->add_option("--generations", sf.generations, "DE generation budget")
      ->capture_default_str();
  segment_cmd
      ->add_option("--np", sf.np, "DE population size (0 = max(20, 10·dim))")
      ->capture_default_str();
  segment_cmd->add_option("--f", sf.f, "DE scale factor F")
      ->capture_default_str();
  segment_cmd->add_option("--cr", sf.cr, "DE crossover rate CR")
      ->capture_default_str();
  segment_cmd
      ->add_option("--threads", sf.threads,
                   "Worker threads (0 = machine parallelism)")
      ->capture_default_str();
  segment_cmd->add_option("--out", sf.out, "Report path (default stdout)");
  segment_cmd->add_option("--out-image", sf.out_image,
                          "Write the segmented image here (optional)");
  segment_cmd
      ->add_option("--image-format", sf.image_format,
                   "Output image variant: p5 (binary) or p2 (plain)")
      ->capture_default_str()
      ->check(CLI::IsMember({"p5", "p2"}));

  EstimateFlags tf;
  auto* estimate_cmd = app.add_subcommand(
      "estimate",
      "Minimum t-divergence estimation: fit a sample file or run a named "
      "experiment");
  estimate_cmd->add_option("--input", tf.input,
                           "Integer sample file (whitespace/comma separated)");
  add_preset_flags(estimate_cmd, tf.preset, false);
  estimate_cmd->add_option("--out", tf.out, "Report path (default stdout)");

  ClusterFlags cf;
  auto* cluster_cmd = app.add_subcommand(
      "cluster", "Entropy-weighted k-means over a delimited dataset");
  cluster_cmd->add_option("--input", cf.input, "Delimited dataset")->required();
  cluster_cmd->add_option("--k", cf.k, "Number of clusters")->required();
  cluster_cmd
      ->add_option("--reg", cf.reg, "Weight regularizer: t, shannon or none")
      ->capture_default_str()
      ->check(CLI::IsMember({"t", "shannon", "none"}));
  cluster_cmd->add_option("--lambda", cf.lambda,
                          "Single regularization weight (overrides the grid)");
  cluster_cmd->add_option(
      "--lambda-grid", cf.lambda_grid,
      "Comma-separated lambdas or 'default' (0.1,0.5,1,2,5,10)");
  cluster_cmd->add_option("--restarts", cf.restarts, "Seeded restarts")
      ->capture_default_str();
  cluster_cmd
      ->add_option("--max-iterations", cf.max_iterations,
                   "Iteration cap per restart")
      ->capture_default_str();
  cluster_cmd->add_option("--tolerance", cf.tolerance,
                          "Objective-change convergence threshold")
      ->capture_default_str();
  cluster_cmd->add_option("--seed", cf.seed, "RNG seed")->capture_default_str();
  cluster_cmd
      ->add_option("--label-col", cf.label_col,
                   "Ground-truth label column: last, none or a 0-based index")
      ->capture_default_str();
  cluster_cmd->add_option("--delimiter", cf.delimiter, "Cell delimiter")
      ->capture_default_str();
  cluster_cmd->add_flag("--header", cf.header, "Skip a header line");
  cluster_cmd->add_flag("--no-standardize", cf.no_standardize,
                        "Skip per-feature standardization");
  cluster_cmd
      ->add_option("--threads", cf.threads,
                   "Worker threads (0 = machine parallelism)")
      ->capture_default_str();
  cluster_cmd->add_option("--out", cf.out, "Report path (default stdout)");

  PresetFlags xf;
  std::string xf_out;
  auto* experiment_cmd = app.add_subcommand(
      "experiment", "Run a named, fully seeded experiment preset");
  add_preset_flags(experiment_cmd, xf, true);
  experiment_cmd->add_option("--out", xf_out, "Report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (entropy_cmd->parsed()) return run_entropy(ef);
    if (segment_cmd->parsed()) return run_segment(sf);
    if (estimate_cmd->parsed()) return run_estimate(tf);
    if (cluster_cmd->parsed()) return run_cluster(cf);
    if (experiment_cmd->parsed()) {
      emit(run_named_experiment("experiment", xf), xf_out);
      return 0;
    }
  } catch (const tent::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == tent::Errc::InfeasibleK ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
