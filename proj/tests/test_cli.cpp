#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "tent/pgm.hpp"
#include "tent/report.hpp"

namespace fs = std::filesystem;
using tent::Json;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("tent_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void spit(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out << bytes;
}

CliResult run_cli(const std::string& args) {
  fs::path out_path = work_dir() / "stdout.txt";
  fs::path err_path = work_dir() / "stderr.txt";
  std::string command = std::string("\"") + TENT_CLI_PATH + "\" " + args +
                        " > \"" + out_path.string() + "\" 2> \"" +
                        err_path.string() + "\"";
  int raw = std::system(command.c_str());
  CliResult r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

std::string uniform_pgm64() {
  std::string text = "P2\n64 1\n63\n";
  for (int v = 0; v < 64; ++v) {
    text += std::to_string(v);
    text += (v % 16 == 15) ? '\n' : ' ';
  }
  return text;
}

fs::path blob_csv() {
  static const fs::path path = [] {
    fs::path p = work_dir() / "blobs.csv";
    std::mt19937_64 rng(5);
    std::normal_distribution<double> unit(0.0, 1.0);
    std::ostringstream out;
    for (int i = 0; i < 60; ++i) {
      int cluster = i < 30 ? 0 : 1;
      double shift = cluster == 1 ? 8.0 : 0.0;
      out << shift + 0.5 * unit(rng) << ',' << shift + 0.5 * unit(rng) << ','
          << cluster << '\n';
    }
    spit(p, out.str());
    return p;
  }();
  return path;
}

}  // namespace

TEST_CASE("help exits zero and lists the subcommands") {
  auto r = run_cli("--help");
  CHECK(r.code == 0);
  for (const char* name :
       {"entropy", "segment", "estimate", "cluster", "experiment"})
    CHECK(r.out.find(name) != std::string::npos);
}

TEST_CASE("argument errors exit with code 2") {
  CHECK(run_cli("").code == 2);                    // missing subcommand
  CHECK(run_cli("entropy --bogus x").code == 2);   // unknown flag
  CHECK(run_cli("frobnicate").code == 2);          // unknown subcommand
  CHECK(run_cli("entropy").code == 2);             // missing --input
  auto r = run_cli("entropy --input /nonexistent/f.csv");
  CHECK(r.code == 2);
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("entropy reports per-row values") {
  fs::path input = work_dir() / "probs.csv";
  spit(input, "0.2,0.8\n0.25,0.25,0.25,0.25\n");

  auto r = run_cli("entropy --input \"" + input.string() + "\"");
  REQUIRE(r.code == 0);
  Json doc = Json::parse(r.out);
  CHECK(doc["tool"] == "tent");
  CHECK(doc["version"] == "1.0.0");
  CHECK(doc["schema"] == "tent-report/1");
  CHECK(doc["command"] == "entropy");
  CHECK(doc["config"]["measure"] == "t");
  CHECK(doc["config"]["c"] == 1.0);
  CHECK(doc["results"]["rows"] == 2);
  double h0 = doc["results"]["entropies"][0].get<double>();
  double h1 = doc["results"]["entropies"][1].get<double>();
  CHECK(std::fabs(h0 - 0.2061262976486300275) <= 1e-12);
  CHECK(std::fabs(h1 - (std::atan(4.0) - 0.78539816339744830962)) <= 1e-12);
  CHECK(doc["provenance"]["input"]["fnv1a64"].get<std::string>().size() == 16);

  auto shannon = run_cli("entropy --input \"" + input.string() +
                         "\" --measure shannon");
  REQUIRE(shannon.code == 0);
  Json sdoc = Json::parse(shannon.out);
  CHECK(std::fabs(sdoc["results"]["entropies"][1].get<double>() -
                  std::log(4.0)) <= 1e-12);

  fs::path bad = work_dir() / "bad.csv";
  spit(bad, "0.5,0.6\n");
  auto rb = run_cli("entropy --input \"" + bad.string() + "\"");
  CHECK(rb.code == 2);
  CHECK(rb.err.find("row 1") != std::string::npos);
}

TEST_CASE("segment finds the symmetric split of a uniform image") {
  fs::path image = work_dir() / "uniform.pgm";
  spit(image, uniform_pgm64());
  fs::path report = work_dir() / "segment.json";
  fs::path rendered = work_dir() / "rendered.pgm";

  auto r = run_cli("segment --input \"" + image.string() +
                   "\" --k 2 --seed 7 --out \"" + report.string() +
                   "\" --out-image \"" + rendered.string() + "\"");
  REQUIRE(r.code == 0);
  Json doc = Json::parse(slurp(report));
  CHECK(doc["command"] == "segment");
  CHECK(doc["results"]["k"] == 2);
  CHECK(doc["results"]["levels"] == 64);
  CHECK(doc["results"]["occupied-levels"] == 64);
  REQUIRE(doc["results"]["thresholds"].size() == 1);
  CHECK(doc["results"]["thresholds"][0] == 31);
  CHECK(std::fabs(doc["results"]["objective"].get<double>() -
                  1.5083166599343600667) <= 1e-12);
  REQUIRE(doc["results"]["segments"].size() == 2);
  CHECK(doc["results"]["segments"][0]["lo"] == 0);
  CHECK(doc["results"]["segments"][0]["hi"] == 31);
  CHECK(std::fabs(doc["results"]["segments"][0]["mass"].get<double>() - 0.5) <=
        1e-12);

  // The rendered image is a readable PGM with at most k distinct values.
  tent::GrayImage img = tent::read_pgm(slurp(rendered));
  CHECK(img.width == 64);
  CHECK(img.height == 1);
  std::set<int> values(img.pixels.begin(), img.pixels.end());
  CHECK(values.size() <= 2);

  // A constant image cannot be split at all.
  fs::path flat = work_dir() / "flat.pgm";
  spit(flat, "P2\n4 2\n255\n9 9 9 9\n9 9 9 9\n");
  auto rf = run_cli("segment --input \"" + flat.string() + "\" --k 2");
  CHECK(rf.code == 3);
  CHECK(rf.err.find("error:") != std::string::npos);
}

TEST_CASE("estimate fits samples from a file") {
  fs::path samples = work_dir() / "samples.txt";
  spit(samples, "20 18 22 19 21\n");
  auto r = run_cli("estimate --input \"" + samples.string() + "\"");
  REQUIRE(r.code == 0);
  Json doc = Json::parse(r.out);
  CHECK(doc["results"]["samples"] == 5);
  CHECK(doc["results"]["theta-mle"] == 0.2);
  double theta = doc["results"]["theta-t"].get<double>();
  CHECK(theta > 0.1);
  CHECK(theta < 0.3);
  CHECK(doc["results"]["method"] == "golden-section");

  fs::path outlier = work_dir() / "outlier.txt";
  spit(outlier, "20 101\n");
  CHECK(run_cli("estimate --input \"" + outlier.string() + "\"").code == 2);

  // File mode and preset mode are mutually exclusive.
  CHECK(run_cli("estimate --input \"" + samples.string() +
                "\" --name consistency").code == 2);
  CHECK(run_cli("estimate").code == 2);
}

TEST_CASE("reports are byte-identical across reruns") {
  fs::path a = work_dir() / "suite_a.json";
  fs::path b = work_dir() / "suite_b.json";
  std::string args = "experiment --name axiom-suite --trials 300 --seed 11";
  REQUIRE(run_cli(args + " --out \"" + a.string() + "\"").code == 0);
  REQUIRE(run_cli(args + " --out \"" + b.string() + "\"").code == 0);
  std::string bytes = slurp(a);
  CHECK(!bytes.empty());
  CHECK(bytes == slurp(b));

  Json doc = Json::parse(bytes);
  CHECK(doc["results"]["all-passed"] == true);
  CHECK(doc["results"]["checks"].size() == 16);
  for (const auto& check : doc["results"]["checks"])
    CHECK(check["passed"] == true);
}

TEST_CASE("cluster separates blobs and is thread-count independent") {
  std::string base = "cluster --input \"" + blob_csv().string() +
                     "\" --k 2 --lambda 1 --seed 3";
  fs::path t1 = work_dir() / "threads1.json";
  fs::path t4 = work_dir() / "threads4.json";
  REQUIRE(run_cli(base + " --threads 1 --out \"" + t1.string() + "\"").code ==
          0);
  REQUIRE(run_cli(base + " --threads 4 --out \"" + t4.string() + "\"").code ==
          0);

  Json d1 = Json::parse(slurp(t1));
  Json d4 = Json::parse(slurp(t4));
  CHECK(d1["results"] == d4["results"]);  // only the thread echo may differ
  CHECK(d1["config"]["threads"] == 1);
  CHECK(d4["config"]["threads"] == 4);

  CHECK(d1["results"]["best-ari"] == 1.0);
  CHECK(d1["results"]["best-nmi"] == 1.0);
  CHECK(d1["results"]["n"] == 60);
  CHECK(d1["results"]["p"] == 2);
  REQUIRE(d1["results"]["per-lambda"].size() == 1);
  CHECK(d1["results"]["per-lambda"][0]["labels"].size() == 60);

  // Identical invocations give identical bytes.
  fs::path again = work_dir() / "threads1_again.json";
  REQUIRE(run_cli(base + " --threads 1 --out \"" + again.string() + "\"")
              .code == 0);
  CHECK(slurp(t1) == slurp(again));

  // --lambda and --lambda-grid conflict.
  CHECK(run_cli(base + " --lambda-grid 0.1,1").code == 2);
}

TEST_CASE("cluster recovers the iris classes") {
  std::string iris = std::string(TENT_DATA_DIR) + "/iris.csv";
  auto r = run_cli("cluster --input \"" + iris + "\" --k 3 --seed 1");
  REQUIRE(r.code == 0);
  Json doc = Json::parse(r.out);
  CHECK(doc["results"]["n"] == 150);
  CHECK(doc["results"]["p"] == 4);
  CHECK(doc["results"]["per-lambda"].size() == 6);  // default lambda grid
  CHECK(doc["results"]["best-nmi"].get<double>() >= 0.70);
  CHECK(doc["results"]["best-ari"].get<double>() >= 0.65);
}
