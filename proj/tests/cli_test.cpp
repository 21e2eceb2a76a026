#include "hawkins/manifest.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out;
};

// Runs the CLI with stdout captured; stderr goes to a scratch file.
CliRun cli(const std::string& args) {
  const std::string cmd = std::string(HAWKINS_CLI_PATH) + " " + args + " 2>" +
                          (fs::temp_directory_path() / "hawkins_cli_stderr.txt").string();
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string last_stderr() {
  std::ifstream in(fs::temp_directory_path() / "hawkins_cli_stderr.txt");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "hawkins_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_config(const std::string& name, const std::string& text) {
  const fs::path p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST(Cli, HelpExitsZero) {
  EXPECT_EQ(cli("--help").code, 0);
  EXPECT_EQ(cli("experiment --help").code, 0);
}

TEST(Cli, InvalidFlagsExitOne) {
  EXPECT_EQ(cli("sample --bogus 3").code, 1);
  EXPECT_FALSE(last_stderr().empty());
  EXPECT_EQ(cli("").code, 1);
  EXPECT_EQ(cli("sample --n abc").code, 1);
  EXPECT_EQ(cli("sample --sampler magic").code, 1);
  EXPECT_EQ(cli("predict --statistic T --n 100").code, 1);  // needs --pattern
}

TEST(Cli, ExactSet) {
  const CliRun r = cli("exact --set '.;2'");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1/1\n");
  EXPECT_EQ(cli("exact --set '2,3;4'").out, "1/2\n");
  EXPECT_NE(cli("exact --set '3,2;x'").code, 0);
}

TEST(Cli, ExactLevel) {
  const CliRun r = cli("exact --level 4");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "subset,numerator,denominator\r\n,0,1\r\n2,1,2\r\n3,0,1\r\n\"2,3\",1,2\r\n");
}

TEST(Cli, SampleTrivialAndDeterministic) {
  EXPECT_EQ(cli("sample --n 2 --seed 4").out, "2\r\n");
  const fs::path a = scratch("a.csv"), b = scratch("b.csv");
  EXPECT_EQ(cli("sample --n 5000 --seed 9 --out " + a.string()).code, 0);
  EXPECT_EQ(cli("sample --n 5000 --seed 9 --out " + b.string()).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(slurp(a).empty());
  const auto m = nlohmann::json::parse(slurp(a.string() + ".manifest.json")).get<hawkins::RunManifest>();
  EXPECT_EQ(m.subcommand, "sample");
  EXPECT_EQ(m.seed, 9u);
  EXPECT_EQ(m.outputs, std::vector<std::string>{a.string()});
}

TEST(Cli, SampleSummaryLargeN) {
  const CliRun r = cli("sample --n 1e6 --seed 3 --summary --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_GT(j["y_N"].get<double>(), 0.03);
  EXPECT_LT(j["y_N"].get<double>(), 0.12);
}

TEST(Cli, Moments) {
  const CliRun r = cli("moments --n 4 --k 2 --mode exact");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("4,1,5,12,"), std::string::npos);
  EXPECT_EQ(cli("moments --n 100 --mode exact").code, 1);  // exact cap
  EXPECT_EQ(cli("moments --n 6 --pattern 0,1 --mode exact").code, 0);
}

TEST(Cli, Predict) {
  const CliRun r = cli("predict --statistic twin --k 2 --checkpoints 1e4,1e5 --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[1]["n"], 100000);
  EXPECT_EQ(cli("predict --statistic lemma1 --s 1 --r 2 --t 4 --n 1000").code, 0);
}

TEST(Cli, VerifySuites) {
  EXPECT_EQ(cli("verify measure").code, 0);
  EXPECT_EQ(cli("verify formulas").code, 0);
  EXPECT_EQ(cli("verify formulas --corrupt").code, 2);
  EXPECT_EQ(cli("verify identity").code, 0);
  EXPECT_EQ(cli("verify nonsense").code, 1);
}

TEST(Cli, ExperimentMissingConfig) {
  EXPECT_EQ(cli("experiment --config /nonexistent/x.cfg").code, 1);
  EXPECT_EQ(cli("experiment").code, 1);
}

TEST(Cli, ExperimentSinglePath) {
  const fs::path cfg = write_config("r1.cfg", "n = 500\nr = 1\nstatistic = twin:2\ncheckpoints = 100, 500\n");
  const CliRun r = cli("experiment --config " + cfg.string() + " --format csv");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("twin:2,500,"), std::string::npos);
  std::istringstream lines(r.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_NE(row.find(",,,"), std::string::npos);  // var and stderr empty
}

TEST(Cli, ExperimentBandFailureExitsTwo) {
  const fs::path cfg = write_config("fail.cfg", "n = 500\nr = 8\nstatistic = primes\ncheckpoints = 500\n"
                                                "check = primes 500 mean 0 1\n");
  EXPECT_EQ(cli("experiment --config " + cfg.string()).code, 2);
}

TEST(Cli, ExperimentFlagsOverrideConfigAndManifestRoundTrips) {
  const fs::path cfg = write_config("ovr.cfg", "n = 500\nr = 8\nseed = 1\nstatistic = primes\ncheckpoints = 500\n");
  const fs::path out = scratch("ovr.json");
  ASSERT_EQ(cli("experiment --config " + cfg.string() + " --r 5 --seed 77 --out " + out.string()).code, 0);
  const auto j = nlohmann::json::parse(slurp(out));
  EXPECT_EQ(j["config"]["R"], 5);
  EXPECT_EQ(j["config"]["seed"], 77);
  const auto m = j["manifest"].get<hawkins::RunManifest>();
  EXPECT_EQ(m.seed, 77u);
  EXPECT_EQ(m.config_path, cfg.string());
  EXPECT_EQ(m.outputs, std::vector<std::string>{out.string()});
  EXPECT_EQ(nlohmann::json(m), j["manifest"]);
}

TEST(Cli, ExperimentSameBytesForAnyWorkers) {
  const fs::path out = scratch("rep.json");
  const std::string cfg = std::string(HAWKINS_SOURCE_DIR) + "/configs/experiment.cfg";
  std::string first;
  for (int w : {1, 4}) {
    ASSERT_EQ(cli("experiment --config " + cfg + " --r 20 --workers " + std::to_string(w) + " --out " +
                  out.string()).code,
              0);
    if (first.empty()) first = slurp(out);
    else EXPECT_EQ(slurp(out), first);
  }
}

TEST(Cli, Equivalence) {
  EXPECT_EQ(cli("equivalence --n 200 --r 2000 --seed 3").code, 0);
  EXPECT_EQ(cli("equivalence --n 200 --r 2000 --seed 3 --corrupt").code, 2);
}

TEST(Manifest, RoundTrip) {
  hawkins::RunManifest m;
  m.subcommand = "experiment";
  m.parameters = {{"n", "100"}, {"workers", "4"}};
  m.config_path = "a.cfg";
  m.outputs = {"x.json"};
  m.seed = 5;
  m.tool_version = "1.0.0";
  const auto back = nlohmann::json::parse(nlohmann::json(m).dump()).get<hawkins::RunManifest>();
  EXPECT_EQ(back, m);
  hawkins::RunManifest w = m;
  w.parameters["workers"] = "8";
  w.outputs = {"y.json"};
  EXPECT_EQ(w.id(), m.id());
  w.seed = 6;
  EXPECT_NE(w.id(), m.id());
}
