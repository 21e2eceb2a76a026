// Acceptance runner.  One PASS/FAIL line per criterion.
//
//   acceptance                 run everything
//   acceptance --criterion 7   run one

#include "hawkins/asymptotics.hpp"
#include "hawkins/config.hpp"
#include "hawkins/counters.hpp"
#include "hawkins/exact_measure.hpp"
#include "hawkins/moment_ladder.hpp"
#include "hawkins/montecarlo.hpp"
#include "hawkins/verify.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace hawkins;

namespace {

// bands
constexpr double kMertensBand = 10.0;     // C4
constexpr double kResidualBand = 10.0;    // C5
constexpr double kLemmaBand = 30.0;       // C6, frozen from a scan: worst 24.5, (0,2,4) near n=100
constexpr double kMcStderrs = 4.0;        // C7
constexpr double kMcRelative = 0.02;      // C7
constexpr double kTwinRatioLo = 0.9, kTwinRatioHi = 1.1;    // C9
constexpr double kTupleRatioLo = 0.8, kTupleRatioHi = 1.2;  // C9
constexpr double kEquivalenceAlpha = 0.01;  // C10

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int prec = 4) {
  std::ostringstream os;
  os.precision(prec);
  os << v;
  return os.str();
}

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string source_path(const std::string& rel) { return std::string(HAWKINS_SOURCE_DIR) + "/" + rel; }

ExperimentConfig load_experiment(const std::string& rel) {
  ExperimentConfig c = ExperimentConfig::from_entries(load_config(source_path(rel)));
  c.workers = workers();
  return c;
}

Outcome c1_normalization() {
  for (std::uint64_t n = 2; n <= 16; ++n) {
    const Rational total = enumerate_level(n).total();
    if (total != 1) return {false, "n=" + std::to_string(n) + " total " + to_string(total)};
  }
  return {true, "sum of mu is exactly 1 for every cutoff 2..16"};
}

Outcome summarize_suite(const VerifyReport& rep) {
  std::size_t failed = 0;
  std::string first;
  for (const auto& c : rep.checks)
    if (!c.pass && failed++ == 0) first = c.name + (c.detail.empty() ? "" : " [" + c.detail + "]");
  return {rep.pass(), std::to_string(rep.checks.size() - failed) + "/" + std::to_string(rep.checks.size()) +
                          " exact checks" + (failed ? "; first failure: " + first : "")};
}

Outcome c2_formulas() { return summarize_suite(verify_formulas(false, 5, 8)); }

Outcome c3_ladder() { return summarize_suite(verify_ladder()); }

Outcome c4_mertens() {
  const MomentTable t = build_moment_table(10000, 1, LadderMode::floating);
  double worst = 0;
  std::uint64_t at = 0;
  for (std::uint64_t n = 10; n <= 10000; ++n) {
    const double M = harmonic_M(n);
    const double v = std::abs(t.value(n, 1) - 1 / M) * M * M * M;
    if (v > worst) worst = v, at = n;
  }
  return {worst <= kMertensBand, "max |E(y_n) - 1/M_n| M_n^3 = " + fmt(worst) + " at n=" + std::to_string(at) +
                                     " (band " + fmt(kMertensBand) + ")"};
}

Outcome c5_residuals() {
  bool ok = true;
  std::ostringstream detail;
  auto track = [&](const std::string& name, double& worst, double r) { worst = std::max(worst, std::abs(r)); (void)name; };
  double hat_worst = 0;
  for (const auto& pt : hat_ladder_series<double>(10000))
    if (pt.n >= 100) track("hat", hat_worst, predict_That(pt.n).normalized_residual(pt.first));
  detail << "weighted-sum mean " << fmt(hat_worst);
  ok &= hat_worst <= kResidualBand;
  for (const char* text : {"0,1", "0,2", "0,1,3"}) {
    const Pattern p = Pattern::parse(text);
    double first = 0, second = 0;
    for (const auto& pt : pattern_ladder_series<double>(10000, p)) {
      if (pt.n < 100) continue;
      track("T", first, predict_T(pt.n, p).normalized_residual(pt.first));
      track("T2", second, predict_T_second(pt.n, p).normalized_residual(pt.second));
    }
    detail << "; " << p.str() << " mean " << fmt(first) << ", second moment " << fmt(second);
    ok &= first <= kResidualBand && second <= kResidualBand;
  }
  detail << " (max |normalized residual| over n in [100, 10^4], band " << fmt(kResidualBand) << ")";
  return {ok, detail.str()};
}

Outcome c6_lemma1() {
  std::vector<std::uint64_t> ns;
  for (double x = 100; x <= 1e6 * 1.0001; x *= std::pow(10.0, 0.05)) ns.push_back(static_cast<std::uint64_t>(std::llround(x)));
  const std::vector<double> Ms = harmonic_M(ns);
  bool ok = true;
  std::ostringstream detail;
  for (const ExpansionSpec& s : {ExpansionSpec{0, 1, 3}, ExpansionSpec{1, 2, 4}, ExpansionSpec{0, 2, 4}}) {
    const auto sums = lemma1_sum_exact(s, ns);
    double worst = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const Prediction p = lemma1_expansion(s, ns[i], Ms[i]);
      worst = std::max(worst, std::abs(p.normalized_residual(sums[i])));
    }
    ok &= worst <= kLemmaBand;
    detail << "(" << s.s << "," << s.r << "," << s.t << ") max " << fmt(worst) << "; ";
  }
  detail << "band " << fmt(kLemmaBand);
  return {ok, detail.str()};
}

Outcome c7_montecarlo() {
  const ExperimentConfig cfg = load_experiment("configs/acceptance_c7.cfg");
  const ExperimentReport rep = run_experiment(cfg);
  const auto& r = rep.find("T:0,2", 1000000);
  const bool ok = std::abs(r.z_pred_raw) <= kMcStderrs && std::abs(r.rel_pred) <= kMcRelative;
  std::ostringstream d;
  d << "R=" << cfg.R << " mean " << fmt(r.summary.mean, 7) << " +- " << fmt(r.stderr_mean(), 3) << ", prediction "
    << fmt(r.prediction.value(), 7) << ", z " << fmt(r.z_pred_raw, 3) << ", rel " << fmt(r.rel_pred, 3)
    << "; exact ladder mean " << (r.exact ? fmt(*r.exact, 7) : "n/a") << " (z vs exact " << fmt(r.z_exact, 3) << ")";
  return {ok, d.str()};
}

Outcome c8_identity() {
  const std::uint64_t N = 100000;
  std::size_t checked = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const SievePath p = sample_path_conditional(N, path_seed(20240608, i));
    for (std::uint32_t k = 1; k <= 6; ++k) {
      const auto r = decompose_twin_identity(p, k, N - k);
      if (!r.holds())
        return {false, "path " + std::to_string(i) + " k=" + std::to_string(k) + ": " + std::to_string(r.lhs) +
                           " vs " + std::to_string(r.rhs)};
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " (path, k) pairs decompose exactly"};
}

Outcome c9_scan() {
  const ExperimentConfig cfg = load_experiment("configs/acceptance_c9.cfg");
  const ExperimentReport rep = run_experiment(cfg);
  bool ok = true;
  std::ostringstream d;
  for (const char* s : {"twin:1", "twin:2", "twin:5"}) {
    const double v = rep.find(s, 10000000).ratio_M;
    ok &= v >= kTwinRatioLo && v <= kTwinRatioHi;
    d << s << " " << fmt(v, 5) << "; ";
  }
  const double t = rep.find("tuple:3,6", 10000000).ratio_M;
  ok &= t >= kTupleRatioLo && t <= kTupleRatioHi;
  d << "tuple:3,6 " << fmt(t, 5) << " (x=10^7, R=" << cfg.R << ")";
  return {ok, d.str()};
}

Outcome c10_equivalence() {
  const auto clean = sampler_equivalence_test(1000, 10000, 20240610, false, kEquivalenceAlpha);
  const auto bad = sampler_equivalence_test(1000, 10000, 20240610, true, kEquivalenceAlpha);
  std::ostringstream d;
  for (const auto& r : clean.rows) d << r.statistic << " p_mean " << fmt(r.test.p_mean, 3) << " p_var " << fmt(r.test.p_var, 3) << "; ";
  d << "corrupted control " << (bad.pass() ? "NOT rejected" : "rejected");
  return {clean.pass() && !bad.pass(), d.str()};
}

int run_cli(const std::string& args) {
  const int status = std::system((std::string(HAWKINS_CLI_PATH) + " " + args).c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome c11_reproducible() {
  namespace fs = std::filesystem;
  const fs::path out = fs::temp_directory_path() / "hawkins_acceptance_report.json";
  std::string reference;
  for (int w : {1, 4, 8}) {
    fs::remove(out);
    const int code = run_cli("experiment --config " + source_path("configs/experiment.cfg") + " --workers " +
                             std::to_string(w) + " --out " + out.string() + " 2>/dev/null");
    if (code != 0 && code != 2) return {false, "CLI exited with " + std::to_string(code)};
    std::ifstream in(out, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    if (ss.str().empty()) return {false, "empty report at workers=" + std::to_string(w)};
    if (reference.empty()) reference = ss.str();
    else if (ss.str() != reference) return {false, "report differs at workers=" + std::to_string(w)};
  }
  return {true, "identical " + std::to_string(reference.size()) + "-byte reports at workers 1, 4, 8"};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {"exact measure normalization", c1_normalization},
      {"formula vs brute-force oracle", c2_formulas},
      {"ladder exactness", c3_ladder},
      {"Mertens analogue band", c4_mertens},
      {"residual bands for weighted sum and pattern moments", c5_residuals},
      {"summation lemma expansion", c6_lemma1},
      {"Monte Carlo vs pattern prediction", c7_montecarlo},
      {"twin decomposition identity", c8_identity},
      {"normalized density scan", c9_scan},
      {"sampler equivalence", c10_equivalence},
      {"reproducibility across workers", c11_reproducible},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) {
      selected.push_back(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--criterion N]...\n";
      return 1;
    }
  }
  if (selected.empty())
    for (int i = 1; i <= static_cast<int>(all.size()); ++i) selected.push_back(i);

  bool ok = true;
  for (int i : selected) {
    if (i < 1 || i > static_cast<int>(all.size())) {
      std::cerr << "no criterion " << i << '\n';
      return 1;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = all[i - 1].run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "C" << i << " " << (o.pass ? "PASS" : "FAIL") << "  " << all[i - 1].name << ": " << o.detail
              << "  [" << fmt(secs, 3) << " s]" << std::endl;
    ok &= o.pass;
  }
  return ok ? 0 : 1;
}
