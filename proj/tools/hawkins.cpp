// hawkins: command-line front end.
//
// Exit codes: 0 ok, 1 usage or input error, 2 a check or verification failed.

#include "hawkins/asymptotics.hpp"
#include "hawkins/config.hpp"
#include "hawkins/counters.hpp"
#include "hawkins/csv.hpp"
#include "hawkins/exact_measure.hpp"
#include "hawkins/manifest.hpp"
#include "hawkins/moment_ladder.hpp"
#include "hawkins/montecarlo.hpp"
#include "hawkins/sieve_path.hpp"
#include "hawkins/verify.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

using namespace hawkins;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Writes to --out when given (plus a sidecar manifest), stdout otherwise.
void emit(const std::optional<std::string>& out, RunManifest manifest, bool sidecar,
          const std::function<void(std::ostream&)>& body) {
  if (!out) {
    body(std::cout);
    return;
  }
  std::ofstream os(*out, std::ios::binary);
  if (!os) throw UsageError("cannot open output file '" + *out + "'");
  body(os);
  if (sidecar) {
    manifest.outputs.push_back(*out);
    std::ofstream ms(*out + ".manifest.json", std::ios::binary);
    ms << nlohmann::json(manifest).dump(2) << '\n';
  }
}

RunManifest make_manifest(std::string sub, std::map<std::string, std::string> params, std::uint64_t seed = 0,
                          std::string config = "") {
  RunManifest m;
  m.subcommand = std::move(sub);
  m.parameters = std::move(params);
  m.config_path = std::move(config);
  m.seed = seed;
  m.tool_version = kToolVersion;
  return m;
}

void check_format(const std::string& f, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (f == a) return;
  throw UsageError("unsupported --format '" + f + "'");
}

// ---- sample

struct SampleArgs {
  std::string n = "1000";
  std::uint64_t seed = 1;
  std::string sampler = "conditional";
  std::optional<std::string> out;
  std::string format = "csv";
  bool summary = false;
};

int cmd_sample(const SampleArgs& a) {
  check_format(a.format, {"csv", "json"});
  const std::uint64_t N = parse_count(a.n);
  if (N < 2) throw UsageError("--n must be >= 2");
  const SamplerKind kind = parse_sampler(a.sampler);
  const SievePath path = sample_path(kind, N, a.seed);
  const double yN = survival_weight<double>(path, N).value;
  auto manifest = make_manifest("sample", {{"n", std::to_string(N)}, {"sampler", a.sampler},
                                           {"summary", a.summary ? "true" : "false"}, {"format", a.format}},
                                a.seed);
  emit(a.out, manifest, true, [&](std::ostream& os) {
    if (a.format == "json") {
      nlohmann::ordered_json j;
      j["N"] = N;
      j["seed"] = a.seed;
      j["sampler"] = a.sampler;
      j["count"] = path.size();
      j["y_N"] = yN;
      if (!a.summary) j["members"] = path.members();
      os << j.dump(2) << '\n';
    } else if (a.summary) {
      write_csv_row(os, {"N", "count", "y_N"});
      write_csv_row(os, {std::to_string(N), std::to_string(path.size()), fmt(yN)});
    } else {
      path.for_each_member(N, [&](std::uint64_t m) { write_csv_row(os, {std::to_string(m)}); });
    }
  });
  return 0;
}

// ---- exact

struct ExactArgs {
  std::optional<std::string> set;
  std::optional<std::uint64_t> level;
  std::uint64_t cap = kDefaultEnumerationCap;
  std::optional<std::string> out;
  std::string format = "csv";
};

int cmd_exact(const ExactArgs& a) {
  check_format(a.format, {"csv", "json"});
  if (a.set.has_value() == a.level.has_value()) throw UsageError("exact: give exactly one of --set or --level");
  if (a.set) {
    ElementarySet e;
    try {
      e = ElementarySet::parse(*a.set);
    } catch (const std::invalid_argument& err) {
      throw UsageError(err.what());
    }
    const Rational v = mu(e);
    emit(a.out, make_manifest("exact", {{"set", *a.set}}), true, [&](std::ostream& os) {
      if (a.format == "json")
        os << nlohmann::ordered_json{{"set", e.str()}, {"mu", to_string(v)}, {"value", v.get_d()}}.dump(2) << '\n';
      else
        os << to_string(v) << '\n';
    });
    return 0;
  }
  if (*a.level > 16)
    std::cerr << "exact: level " << *a.level << " needs about " << (MeasureTable::estimated_bytes(*a.level) >> 20)
              << " MiB\n";
  const MeasureTable t = enumerate_level(*a.level, a.cap);
  emit(a.out, make_manifest("exact", {{"level", std::to_string(*a.level)}}), true, [&](std::ostream& os) {
    if (a.format == "json") {
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (std::size_t i = 0; i < t.size(); ++i)
        rows.push_back({{"elements", t.elements(i)}, {"mu", to_string(t.measure(i))}});
      os << nlohmann::ordered_json{{"cutoff", t.cutoff()}, {"sets", rows}}.dump(2) << '\n';
    } else {
      t.write_csv(os);
    }
  });
  return 0;
}

// ---- moments

struct MomentsArgs {
  std::string n = "100";
  unsigned k = 4;
  std::string mode = "float";
  unsigned nodes = 48;
  std::optional<std::string> pattern;
  bool weighted = false;
  std::optional<std::string> out;
};

template <class T>
std::string scalar_str(const T& v) {
  if constexpr (std::is_same_v<T, Rational>)
    return to_string(v);
  else
    return fmt(v);
}

template <class T>
void write_series(std::ostream& os, const std::vector<LadderPoint<T>>& series) {
  write_csv_row(os, {"n", "first", "second"});
  for (const auto& p : series) write_csv_row(os, {std::to_string(p.n), scalar_str(p.first), scalar_str(p.second)});
}

int cmd_moments(const MomentsArgs& a) {
  const std::uint64_t N = parse_count(a.n);
  const LadderMode mode = parse_ladder_mode(a.mode);
  LadderOptions opt;
  opt.nodes = a.nodes;
  std::map<std::string, std::string> params{{"n", std::to_string(N)}, {"mode", a.mode}};
  if (a.pattern && a.weighted) throw UsageError("moments: --pattern and --weighted are exclusive");
  if (a.pattern || a.weighted) {
    if (a.pattern) params["pattern"] = *a.pattern;
    if (a.weighted) params["weighted"] = "true";
    emit(a.out, make_manifest("moments", params), true, [&](std::ostream& os) {
      const bool exact = mode == LadderMode::exact;
      if (a.pattern) {
        const Pattern p = Pattern::parse(*a.pattern);
        if (exact) write_series(os, pattern_ladder_series<Rational>(N, p, 0, opt));
        else write_series(os, pattern_ladder_series<double>(N, p, 0, opt));
      } else {
        if (exact) write_series(os, hat_ladder_series<Rational>(N, opt));
        else write_series(os, hat_ladder_series<double>(N, opt));
      }
    });
    return 0;
  }
  params["k"] = std::to_string(a.k);
  const MomentTable t = build_moment_table(N, a.k, mode, opt);
  emit(a.out, make_manifest("moments", params), true, [&](std::ostream& os) { t.write_csv(os); });
  return 0;
}

// ---- predict

struct PredictArgs {
  std::string statistic = "T";
  std::optional<std::string> n;
  std::optional<std::string> checkpoints;
  unsigned k = 1;
  std::optional<std::string> pattern;
  std::optional<std::string> gaps;
  unsigned s = 0, r = 1, t = 3;
  std::optional<std::string> out;
  std::string format = "csv";
};

int cmd_predict(const PredictArgs& a) {
  check_format(a.format, {"csv", "json"});
  std::vector<std::uint64_t> ns;
  if (a.n) ns.push_back(parse_count(*a.n));
  if (a.checkpoints)
    for (auto x : parse_count_list(*a.checkpoints)) ns.push_back(x);
  if (ns.empty()) throw UsageError("predict: give --n or --checkpoints");
  auto need_pattern = [&] {
    if (!a.pattern) throw UsageError("predict: statistic '" + a.statistic + "' needs --pattern");
    return Pattern::parse(*a.pattern);
  };
  std::vector<Prediction> ps;
  for (std::uint64_t n : ns) {
    if (n < 2) throw UsageError("predict: n must be >= 2");
    const std::string& s = a.statistic;
    if (s == "moment") ps.push_back(predict_moment(n, a.k));
    else if (s == "hat") ps.push_back(predict_That(n));
    else if (s == "hat2") ps.push_back(predict_That_second(n));
    else if (s == "T") ps.push_back(predict_T(n, need_pattern()));
    else if (s == "T2") ps.push_back(predict_T_second(n, need_pattern()));
    else if (s == "yT") ps.push_back(predict_yT(n, need_pattern()));
    else if (s == "twin") ps.push_back(predict_twin(n, a.k));
    else if (s == "tuple") {
      if (!a.gaps) throw UsageError("predict: statistic 'tuple' needs --gaps");
      ps.push_back(predict_tuple(n, LooseTuple::parse(*a.gaps)));
    } else if (s == "primes") ps.push_back(predict_primes(n));
    else if (s == "lemma1") ps.push_back(lemma1_expansion(ExpansionSpec{a.s, a.r, a.t}, n));
    else throw UsageError("predict: unknown statistic '" + s + "'");
  }
  std::map<std::string, std::string> params{{"statistic", a.statistic}, {"k", std::to_string(a.k)}};
  if (a.pattern) params["pattern"] = *a.pattern;
  if (a.gaps) params["gaps"] = *a.gaps;
  emit(a.out, make_manifest("predict", params), true, [&](std::ostream& os) {
    if (a.format == "json") {
      nlohmann::ordered_json j = nlohmann::ordered_json::array();
      for (const auto& p : ps)
        j.push_back({{"statistic", p.id}, {"n", p.n}, {"leading", p.leading}, {"correction", p.correction},
                     {"value", p.value()}, {"error_scale", p.error_scale}});
      os << j.dump(2) << '\n';
    } else {
      write_predictions_csv(os, ps);
    }
  });
  return 0;
}

// ---- experiment

struct ExperimentArgs {
  std::string config;
  std::optional<std::string> n, r, seed, sampler, checkpoints, workers;
  std::vector<std::string> statistics;
  std::optional<std::string> out;
  std::string format = "json";
};

int cmd_experiment(const ExperimentArgs& a) {
  check_format(a.format, {"json", "csv", "scan"});
  ExperimentConfig cfg;
  try {
    cfg = ExperimentConfig::from_entries(load_config(a.config));
    // flags win over the file
    if (a.n) cfg.apply("n", *a.n);
    if (a.r) cfg.apply("r", *a.r);
    if (a.seed) cfg.apply("seed", *a.seed);
    if (a.sampler) cfg.apply("sampler", *a.sampler);
    if (a.checkpoints) cfg.apply("checkpoints", *a.checkpoints);
    if (a.workers) cfg.apply("workers", *a.workers);
    if (!a.statistics.empty()) {
      cfg.statistics.clear();
      for (const auto& s : a.statistics) cfg.apply("statistic", s);
    }
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const ExperimentReport rep = run_experiment(cfg);

  std::map<std::string, std::string> params;
  const nlohmann::ordered_json cj = cfg.to_json();
  for (const auto& el : cj.items()) params[el.key()] = el.value().is_string() ? el.value().get<std::string>() : el.value().dump();
  RunManifest manifest = make_manifest("experiment", params, cfg.seed, a.config);
  if (a.out) manifest.outputs.push_back(*a.out);

  emit(a.out, manifest, a.format != "json", [&](std::ostream& os) {
    if (a.format == "json") {
      nlohmann::ordered_json j = report_to_json(rep);
      j["manifest"] = nlohmann::json(manifest);
      os << j.dump(2) << '\n';
    } else if (a.format == "csv") {
      write_report_csv(os, rep);
    } else {
      write_csv_row(os, {"statistic", "x", "ratio_log", "ratio_M"});
      for (const auto& row : convergence_scan(rep))
        write_csv_row(os, {row.statistic, std::to_string(row.x), fmt(row.ratio_log), fmt(row.ratio_M)});
    }
  });
  for (const auto& c : rep.checks)
    std::cerr << (c.pass ? "PASS " : "FAIL ") << c.check.str() << " value=" << fmt(c.value) << '\n';
  return rep.all_checks_pass() ? 0 : 2;
}

// ---- verify

struct VerifyArgs {
  std::string suite;
  bool corrupt = false;
  bool verbose = false;
};

int cmd_verify(const VerifyArgs& a) {
  std::vector<std::string> suites;
  if (a.suite == "all") suites = {"measure", "formulas", "ladder", "identity"};
  else if (a.suite == "measure" || a.suite == "formulas" || a.suite == "ladder" || a.suite == "identity")
    suites = {a.suite};
  else throw UsageError("verify: unknown suite '" + a.suite + "' (measure|formulas|ladder|identity|all)");
  if (a.corrupt && a.suite != "formulas") throw UsageError("verify: --corrupt applies to the formulas suite");
  bool ok = true;
  for (const auto& name : suites) {
    const VerifyReport rep = run_verify_suite(name, a.corrupt);
    std::size_t failed = 0;
    for (const auto& c : rep.checks) {
      if (!c.pass) ++failed;
      if (!c.pass || a.verbose)
        std::cout << (c.pass ? "  ok   " : "  FAIL ") << c.name << (c.detail.empty() ? "" : "  [" + c.detail + "]")
                  << '\n';
    }
    std::cout << (rep.pass() ? "PASS " : "FAIL ") << rep.suite << ": " << rep.checks.size() - failed << "/"
              << rep.checks.size() << " checks\n";
    ok &= rep.pass();
  }
  return ok ? 0 : 2;
}

// ---- equivalence

struct EquivalenceArgs {
  std::string n = "1000";
  std::string r = "10000";
  std::uint64_t seed = 1;
  bool corrupt = false;
  double alpha = 0.01;
  std::optional<std::string> out;
};

int cmd_equivalence(const EquivalenceArgs& a) {
  const auto rep = sampler_equivalence_test(parse_count(a.n), parse_count(a.r), a.seed, a.corrupt, a.alpha);
  auto manifest = make_manifest("equivalence",
                                {{"n", std::to_string(rep.N)}, {"r", std::to_string(rep.R)},
                                 {"corrupt", a.corrupt ? "true" : "false"}, {"alpha", fmt(a.alpha)}},
                                a.seed);
  if (a.out) manifest.outputs.push_back(*a.out);
  emit(a.out, manifest, false, [&](std::ostream& os) {
    nlohmann::ordered_json j = equivalence_to_json(rep);
    j["manifest"] = nlohmann::json(manifest);
    os << j.dump(2) << '\n';
  });
  return rep.pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random sieve sampling, exact measures, moment ladders and asymptotic predictions."};
  app.require_subcommand(1);

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "Sample one sieve path");
  sample->add_option("--n", sa.n, "Window maximum N");
  sample->add_option("--seed", sa.seed, "Seed");
  sample->add_option("--sampler", sa.sampler, "conditional|rounds");
  sample->add_option("--out", sa.out, "Output file (default stdout)");
  sample->add_option("--format", sa.format, "csv|json");
  sample->add_flag("--summary", sa.summary, "Only count and y_N");

  ExactArgs ea;
  auto* exact = app.add_subcommand("exact", "Exact measure of an elementary set or a whole level");
  exact->add_option("--set", ea.set, "Elementary set, e.g. \"2,3;5\" or \".;2\"");
  exact->add_option("--level", ea.level, "Enumerate all sets with this cutoff");
  exact->add_option("--cap", ea.cap, "Largest level allowed");
  exact->add_option("--out", ea.out, "Output file");
  exact->add_option("--format", ea.format, "csv|json");

  MomentsArgs ma;
  auto* moments = app.add_subcommand("moments", "Moment table, or a pattern/weighted ladder series");
  moments->add_option("--n", ma.n, "Largest n");
  moments->add_option("--k", ma.k, "Highest order");
  moments->add_option("--mode", ma.mode, "exact|float");
  moments->add_option("--nodes", ma.nodes, "Grid size for float mode");
  moments->add_option("--pattern", ma.pattern, "Dump E(T), E(T^2) for this pattern");
  moments->add_flag("--weighted", ma.weighted, "Dump moments of the weighted twin sum");
  moments->add_option("--out", ma.out, "Output file");

  PredictArgs pa;
  auto* predict = app.add_subcommand("predict", "Asymptotic predictions");
  predict->add_option("--statistic", pa.statistic, "moment|hat|hat2|T|T2|yT|twin|tuple|primes|lemma1");
  predict->add_option("--n", pa.n, "Single n");
  predict->add_option("--checkpoints", pa.checkpoints, "List of n");
  predict->add_option("--k", pa.k, "Moment order or twin gap");
  predict->add_option("--pattern", pa.pattern, "Exact pattern, e.g. 0,2");
  predict->add_option("--gaps", pa.gaps, "Loose tuple gaps, e.g. 3,6");
  predict->add_option("--s", pa.s, "lemma1: power of k");
  predict->add_option("--r", pa.r, "lemma1: power of 1/M");
  predict->add_option("--t", pa.t, "lemma1: expansion order");
  predict->add_option("--out", pa.out, "Output file");
  predict->add_option("--format", pa.format, "csv|json");

  ExperimentArgs xa;
  auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo experiment from a config file");
  experiment->add_option("--config", xa.config, "key = value file")->required();
  experiment->add_option("--n", xa.n, "Override N");
  experiment->add_option("--r", xa.r, "Override path count");
  experiment->add_option("--seed", xa.seed, "Override master seed");
  experiment->add_option("--sampler", xa.sampler, "Override sampler");
  experiment->add_option("--checkpoints", xa.checkpoints, "Override checkpoints");
  experiment->add_option("--workers", xa.workers, "Worker threads");
  experiment->add_option("--statistic", xa.statistics, "Replace statistics (repeatable)");
  experiment->add_option("--out", xa.out, "Output file");
  experiment->add_option("--format", xa.format, "json|csv|scan");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Oracle suites: measure, formulas, ladder, identity, all");
  verify->add_option("suite", va.suite, "Suite name")->required();
  verify->add_flag("--corrupt", va.corrupt, "Negative control: mis-transcribed formula");
  verify->add_flag("--verbose", va.verbose, "List passing checks too");

  EquivalenceArgs qa;
  auto* equivalence = app.add_subcommand("equivalence", "Two-sample test between the two samplers");
  equivalence->add_option("--n", qa.n, "Window maximum");
  equivalence->add_option("--r", qa.r, "Paths per sampler");
  equivalence->add_option("--seed", qa.seed, "Master seed");
  equivalence->add_option("--alpha", qa.alpha, "Significance level");
  equivalence->add_flag("--corrupt", qa.corrupt, "Negative control: deletion probability 1/(P+1)");
  equivalence->add_option("--out", qa.out, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*sample) return cmd_sample(sa);
    if (*exact) return cmd_exact(ea);
    if (*moments) return cmd_moments(ma);
    if (*predict) return cmd_predict(pa);
    if (*experiment) return cmd_experiment(xa);
    if (*verify) return cmd_verify(va);
    if (*equivalence) return cmd_equivalence(qa);
  } catch (const std::exception& e) {
    std::cerr << "hawkins: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
