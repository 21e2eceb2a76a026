#pragma once

// Multi-path experiments: sample R windows, evaluate counters at checkpoints,
// reduce in path order and compare with exact expectations and predictions.

#include "hawkins/asymptotics.hpp"
#include "hawkins/config.hpp"
#include "hawkins/counters.hpp"
#include "hawkins/csv.hpp"
#include "hawkins/exact_measure.hpp"
#include "hawkins/moment_ladder.hpp"
#include "hawkins/pattern.hpp"
#include "hawkins/rng.hpp"
#include "hawkins/sieve_path.hpp"
#include "hawkins/stats.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace hawkins {

inline constexpr const char* kToolVersion = "1.0.0";

enum class StatKind { exact_pattern, twin, tuple, hat, primes };

class StatisticSpec {
 public:
  // "T:0,2", "twin:2", "tuple:3,6", "hat", "primes"
  static StatisticSpec parse(const std::string& text) {
    const std::string s = trim(text);
    StatisticSpec st;
    const auto colon = s.find(':');
    const std::string head = s.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : trim(s.substr(colon + 1));
    if (head == "hat" && arg.empty()) {
      st.kind_ = StatKind::hat;
    } else if (head == "primes" && arg.empty()) {
      st.kind_ = StatKind::primes;
    } else if ((head == "T" || head == "pattern") && !arg.empty()) {
      st.kind_ = StatKind::exact_pattern;
      st.pattern_ = Pattern::parse(arg);
    } else if (head == "twin" && !arg.empty()) {
      st.kind_ = StatKind::twin;
      st.k_ = static_cast<std::uint32_t>(parse_count(arg));
      if (st.k_ == 0) throw std::invalid_argument("twin gap must be positive");
    } else if (head == "tuple" && !arg.empty()) {
      st.kind_ = StatKind::tuple;
      st.tuple_ = LooseTuple::parse(arg);
    } else {
      throw std::invalid_argument("unknown statistic '" + s + "' (expected T:<offsets>, twin:<k>, tuple:<gaps>, hat, primes)");
    }
    return st;
  }

  StatKind kind() const { return kind_; }

  std::string id() const {
    switch (kind_) {
      case StatKind::exact_pattern: return "T:" + detail::join(pattern_->offsets());
      case StatKind::twin: return "twin:" + std::to_string(k_);
      case StatKind::tuple: return "tuple:" + detail::join(tuple_->gaps());
      case StatKind::hat: return "hat";
      case StatKind::primes: return "primes";
    }
    return "";
  }

  std::uint32_t span() const {
    switch (kind_) {
      case StatKind::exact_pattern: return pattern_->span();
      case StatKind::twin: return k_;
      case StatKind::tuple: return tuple_->span();
      case StatKind::hat: return 2;
      case StatKind::primes: return 0;
    }
    return 0;
  }

  // power of M (or log) in the leading density x / M^e
  unsigned exponent() const {
    switch (kind_) {
      case StatKind::exact_pattern: return pattern_->interior() + 2;
      case StatKind::twin: return 2;
      case StatKind::tuple: return tuple_->size();
      case StatKind::hat: return 1;
      case StatKind::primes: return 1;
    }
    return 1;
  }

  std::optional<Constraint> constraint() const {
    switch (kind_) {
      case StatKind::exact_pattern: return Constraint::of(*pattern_);
      case StatKind::twin: return Constraint::twin(k_);
      case StatKind::tuple: return Constraint::of(*tuple_);
      default: return std::nullopt;
    }
  }

  Prediction predict(std::uint64_t x) const {
    switch (kind_) {
      case StatKind::exact_pattern: return predict_T(x, *pattern_);
      case StatKind::twin: return predict_twin(x, k_);
      case StatKind::tuple: return predict_tuple(x, *tuple_);
      case StatKind::hat: return predict_That(x);
      case StatKind::primes: return predict_primes(x);
    }
    return {};
  }

  // Values at each checkpoint for one path.
  void evaluate(const SievePath& path, std::span<const std::uint64_t> cps, double* out) const {
    switch (kind_) {
      case StatKind::hat: {
        const auto v = weighted_twin_sum<double>(path, cps);
        std::copy(v.begin(), v.end(), out);
        return;
      }
      case StatKind::primes: {
        const auto v = prime_count(path, cps);
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<double>(v[i]);
        return;
      }
      default: {
        const auto v = count_constraint(path, *constraint(), cps);
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<double>(v[i]);
      }
    }
  }

 private:
  StatKind kind_ = StatKind::primes;
  std::optional<Pattern> pattern_;
  std::optional<LooseTuple> tuple_;
  std::uint32_t k_ = 0;
};

struct Check {
  std::string statistic;
  std::uint64_t checkpoint = 0;
  std::string metric;
  double lo = 0.0;
  double hi = 0.0;

  // "<statistic> <checkpoint> <metric> <lo> <hi>"
  static Check parse(const std::string& text) {
    std::stringstream ss(text);
    Check c;
    std::string cp, lo, hi;
    if (!(ss >> c.statistic >> cp >> c.metric >> lo >> hi))
      throw std::invalid_argument("check: expected '<statistic> <checkpoint> <metric> <lo> <hi>', got '" + text + "'");
    std::string extra;
    if (ss >> extra) throw std::invalid_argument("check: trailing text in '" + text + "'");
    c.checkpoint = parse_count(cp);
    c.lo = parse_real(lo);
    c.hi = parse_real(hi);
    if (c.lo > c.hi) throw std::invalid_argument("check: empty band in '" + text + "'");
    static const char* metrics[] = {"mean", "z_exact", "z_pred", "z_pred_raw", "rel_pred", "ratio_M", "ratio_log"};
    if (std::find_if(std::begin(metrics), std::end(metrics), [&](const char* m) { return c.metric == m; }) ==
        std::end(metrics))
      throw std::invalid_argument("check: unknown metric '" + c.metric + "'");
    StatisticSpec::parse(c.statistic);
    return c;
  }

  std::string str() const {
    std::ostringstream os;
    os << statistic << ' ' << checkpoint << ' ' << metric << ' ' << lo << ' ' << hi;
    return os.str();
  }
};

struct ExperimentConfig {
  std::uint64_t N = 10000;
  std::uint64_t R = 100;
  std::uint64_t seed = 1;
  SamplerKind sampler = SamplerKind::conditional;
  std::vector<StatisticSpec> statistics;
  std::vector<std::uint64_t> checkpoints;
  unsigned workers = 1;
  std::uint64_t exact_reference_limit = 1000000;
  unsigned reference_nodes = 48;
  bool include_timings = false;
  std::vector<Check> checks;

  std::uint32_t max_span() const {
    std::uint32_t s = 0;
    for (const auto& st : statistics) s = std::max(s, st.span());
    return s;
  }

  // Paths are sampled on [2, N + max span] so every start x <= N is settled.
  std::uint64_t window() const { return N + max_span(); }

  void validate() const {
    if (N < 2) throw std::invalid_argument("experiment: N must be >= 2");
    if (R < 1) throw std::invalid_argument("experiment: R must be >= 1");
    if (workers < 1) throw std::invalid_argument("experiment: workers must be >= 1");
    if (statistics.empty()) throw std::invalid_argument("experiment: no statistics requested");
    if (checkpoints.empty()) throw std::invalid_argument("experiment: no checkpoints");
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
      if (checkpoints[i] < 2) throw std::invalid_argument("experiment: checkpoints must be >= 2");
      if (i && checkpoints[i] <= checkpoints[i - 1])
        throw std::invalid_argument("experiment: checkpoints must be strictly increasing");
      if (checkpoints[i] > N)
        throw std::invalid_argument("experiment: checkpoint " + std::to_string(checkpoints[i]) + " exceeds N = " +
                                    std::to_string(N));
    }
    for (const auto& c : checks) {
      if (std::none_of(statistics.begin(), statistics.end(), [&](const auto& s) { return s.id() == StatisticSpec::parse(c.statistic).id(); }))
        throw std::invalid_argument("check refers to statistic not in the experiment: " + c.statistic);
      if (std::find(checkpoints.begin(), checkpoints.end(), c.checkpoint) == checkpoints.end())
        throw std::invalid_argument("check refers to a checkpoint not in the experiment: " + std::to_string(c.checkpoint));
    }
  }

  void apply(const std::string& key, const std::string& value) {
    if (key == "n" || key == "N") N = parse_count(value);
    else if (key == "r" || key == "R") R = parse_count(value);
    else if (key == "seed") seed = parse_count(value);
    else if (key == "sampler") sampler = parse_sampler(trim(value));
    else if (key == "statistic") statistics.push_back(StatisticSpec::parse(value));
    else if (key == "statistics") {
      statistics.clear();
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ';'))
        if (!trim(item).empty()) statistics.push_back(StatisticSpec::parse(item));
    } else if (key == "checkpoints") checkpoints = parse_count_list(value);
    else if (key == "workers") workers = static_cast<unsigned>(parse_count(value));
    else if (key == "exact_reference_limit") exact_reference_limit = parse_count(value);
    else if (key == "reference_nodes") reference_nodes = static_cast<unsigned>(parse_count(value));
    else if (key == "timings") include_timings = parse_bool(value);
    else if (key == "check") checks.push_back(Check::parse(value));
    else throw std::invalid_argument("unknown config key '" + key + "'");
  }

  static ExperimentConfig from_entries(const std::vector<ConfigEntry>& entries) {
    ExperimentConfig cfg;
    for (const auto& e : entries) {
      try {
        cfg.apply(e.key, e.value);
      } catch (const std::invalid_argument& err) {
        throw std::invalid_argument("line " + std::to_string(e.line) + ": " + err.what());
      }
    }
    return cfg;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["N"] = N;
    j["R"] = R;
    j["seed"] = seed;
    j["sampler"] = to_string(sampler);
    j["statistics"] = nlohmann::ordered_json::array();
    for (const auto& s : statistics) j["statistics"].push_back(s.id());
    j["checkpoints"] = checkpoints;
    j["window"] = window();
    j["exact_reference_limit"] = exact_reference_limit;
    j["reference_nodes"] = reference_nodes;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) j["checks"].push_back(c.str());
    // worker count is deliberately not echoed: reports must not depend on it
    return j;
  }
};

struct StatisticResult {
  std::string statistic;
  std::uint64_t checkpoint = 0;
  SampleSummary summary;
  std::optional<double> exact;
  Prediction prediction;
  double z_exact = std::numeric_limits<double>::quiet_NaN();
  double z_pred = std::numeric_limits<double>::quiet_NaN();      // error scale in quadrature
  double z_pred_raw = std::numeric_limits<double>::quiet_NaN();  // stderr only
  double rel_pred = 0.0;
  double ratio_M = 0.0;
  double ratio_log = 0.0;

  double stderr_mean() const { return summary.stderr_mean(); }
  std::string ref_kind() const { return exact ? "exact" : "prediction"; }
  double reference() const { return exact ? *exact : prediction.value(); }
  double z() const { return exact ? z_exact : z_pred; }

  double metric(const std::string& m) const {
    if (m == "mean") return summary.mean;
    if (m == "z_exact") return z_exact;
    if (m == "z_pred") return z_pred;
    if (m == "z_pred_raw") return z_pred_raw;
    if (m == "rel_pred") return rel_pred;
    if (m == "ratio_M") return ratio_M;
    if (m == "ratio_log") return ratio_log;
    throw std::invalid_argument("unknown metric '" + m + "'");
  }
};

struct CheckResult {
  Check check;
  double value = 0.0;
  bool pass = false;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<StatisticResult> results;
  std::vector<CheckResult> checks;
  double seconds_sampling = 0.0;
  double seconds_reference = 0.0;

  bool all_checks_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
  }

  const StatisticResult& find(const std::string& statistic, std::uint64_t checkpoint) const {
    const std::string id = StatisticSpec::parse(statistic).id();
    for (const auto& r : results)
      if (r.statistic == id && r.checkpoint == checkpoint) return r;
    throw std::invalid_argument("no result for " + statistic + " at " + std::to_string(checkpoint));
  }
};

namespace detail {

inline nlohmann::ordered_json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

inline std::string csv_number(double v) {
  if (!std::isfinite(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

// E(statistic at each checkpoint) from the grid law of y_s; nullopt where a
// statistic is too expensive for the configured limit.
inline std::vector<std::vector<std::optional<double>>> exact_references(const ExperimentConfig& cfg) {
  const std::size_t S = cfg.statistics.size(), C = cfg.checkpoints.size();
  std::vector<std::vector<std::optional<double>>> out(S, std::vector<std::optional<double>>(C));
  const std::uint64_t last = cfg.checkpoints.back();
  if (last > cfg.exact_reference_limit) return out;

  std::vector<std::optional<Constraint>> cons;
  unsigned order = 1;
  for (const auto& st : cfg.statistics) {
    cons.push_back(st.constraint());
    order = std::max(order, st.span() + 1);
  }
  std::vector<NeumaierSum> acc(S);
  std::vector<double> mom(order + 1);
  MomentStream stream(cfg.reference_nodes);
  std::size_t next = 0;
  for (std::uint64_t s = 2; s <= last; ++s) {
    if (s == 2) {
      std::fill(mom.begin(), mom.end(), 1.0);
    } else {
      if (s > 3) stream.advance();
      for (unsigned k = 0; k <= order; ++k) mom[k] = stream.moment(k);
    }
    for (std::size_t i = 0; i < S; ++i) {
      const auto kind = cfg.statistics[i].kind();
      if (kind == StatKind::hat) {
        acc[i].add(one_minus_inverse<double>(s) * mom[1]);
      } else if (kind == StatKind::primes) {
        acc[i].add(mom[1]);
      } else {
        const Polynomial<double> p = event_polynomial<double>(s, *cons[i]);
        double e = 0.0;
        for (std::size_t d = 0; d <= p.degree(); ++d) e += p[d] * mom[d];
        acc[i].add(e);
      }
    }
    while (next < C && cfg.checkpoints[next] == s) {
      for (std::size_t i = 0; i < S; ++i) out[i][next] = acc[i].value();
      ++next;
    }
  }
  return out;
}

class ExperimentFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Per-path values laid out as [path][statistic][checkpoint].  Paths are split
// into contiguous blocks, one per worker; any worker error fails the whole run.
inline std::vector<double> simulate_paths(const ExperimentConfig& cfg) {
  const std::size_t S = cfg.statistics.size(), C = cfg.checkpoints.size();
  const std::size_t stride = S * C;
  std::vector<double> values(cfg.R * stride);
  const std::uint64_t window = cfg.window();
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(cfg.workers, cfg.R));
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      const std::uint64_t begin = cfg.R * w / workers, end = cfg.R * (w + 1) / workers;
      for (std::uint64_t i = begin; i < end; ++i) {
        const SievePath path = sample_path(cfg.sampler, window, path_seed(cfg.seed, i));
        for (std::size_t s = 0; s < S; ++s)
          cfg.statistics[s].evaluate(path, cfg.checkpoints, &values[i * stride + s * C]);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (!e) continue;
    try {
      std::rethrow_exception(e);
    } catch (const std::exception& ex) {
      throw ExperimentFailed(std::string("experiment aborted, no partial results: ") + ex.what());
    }
  }
  return values;
}

inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentReport rep;
  rep.config = cfg;
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> values = simulate_paths(cfg);
  const auto t1 = std::chrono::steady_clock::now();
  const auto exact = exact_references(cfg);
  const auto t2 = std::chrono::steady_clock::now();
  rep.seconds_sampling = std::chrono::duration<double>(t1 - t0).count();
  rep.seconds_reference = std::chrono::duration<double>(t2 - t1).count();

  const std::size_t S = cfg.statistics.size(), C = cfg.checkpoints.size();
  const std::vector<double> Ms = harmonic_M(cfg.checkpoints);
  std::vector<double> column(cfg.R);
  for (std::size_t s = 0; s < S; ++s) {
    for (std::size_t c = 0; c < C; ++c) {
      for (std::uint64_t i = 0; i < cfg.R; ++i) column[i] = values[i * S * C + s * C + c];
      StatisticResult r;
      r.statistic = cfg.statistics[s].id();
      r.checkpoint = cfg.checkpoints[c];
      r.summary = summarize(column);
      r.exact = exact[s][c];
      r.prediction = cfg.statistics[s].predict(r.checkpoint);
      const double se = r.stderr_mean(), mean = r.summary.mean;
      if (r.exact && se > 0) r.z_exact = (mean - *r.exact) / se;
      const double pv = r.prediction.value();
      r.z_pred = (mean - pv) / std::sqrt((std::isfinite(se) ? se * se : 0.0) +
                                         r.prediction.error_scale * r.prediction.error_scale);
      if (se > 0) r.z_pred_raw = (mean - pv) / se;
      r.rel_pred = mean / pv - 1.0;
      const double x = static_cast<double>(r.checkpoint);
      const unsigned e = cfg.statistics[s].exponent();
      r.ratio_M = mean * std::pow(Ms[c], e) / x;
      r.ratio_log = mean * std::pow(std::log(x), e) / x;
      rep.results.push_back(std::move(r));
    }
  }
  for (const auto& chk : cfg.checks) {
    CheckResult cr;
    cr.check = chk;
    cr.value = rep.find(chk.statistic, chk.checkpoint).metric(chk.metric);
    cr.pass = std::isfinite(cr.value) && cr.value >= chk.lo && cr.value <= chk.hi;
    rep.checks.push_back(cr);
  }
  return rep;
}

inline nlohmann::ordered_json report_to_json(const ExperimentReport& rep) {
  using detail::number_or_null;
  nlohmann::ordered_json j;
  j["tool_version"] = kToolVersion;
  j["rng"] = std::string(kRngAlgorithm);
  j["config"] = rep.config.to_json();
  j["results"] = nlohmann::ordered_json::array();
  for (const auto& r : rep.results) {
    nlohmann::ordered_json o;
    o["statistic"] = r.statistic;
    o["checkpoint"] = r.checkpoint;
    o["paths"] = r.summary.count;
    o["mean"] = number_or_null(r.summary.mean);
    o["variance"] = number_or_null(r.summary.variance);
    o["stderr"] = number_or_null(r.stderr_mean());
    o["exact"] = r.exact ? number_or_null(*r.exact) : nlohmann::ordered_json(nullptr);
    o["prediction"] = {{"leading", r.prediction.leading},
                       {"correction", r.prediction.correction},
                       {"value", r.prediction.value()},
                       {"error_scale", r.prediction.error_scale}};
    o["reference"] = number_or_null(r.reference());
    o["ref_kind"] = r.ref_kind();
    o["z"] = number_or_null(r.z());
    o["z_exact"] = number_or_null(r.z_exact);
    o["z_pred"] = number_or_null(r.z_pred);
    o["z_pred_raw"] = number_or_null(r.z_pred_raw);
    o["rel_pred"] = number_or_null(r.rel_pred);
    o["ratio_M"] = number_or_null(r.ratio_M);
    o["ratio_log"] = number_or_null(r.ratio_log);
    j["results"].push_back(std::move(o));
  }
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : rep.checks)
    j["checks"].push_back({{"check", c.check.str()}, {"value", number_or_null(c.value)}, {"pass", c.pass}});
  j["all_checks_pass"] = rep.all_checks_pass();
  if (rep.config.include_timings)
    j["timings"] = {{"sampling_seconds", rep.seconds_sampling}, {"reference_seconds", rep.seconds_reference}};
  return j;
}

inline void write_report_csv(std::ostream& os, const ExperimentReport& rep) {
  using detail::csv_number;
  write_csv_row(os, {"statistic", "checkpoint", "mean", "var", "stderr", "reference", "ref_kind", "z"});
  for (const auto& r : rep.results)
    write_csv_row(os, {r.statistic, std::to_string(r.checkpoint), csv_number(r.summary.mean),
                       csv_number(r.summary.variance), csv_number(r.stderr_mean()), csv_number(r.reference()),
                       r.ref_kind(), csv_number(r.z())});
}

struct ScanRow {
  std::string statistic;
  std::uint64_t x = 0;
  double ratio_log = 0.0;  // mean * (log x)^l / x
  double ratio_M = 0.0;    // mean * M_x^l / x
};

// Normalized densities along the checkpoints with a common exponent l
// (l = 0 uses each statistic's own exponent).
inline std::vector<ScanRow> convergence_scan(const ExperimentReport& rep, unsigned l = 0) {
  std::vector<ScanRow> out;
  const std::vector<double> Ms = harmonic_M(rep.config.checkpoints);
  for (const auto& r : rep.results) {
    const auto it = std::find(rep.config.checkpoints.begin(), rep.config.checkpoints.end(), r.checkpoint);
    const double M = Ms[static_cast<std::size_t>(it - rep.config.checkpoints.begin())];
    const unsigned e = l ? l : StatisticSpec::parse(r.statistic).exponent();
    const double x = static_cast<double>(r.checkpoint);
    out.push_back({r.statistic, r.checkpoint, r.summary.mean * std::pow(std::log(x), e) / x,
                   r.summary.mean * std::pow(M, e) / x});
  }
  return out;
}

inline std::vector<ScanRow> convergence_scan(const ExperimentConfig& cfg, unsigned l = 0) {
  return convergence_scan(run_experiment(cfg), l);
}

struct EquivalenceRow {
  std::string statistic;
  SampleSummary conditional;
  SampleSummary rounds;
  TwoSampleResult test;
};

struct EquivalenceReport {
  std::uint64_t N = 0;
  std::uint64_t R = 0;
  double alpha = 0.01;
  bool corrupted = false;
  std::vector<EquivalenceRow> rows;

  bool pass() const {
    return std::all_of(rows.begin(), rows.end(),
                       [&](const EquivalenceRow& r) { return r.test.p_mean > alpha && r.test.p_var > alpha; });
  }
};

inline double corrupted_deletion(std::uint64_t p) { return 1.0 / static_cast<double>(p + 1); }

// Compares member counts and adjacent-pair counts between the two samplers.
// `corrupt` swaps in deletion probability 1/(P + 1) as a negative control.
inline EquivalenceReport sampler_equivalence_test(std::uint64_t N, std::uint64_t R, std::uint64_t master_seed,
                                                  bool corrupt = false, double alpha = 0.01) {
  if (N < 2) throw std::invalid_argument("sampler_equivalence_test: N must be >= 2");
  if (R < 2) throw std::invalid_argument("sampler_equivalence_test: R must be >= 2");
  EquivalenceReport rep;
  rep.N = N;
  rep.R = R;
  rep.alpha = alpha;
  rep.corrupted = corrupt;
  std::vector<double> pc_a(R), pc_b(R), tw_a(R), tw_b(R);
  const std::uint64_t seed_a = stream_seed(master_seed, 0), seed_b = stream_seed(master_seed, 1);
  for (std::uint64_t i = 0; i < R; ++i) {
    const SievePath a = sample_path_conditional(N, path_seed(seed_a, i));
    const SievePath b = sample_path_rounds(N, path_seed(seed_b, i), WeightsMode::recompute,
                                           corrupt ? corrupted_deletion : hawkins_deletion);
    pc_a[i] = static_cast<double>(prime_count(a, N));
    pc_b[i] = static_cast<double>(prime_count(b, N));
    tw_a[i] = static_cast<double>(count_twin(a, 1, N - 1));
    tw_b[i] = static_cast<double>(count_twin(b, 1, N - 1));
  }
  auto row = [](std::string name, const std::vector<double>& a, const std::vector<double>& b) {
    EquivalenceRow r;
    r.statistic = std::move(name);
    r.conditional = summarize(a);
    r.rounds = summarize(b);
    r.test = two_sample_test(r.conditional, r.rounds);
    return r;
  };
  rep.rows.push_back(row("prime_count", pc_a, pc_b));
  rep.rows.push_back(row("twin:1", tw_a, tw_b));
  return rep;
}

inline nlohmann::ordered_json equivalence_to_json(const EquivalenceReport& rep) {
  using detail::number_or_null;
  nlohmann::ordered_json j;
  j["N"] = rep.N;
  j["R"] = rep.R;
  j["alpha"] = rep.alpha;
  j["corrupted"] = rep.corrupted;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rep.rows)
    j["rows"].push_back({{"statistic", r.statistic},
                         {"mean_conditional", r.conditional.mean},
                         {"mean_rounds", r.rounds.mean},
                         {"var_conditional", number_or_null(r.conditional.variance)},
                         {"var_rounds", number_or_null(r.rounds.variance)},
                         {"z_mean", number_or_null(r.test.z_mean)},
                         {"p_mean", r.test.p_mean},
                         {"z_var", number_or_null(r.test.z_var)},
                         {"p_var", r.test.p_var}});
  j["pass"] = rep.pass();
  return j;
}

}  // namespace hawkins
