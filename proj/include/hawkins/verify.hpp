#pragma once

// One-shot oracle suites used by `hawkins verify`.

#include "hawkins/counters.hpp"
#include "hawkins/exact_measure.hpp"
#include "hawkins/moment_ladder.hpp"
#include "hawkins/rng.hpp"
#include "hawkins/sieve_path.hpp"

#include <functional>
#include <string>
#include <vector>

namespace hawkins {

struct VerifyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::string suite;
  std::vector<VerifyCheck> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
  void add(std::string name, bool ok, std::string detail = "") {
    checks.push_back({std::move(name), ok, std::move(detail)});
  }
};

// All exact patterns with span <= max_span.
inline std::vector<Pattern> all_patterns(std::uint32_t max_span) {
  std::vector<Pattern> out;
  for (std::uint32_t k = 1; k <= max_span; ++k)
    for (std::uint32_t mask = 0; mask < (1u << (k - 1)); ++mask) {
      std::vector<std::uint32_t> offs{0};
      for (std::uint32_t i = 1; i < k; ++i)
        if (mask >> (i - 1) & 1u) offs.push_back(i);
      offs.push_back(k);
      out.emplace_back(std::move(offs));
    }
  return out;
}

// E(f(T)) over a full enumeration, T = number of starts m <= N with the
// constraint satisfied.  Needs cutoff N + span + 1.
inline Rational enumerate_count_moment(std::uint64_t N, const Constraint& c, unsigned power) {
  const MeasureTable t = enumerate_level(N + c.span + 1);
  std::size_t req = 0, forb = 0;
  for (auto r : c.required) req |= std::size_t{1} << r;
  for (auto f : c.forbidden) forb |= std::size_t{1} << f;
  return t.expectation([&](std::size_t mask, const Rational&) {
    // bit j - 2 of mask is integer j; start m uses bits m - 2 + offset
    unsigned long count = 0;
    for (std::uint64_t m = 2; m <= N; ++m) {
      const std::size_t window = mask >> (m - 2);
      if ((window & req) == req && (window & forb) == 0) ++count;
    }
    return pow(Rational(count), power);
  });
}

// E(weighted twin sum up to N ^ power) over a full enumeration.
inline Rational enumerate_hat_moment(std::uint64_t N, unsigned power) {
  const MeasureTable t = enumerate_level(N + 3);
  return t.expectation([&](std::size_t mask, const Rational&) {
    Rational y(1), sum(0);
    for (std::uint64_t m = 2; m <= N; ++m) {
      if (!(mask >> (m - 2) & 1u)) continue;
      if (mask >> m & 1u) sum += Rational(1) / (y - hat_coefficient<Rational>(m) * y * y);
      y *= survival_factor(m);
    }
    return pow(sum, power);
  });
}

inline VerifyReport verify_measure(std::uint64_t max_level = 14) {
  VerifyReport rep{"measure", {}};
  for (std::uint64_t n = 2; n <= max_level; ++n) {
    const MeasureTable t = enumerate_level(n);
    const Rational total = t.total();
    rep.add("normalization n=" + std::to_string(n), total == 1, to_string(total));
    bool positive = true, lacking_two_zero = true;
    for (std::size_t i = 0; i < t.size(); ++i) {
      positive &= t.measure(i) >= 0;
      if (n > 2 && !(i & 1u)) lacking_two_zero &= t.measure(i) == 0;
    }
    rep.add("positivity n=" + std::to_string(n), positive);
    rep.add("sets without 2 are null n=" + std::to_string(n), lacking_two_zero);
    if (n < max_level) {
      const MeasureTable up = enumerate_level(n + 1);
      bool consistent = true;
      for (std::size_t i = 0; i < t.size(); ++i)
        consistent &= up.measure(i) + up.measure(i + t.size()) == t.measure(i);
      rep.add("consistency " + std::to_string(n) + "->" + std::to_string(n + 1), consistent);
    }
    if (n <= 10) {
      bool agree = true;
      for (std::size_t i = 0; i < t.size(); ++i) agree &= mu(ElementarySet(t.elements(i), n)) == t.measure(i);
      rep.add("recursion matches table n=" + std::to_string(n), agree);
    }
  }
  rep.add("mu({.;2}) = 1", mu(ElementarySet({}, 2)) == 1);
  rep.add("mu({2;4}) = 1/2", mu(ElementarySet({2}, 4)) == Rational(1, 2));
  return rep;
}

// With corrupt = true the product formula is deliberately mis-transcribed
// (one power of y dropped); the suite must then fail.
inline VerifyReport verify_formulas(bool corrupt = false, std::uint32_t max_span = 5, std::uint64_t max_m = 8) {
  VerifyReport rep{corrupt ? "formulas(corrupt)" : "formulas", {}};
  const Rational ys[] = {Rational(1), Rational(1, 2), Rational(5, 12)};
  for (const Pattern& p : all_patterns(max_span)) {
    bool ok = true;
    std::string first_bad;
    for (std::uint64_t m = 1; m <= max_m; ++m)
      for (const Rational& y : ys) {
        Rational formula = pattern_conditional_prob<Rational>(y, m, p);
        if (corrupt) formula /= y;
        const Rational brute = pattern_prob_bruteforce<Rational>(y, m, p);
        if (formula != brute) {
          if (ok) first_bad = "m=" + std::to_string(m) + " y=" + to_string(y);
          ok = false;
        }
      }
    rep.add("product formula " + p.str(), ok, first_bad);
  }
  for (std::uint64_t m = 2; m <= max_m; ++m) {
    const MeasureTable t = enumerate_level(m);
    Rational integrated = t.expectation([&](std::size_t, const Rational& y) {
      Rational v = twin_conditional_prob<Rational>(y, m);
      if (corrupt) v /= y;
      return v;
    });
    const Rational direct = membership_prob(m + 3, {m, m + 2}, {});
    rep.add("twin formula m=" + std::to_string(m), integrated == direct,
            to_string(integrated) + " vs " + to_string(direct));
  }
  return rep;
}

inline VerifyReport verify_ladder() {
  VerifyReport rep{"ladder", {}};
  const MomentTable table = build_moment_table(16, 8, LadderMode::exact);
  for (std::uint64_t n = 2; n <= 12; ++n)
    for (unsigned k = 0; k <= 3; ++k)
      rep.add("E(y_" + std::to_string(n) + "^" + std::to_string(k) + ")", table.exact_value(n, k) == exact_moment(n, k));
  for (const char* text : {"0,1", "0,2", "0,1,2"}) {
    const Pattern p = Pattern::parse(text);
    const auto series = pattern_ladder_series<Rational>(10, p);
    for (const auto& pt : series) {
      const Constraint c = Constraint::of(p);
      const Rational e1 = enumerate_count_moment(pt.n, c, 1), e2 = enumerate_count_moment(pt.n, c, 2);
      const std::string tag = p.str() + " N=" + std::to_string(pt.n);
      rep.add("E(T) " + tag, expected_T<Rational>(pt.n, p, table) == e1 && pt.first == e1);
      rep.add("E(T^2) " + tag, pt.second == e2, to_string(pt.second) + " vs " + to_string(e2));
    }
  }
  for (const auto& pt : hat_ladder_series<Rational>(8)) {
    const std::string tag = "N=" + std::to_string(pt.n);
    const Rational e1 = enumerate_hat_moment(pt.n, 1), e2 = enumerate_hat_moment(pt.n, 2);
    rep.add("E(hat) " + tag, pt.first == e1 && expected_That<Rational>(pt.n, table) == e1);
    rep.add("E(hat^2) " + tag, pt.second == e2);
  }
  return rep;
}

inline VerifyReport verify_identity(std::uint64_t paths = 20, std::uint64_t N = 10000, std::uint64_t seed = 7) {
  VerifyReport rep{"identity", {}};
  for (std::uint64_t i = 0; i < paths; ++i) {
    const SievePath path = sample_path_conditional(N, path_seed(seed, i));
    for (std::uint32_t k = 1; k <= 6; ++k) {
      const auto r = decompose_twin_identity(path, k, N - k);
      rep.add("path " + std::to_string(i) + " k=" + std::to_string(k), r.holds(),
              std::to_string(r.lhs) + " vs " + std::to_string(r.rhs));
    }
  }
  return rep;
}

inline VerifyReport run_verify_suite(const std::string& name, bool corrupt = false) {
  if (name == "measure") return verify_measure();
  if (name == "formulas") return verify_formulas(corrupt);
  if (name == "ladder") return verify_ladder();
  if (name == "identity") return verify_identity();
  throw std::invalid_argument("unknown suite '" + name + "' (expected measure|formulas|ladder|identity)");
}

}  // namespace hawkins
