#pragma once

// M_n, the summation lemma with its coefficients c(j, r), and the closed-form
// predictions for moments and counters.

#include "hawkins/csv.hpp"
#include "hawkins/pattern.hpp"
#include "hawkins/rational.hpp"
#include "hawkins/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hawkins {

// M_n = 1 + sum_{j=1}^{n-2} 1/j for each requested n, in one increasing pass.
inline std::vector<double> harmonic_M(std::span<const std::uint64_t> ns) {
  for (std::uint64_t n : ns)
    if (n < 2) throw std::invalid_argument("harmonic_M: n must be >= 2");
  std::vector<std::size_t> order(ns.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ns[a] < ns[b]; });
  std::vector<double> out(ns.size());
  NeumaierSum s;
  s.add(1.0);
  std::uint64_t j = 0;  // terms 1..j added
  for (std::size_t idx : order) {
    while (j + 2 < ns[idx]) {
      ++j;
      s.add(1.0 / static_cast<double>(j));
    }
    out[idx] = s.value();
  }
  return out;
}

namespace detail {

// Optional on-disk memo of M_n at large checkpoints (HAWKINS_CACHE_DIR).
class HarmonicCache {
 public:
  static HarmonicCache& instance() {
    static HarmonicCache c;
    return c;
  }

  double get(std::uint64_t n) {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = memo_.find(n); it != memo_.end()) return it->second;
    const std::uint64_t one[1] = {n};
    const double v = harmonic_M(one)[0];
    memo_[n] = v;
    if (n >= 1000000) persist(n, v);
    return v;
  }

 private:
  HarmonicCache() {
    const char* dir = std::getenv("HAWKINS_CACHE_DIR");
    if (!dir || !*dir) return;
    path_ = std::filesystem::path(dir) / "harmonic_M.tsv";
    std::ifstream in(path_);
    std::uint64_t n;
    std::string hex;
    while (in >> n >> hex) memo_[n] = std::strtod(hex.c_str(), nullptr);
  }

  void persist(std::uint64_t n, double v) {
    if (path_.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(path_.parent_path(), ec);
    std::ofstream out(path_, std::ios::app);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", v);
    if (out) out << n << '\t' << buf << '\n';
  }

  std::mutex mu_;
  std::map<std::uint64_t, double> memo_;
  std::filesystem::path path_;
};

}  // namespace detail

inline double harmonic_M(std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("harmonic_M: n must be >= 2");
  if (n < 100000) {
    const std::uint64_t one[1] = {n};
    return harmonic_M(std::span<const std::uint64_t>(one))[0];
  }
  return detail::HarmonicCache::instance().get(n);
}

inline Rational harmonic_M_exact(std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("harmonic_M_exact: n must be >= 2");
  if (n > 100000) throw ResourceLimitError("harmonic_M_exact: n too large");
  Rational s(1);
  for (std::uint64_t j = 1; j + 2 <= n; ++j) s += make_rational(1, static_cast<std::int64_t>(j));
  return s;
}

// c(j, r) = r (r + 1) ... (r + j - 1) / (s + 1)^{j + 1}
inline Rational coeff_c(unsigned j, unsigned r, unsigned s) {
  if (j < 1) throw std::invalid_argument("coeff_c: j must be >= 1");
  Integer num(1);
  for (unsigned i = 0; i < j; ++i) num *= r + i;
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), s + 1, j + 1);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

struct ExpansionSpec {
  unsigned s = 0;
  unsigned r = 0;
  unsigned t = 0;

  void validate() const {
    if (r > t) throw std::invalid_argument("ExpansionSpec: need r <= t");
  }
};

struct Prediction {
  std::string id;
  std::uint64_t n = 0;
  double leading = 0.0;
  double correction = 0.0;
  double error_scale = 0.0;

  double value() const { return leading + correction; }
  // (reference - prediction) in units of the error scale
  double normalized_residual(double reference) const { return (reference - value()) / error_scale; }
};

// sum_{k=2}^{n} k^s / M_k^r at each n (sorted), one pass.
inline std::vector<double> lemma1_sum_exact(const ExpansionSpec& spec, std::span<const std::uint64_t> ns) {
  spec.validate();
  if (!std::is_sorted(ns.begin(), ns.end())) throw std::invalid_argument("lemma1_sum_exact: n must be sorted");
  for (std::uint64_t n : ns)
    if (n < 2) throw std::invalid_argument("lemma1_sum_exact: n must be >= 2");
  std::vector<double> out;
  NeumaierSum sum, M;
  M.add(1.0);
  std::size_t next = 0;
  for (std::uint64_t k = 2; next < ns.size(); ++k) {
    if (k > 2) M.add(1.0 / static_cast<double>(k - 2));
    sum.add(std::pow(static_cast<double>(k), spec.s) / std::pow(M.value(), spec.r));
    while (next < ns.size() && ns[next] == k) out.push_back(sum.value()), ++next;
  }
  return out;
}

inline double lemma1_sum_exact(const ExpansionSpec& spec, std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("lemma1_sum_exact: n must be >= 2");
  const std::uint64_t one[1] = {n};
  return lemma1_sum_exact(spec, std::span<const std::uint64_t>(one))[0];
}

inline Rational lemma1_sum_rational(const ExpansionSpec& spec, std::uint64_t n) {
  spec.validate();
  Rational sum(0);
  for (std::uint64_t k = 2; k <= n; ++k) {
    Rational term = pow(Rational(static_cast<unsigned long>(k)), spec.s);
    term /= pow(harmonic_M_exact(k), spec.r);
    sum += term;
  }
  return sum;
}

inline Prediction lemma1_expansion(const ExpansionSpec& spec, std::uint64_t n, double M) {
  spec.validate();
  Prediction p;
  p.id = "lemma1(s=" + std::to_string(spec.s) + ",r=" + std::to_string(spec.r) + ",t=" + std::to_string(spec.t) + ")";
  p.n = n;
  const double scale = std::pow(static_cast<double>(n), spec.s + 1);
  p.leading = scale / ((spec.s + 1) * std::pow(M, spec.r));
  for (unsigned j = 1; j + spec.r + 1 <= spec.t; ++j)
    p.correction += coeff_c(j, spec.r, spec.s).get_d() * scale / std::pow(M, spec.r + j);
  p.error_scale = scale / std::pow(M, spec.t);
  return p;
}

inline Prediction lemma1_expansion(const ExpansionSpec& spec, std::uint64_t n) {
  return lemma1_expansion(spec, n, harmonic_M(n));
}

inline Prediction make_prediction(std::string id, std::uint64_t n, double leading, double correction,
                                  double error_scale) {
  return Prediction{std::move(id), n, leading, correction, error_scale};
}

// E(y_n^k) ~ 1/M^k, error 1/M^{k+2}
inline Prediction predict_moment(std::uint64_t n, unsigned k) {
  const double M = harmonic_M(n);
  return make_prediction("moment:" + std::to_string(k), n, std::pow(M, -double(k)), 0.0,
                         std::pow(M, -double(k) - 2));
}

inline Prediction predict_That(std::uint64_t n) {
  const double M = harmonic_M(n), x = static_cast<double>(n);
  return make_prediction("hat", n, x / M, x / (M * M), x / (M * M * M));
}

inline Prediction predict_That_second(std::uint64_t n) {
  const double M = harmonic_M(n), x2 = static_cast<double>(n) * static_cast<double>(n);
  return make_prediction("hat2", n, x2 / (M * M), 2 * x2 / std::pow(M, 3), x2 / std::pow(M, 4));
}

inline Prediction predict_T(std::uint64_t n, const Pattern& p) {
  const double M = harmonic_M(n), x = static_cast<double>(n);
  const double k = p.span(), l = p.interior();
  return make_prediction("T:" + p.str(), n, x / std::pow(M, l + 2), -(k - 2 * l - 3) * x / std::pow(M, l + 3),
                         x / std::pow(M, l + 4));
}

inline Prediction predict_T_second(std::uint64_t n, const Pattern& p) {
  const double M = harmonic_M(n), x2 = static_cast<double>(n) * static_cast<double>(n);
  const double k = p.span(), l = p.interior();
  return make_prediction("T2:" + p.str(), n, x2 / std::pow(M, 2 * l + 4),
                         -(2 * k - 4 * l - 6) * x2 / std::pow(M, 2 * l + 5), x2 / std::pow(M, 2 * l + 6));
}

// E(y_{n+1}^{l+2} T(n))
inline Prediction predict_yT(std::uint64_t n, const Pattern& p) {
  const double M = harmonic_M(n), x = static_cast<double>(n);
  const double k = p.span(), l = p.interior();
  return make_prediction("yT:" + p.str(), n, x / std::pow(M, 2 * l + 4),
                         -(k - 2 * l - 3) * x / std::pow(M, 2 * l + 5), x / std::pow(M, 2 * l + 6));
}

inline double limit_density(double x, unsigned l) {
  if (!(x > 1.0)) throw std::invalid_argument("limit_density: x must exceed 1");
  if (l < 1) throw std::invalid_argument("limit_density: l must be >= 1");
  return x / std::pow(std::log(x), l);
}

namespace detail {

// Sum of pattern predictions over every exact pattern compatible with the
// required offsets (free offsets in (0, span) either way).
inline Prediction sum_over_patterns(std::string id, std::uint64_t n, const std::vector<std::uint32_t>& required,
                                    std::uint32_t span) {
  std::vector<std::uint32_t> free;
  for (std::uint32_t h = 1; h < span; ++h)
    if (!std::binary_search(required.begin(), required.end(), h)) free.push_back(h);
  if (free.size() > 20) throw std::invalid_argument("prediction: span too large");
  Prediction total;
  total.id = std::move(id);
  total.n = n;
  for (std::uint32_t mask = 0; mask < (1u << free.size()); ++mask) {
    std::vector<std::uint32_t> offs = required;
    for (std::size_t i = 0; i < free.size(); ++i)
      if (mask >> i & 1u) offs.push_back(free[i]);
    std::sort(offs.begin(), offs.end());
    const Prediction p = predict_T(n, Pattern(offs));
    total.leading += p.leading;
    total.correction += p.correction;
    total.error_scale += p.error_scale;
  }
  return total;
}

}  // namespace detail

inline Prediction predict_twin(std::uint64_t n, std::uint32_t k) {
  if (k == 0) throw std::invalid_argument("predict_twin: k must be positive");
  return detail::sum_over_patterns("twin:" + std::to_string(k), n, {0, k}, k);
}

inline Prediction predict_tuple(std::uint64_t n, const LooseTuple& t) {
  std::vector<std::uint32_t> req{0};
  req.insert(req.end(), t.gaps().begin(), t.gaps().end());
  return detail::sum_over_patterns("tuple:" + t.str(), n, req, t.span());
}

// E(#members <= n) ~ n/M + n/M^2
inline Prediction predict_primes(std::uint64_t n) {
  const double M = harmonic_M(n), x = static_cast<double>(n);
  return make_prediction("primes", n, x / M, x / (M * M), x / (M * M * M));
}

inline void write_predictions_csv(std::ostream& os, const std::vector<Prediction>& ps) {
  write_csv_row(os, {"statistic", "n", "leading", "correction", "error_scale"});
  char buf[3][32];
  for (const auto& p : ps) {
    std::snprintf(buf[0], 32, "%.17g", p.leading);
    std::snprintf(buf[1], 32, "%.17g", p.correction);
    std::snprintf(buf[2], 32, "%.17g", p.error_scale);
    write_csv_row(os, {p.id, std::to_string(p.n), buf[0], buf[1], buf[2]});
  }
}

}  // namespace hawkins
