#pragma once

// Summation and the small amount of sampling statistics the harness needs.

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>

namespace hawkins {

// Neumaier's variant of Kahan summation.
class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Two-sided p-value of a standard normal statistic.
inline double two_sided_p(double z) {
  if (!std::isfinite(z)) return std::isnan(z) ? 1.0 : 0.0;
  return std::erfc(std::fabs(z) / std::sqrt(2.0));
}

// Sample moments, accumulated in the order the values are given.
struct SampleSummary {
  std::uint64_t count = 0;
  double mean = 0.0;
  double variance = std::numeric_limits<double>::quiet_NaN();  // unbiased; NaN when count < 2
  double m4 = std::numeric_limits<double>::quiet_NaN();        // fourth central moment

  double stderr_mean() const {
    return count >= 2 ? std::sqrt(variance / static_cast<double>(count))
                      : std::numeric_limits<double>::quiet_NaN();
  }
};

// Two passes: compensated mean, then central moments.
inline SampleSummary summarize(std::span<const double> xs) {
  SampleSummary s;
  s.count = xs.size();
  if (xs.empty()) return s;
  NeumaierSum sum;
  for (double x : xs) sum.add(x);
  s.mean = sum.value() / static_cast<double>(xs.size());
  if (xs.size() < 2) return s;
  NeumaierSum sq, quart;
  for (double x : xs) {
    const double d = x - s.mean;
    sq.add(d * d);
    quart.add(d * d * d * d);
  }
  s.variance = sq.value() / static_cast<double>(xs.size() - 1);
  s.m4 = quart.value() / static_cast<double>(xs.size());
  return s;
}

struct TwoSampleResult {
  double z_mean = 0.0;
  double p_mean = 1.0;
  double z_var = 0.0;
  double p_var = 1.0;
};

// Large-sample z tests for equal means (Welch) and equal variances, the
// latter using Var(s^2) ~ (m4 - s^4) / n.
inline TwoSampleResult two_sample_test(const SampleSummary& a, const SampleSummary& b) {
  TwoSampleResult r;
  const double na = static_cast<double>(a.count), nb = static_cast<double>(b.count);
  const double se_mean = std::sqrt(a.variance / na + b.variance / nb);
  if (se_mean > 0.0) {
    r.z_mean = (a.mean - b.mean) / se_mean;
  } else {
    r.z_mean = a.mean == b.mean ? 0.0 : std::numeric_limits<double>::infinity();
  }
  r.p_mean = two_sided_p(r.z_mean);
  const double va = (a.m4 - a.variance * a.variance) / na;
  const double vb = (b.m4 - b.variance * b.variance) / nb;
  const double se_var = std::sqrt(std::fmax(va, 0.0) + std::fmax(vb, 0.0));
  if (se_var > 0.0) {
    r.z_var = (a.variance - b.variance) / se_var;
  } else {
    r.z_var = a.variance == b.variance ? 0.0 : std::numeric_limits<double>::infinity();
  }
  r.p_var = two_sided_p(r.z_var);
  return r;
}

}  // namespace hawkins
