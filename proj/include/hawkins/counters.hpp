#pragma once

// Counting statistics on a single path.  All counts use the literal
// convention: starts m <= x, with the rest of the pattern allowed past x.

#include "hawkins/pattern.hpp"
#include "hawkins/sieve_path.hpp"
#include "hawkins/stats.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hawkins {

namespace detail {

inline void check_window(const SievePath& path, std::uint64_t x, std::uint64_t span, const char* op) {
  if (x + span > path.window_max())
    throw std::invalid_argument(std::string(op) + ": x + span = " + std::to_string(x + span) +
                                " exceeds window " + std::to_string(path.window_max()));
}

inline void check_sorted(std::span<const std::uint64_t> xs, const char* op) {
  if (!std::is_sorted(xs.begin(), xs.end()))
    throw std::invalid_argument(std::string(op) + ": checkpoints must be sorted");
}

// Bits m + offset for m = 64w .. 64w + 63.
inline std::uint64_t shifted_word(const SievePath& path, std::size_t w, std::uint32_t offset) {
  const std::size_t q = w + offset / 64;
  const unsigned r = offset % 64;
  if (r == 0) return path.word(q);
  return (path.word(q) >> r) | (path.word(q + 1) << (64 - r));
}

}  // namespace detail

// Number of m <= x satisfying the constraint, for each checkpoint x (sorted).
inline std::vector<std::uint64_t> count_constraint(const SievePath& path, const Constraint& c,
                                                   std::span<const std::uint64_t> checkpoints) {
  detail::check_sorted(checkpoints, "count");
  std::vector<std::uint64_t> out;
  out.reserve(checkpoints.size());
  if (checkpoints.empty()) return out;
  detail::check_window(path, checkpoints.back(), c.span, "count");

  std::uint64_t total = 0;
  std::size_t next = 0;
  const std::size_t last_word = static_cast<std::size_t>(checkpoints.back() >> 6);
  for (std::size_t w = 0; w <= last_word && next < checkpoints.size(); ++w) {
    std::uint64_t match = ~std::uint64_t{0};
    for (std::uint32_t i : c.required) match &= detail::shifted_word(path, w, i);
    for (std::uint32_t i : c.forbidden) match &= ~detail::shifted_word(path, w, i);
    while (next < checkpoints.size() && (checkpoints[next] >> 6) == w) {
      const std::uint64_t keep = SievePath::low_mask((checkpoints[next] & 63) + 1);
      out.push_back(total + static_cast<std::uint64_t>(std::popcount(match & keep)));
      ++next;
    }
    total += static_cast<std::uint64_t>(std::popcount(match));
  }
  return out;
}

inline std::uint64_t count_constraint(const SievePath& path, const Constraint& c, std::uint64_t x) {
  const std::uint64_t cp[1] = {x};
  return count_constraint(path, c, cp)[0];
}

// #{j <= x : j, j + k members}
inline std::uint64_t count_twin(const SievePath& path, std::uint32_t k, std::uint64_t x) {
  if (k == 0) throw std::invalid_argument("count_twin: k must be positive");
  detail::check_window(path, x, k, "count_twin");
  return count_constraint(path, Constraint::twin(k), x);
}

inline std::uint64_t count_tuple(const SievePath& path, const LooseTuple& t, std::uint64_t x) {
  detail::check_window(path, x, t.span(), "count_tuple");
  return count_constraint(path, Constraint::of(t), x);
}

inline std::uint64_t count_exact_pattern(const SievePath& path, const Pattern& p, std::uint64_t x) {
  detail::check_window(path, x, p.span(), "count_exact_pattern");
  return count_constraint(path, Constraint::of(p), x);
}

inline std::uint64_t prime_count(const SievePath& path, std::uint64_t x) {
  if (x > path.window_max())
    throw std::invalid_argument("prime_count: x beyond window");
  std::uint64_t n = 0;
  const std::size_t last = static_cast<std::size_t>(x >> 6);
  for (std::size_t w = 0; w < last; ++w) n += static_cast<std::uint64_t>(std::popcount(path.word(w)));
  return n + static_cast<std::uint64_t>(std::popcount(path.word(last) & SievePath::low_mask((x & 63) + 1)));
}

inline std::vector<std::uint64_t> prime_count(const SievePath& path, std::span<const std::uint64_t> xs) {
  detail::check_sorted(xs, "prime_count");
  std::vector<std::uint64_t> out;
  for (std::uint64_t x : xs) out.push_back(prime_count(path, x));
  return out;
}

// c_m = (1/(m+1)) (1 - 1/m)
template <class T>
T hat_coefficient(std::uint64_t m) {
  return Numeric<T>::from_ratio(static_cast<std::int64_t>(m) - 1,
                                static_cast<std::int64_t>(m) * static_cast<std::int64_t>(m + 1));
}

// Weighted twin counter: sum over m <= x with m, m + 2 members of
// 1 / (y_m - c_m y_m^2).  Evaluated at each checkpoint in one pass.
template <class T = double>
std::vector<T> weighted_twin_sum(const SievePath& path, std::span<const std::uint64_t> checkpoints) {
  detail::check_sorted(checkpoints, "weighted_twin_sum");
  std::vector<T> out;
  if (checkpoints.empty()) return out;
  detail::check_window(path, checkpoints.back(), 2, "weighted_twin_sum");
  T y(1);
  std::size_t next = 0;
  if constexpr (std::is_same_v<T, double>) {
    NeumaierSum sum;
    path.for_each_member(checkpoints.back(), [&](std::uint64_t m) {
      while (next < checkpoints.size() && checkpoints[next] < m) out.push_back(sum.value()), ++next;
      if (path.contains(m + 2)) sum.add(1.0 / (y - hat_coefficient<double>(m) * y * y));
      y *= one_minus_inverse<double>(m);
    });
    while (next < checkpoints.size()) out.push_back(sum.value()), ++next;
  } else {
    T sum(0);
    path.for_each_member(checkpoints.back(), [&](std::uint64_t m) {
      while (next < checkpoints.size() && checkpoints[next] < m) out.push_back(sum), ++next;
      if (path.contains(m + 2)) sum += T(1) / (y - hat_coefficient<T>(m) * y * y);
      y *= one_minus_inverse<T>(m);
    });
    while (next < checkpoints.size()) out.push_back(sum), ++next;
  }
  return out;
}

template <class T = double>
T weighted_twin_sum(const SievePath& path, std::uint64_t x) {
  const std::uint64_t cp[1] = {x};
  return weighted_twin_sum<T>(path, cp)[0];
}

struct TwinIdentityReport {
  std::uint32_t k = 0;
  std::uint64_t x = 0;
  std::uint64_t lhs = 0;  // twin count
  std::uint64_t rhs = 0;  // sum of exact-pattern counts
  std::vector<std::pair<Pattern, std::uint64_t>> terms;
  bool holds() const { return lhs == rhs; }
};

// Every twin pair (j, j + k) realizes exactly one interior subset of (0, k).
inline TwinIdentityReport decompose_twin_identity(const SievePath& path, std::uint32_t k, std::uint64_t x) {
  if (k == 0) throw std::invalid_argument("decompose_twin_identity: k must be positive");
  if (k > 20) throw std::invalid_argument("decompose_twin_identity: k too large");
  TwinIdentityReport rep;
  rep.k = k;
  rep.x = x;
  rep.lhs = count_twin(path, k, x);
  for (std::uint32_t mask = 0; mask < (1u << (k - 1)); ++mask) {
    std::vector<std::uint32_t> offs{0};
    for (std::uint32_t i = 1; i < k; ++i)
      if (mask >> (i - 1) & 1u) offs.push_back(i);
    offs.push_back(k);
    Pattern p(std::move(offs));
    const std::uint64_t c = count_exact_pattern(path, p, x);
    rep.rhs += c;
    rep.terms.emplace_back(std::move(p), c);
  }
  return rep;
}

}  // namespace hawkins
