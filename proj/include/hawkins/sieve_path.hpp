#pragma once

// Realizations of the Hawkins random sieve restricted to a window [2, N].
//
// Two samplers produce the same law on the window:
//   * sample_path_conditional includes each m with probability y_m, the
//     product of (1 - 1/j) over members j < m;
//   * sample_path_rounds runs the sieve itself: take the smallest survivor P,
//     delete every larger survivor independently with probability 1/P, repeat.
// Deletions only ever hit integers above the current minimum, so truncating
// the process to [2, N] does not change the law of the window.

#include "hawkins/rational.hpp"
#include "hawkins/rng.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hawkins {

enum class WeightsMode { recompute, stored };
enum class SamplerKind { conditional, rounds };

inline std::string to_string(SamplerKind kind) {
  return kind == SamplerKind::conditional ? "conditional" : "rounds";
}

inline SamplerKind parse_sampler(const std::string& name) {
  if (name == "conditional") return SamplerKind::conditional;
  if (name == "rounds") return SamplerKind::rounds;
  throw std::invalid_argument("unknown sampler '" + name + "' (expected conditional|rounds)");
}

template <class T>
struct SurvivalWeight {
  T value;
  std::uint64_t index;
};

// Immutable membership bitset over [2, N]; bit i of the path is integer i.
class SievePath {
 public:
  // Builds a path from an explicit member list (fixtures, replays).
  static SievePath from_members(std::uint64_t window_max, std::span<const std::uint64_t> members,
                                std::uint64_t seed = 0, WeightsMode mode = WeightsMode::recompute) {
    if (window_max < 2) throw std::invalid_argument("SievePath: window_max must be >= 2");
    std::vector<std::uint64_t> words(word_count_for(window_max), 0);
    for (std::uint64_t m : members) {
      if (m < 2 || m > window_max)
        throw std::invalid_argument("SievePath: member " + std::to_string(m) + " outside [2, " +
                                    std::to_string(window_max) + "]");
      words[m >> 6] |= std::uint64_t{1} << (m & 63);
    }
    if ((words[0] & 4u) == 0) throw std::invalid_argument("SievePath: 2 must be a member");
    return SievePath(window_max, seed, std::move(words), mode);
  }

  std::uint64_t window_max() const { return window_max_; }
  std::uint64_t seed() const { return seed_; }
  WeightsMode weights_mode() const { return mode_; }

  bool contains(std::uint64_t m) const {
    if (m < 2 || m > window_max_) return false;
    return (words_[m >> 6] >> (m & 63)) & 1u;
  }

  std::uint64_t size() const {
    std::uint64_t total = 0;
    for (std::uint64_t w : words_) total += static_cast<std::uint64_t>(std::popcount(w));
    return total;
  }

  std::vector<std::uint64_t> members() const {
    std::vector<std::uint64_t> out;
    for_each_member(window_max_, [&](std::uint64_t m) { out.push_back(m); });
    return out;
  }

  // Visits members m <= up_to in increasing order.
  template <class F>
  void for_each_member(std::uint64_t up_to, F&& f) const {
    if (up_to > window_max_) up_to = window_max_;
    const std::size_t last = static_cast<std::size_t>(up_to >> 6);
    for (std::size_t w = 0; w <= last; ++w) {
      std::uint64_t bits = words_[w];
      if (w == last) bits &= low_mask((up_to & 63) + 1);
      while (bits) {
        const int b = std::countr_zero(bits);
        f(static_cast<std::uint64_t>(w) * 64 + static_cast<std::uint64_t>(b));
        bits &= bits - 1;
      }
    }
  }

  // Raw 64-bit word i (bits 64i .. 64i+63); zero past the end.
  std::uint64_t word(std::size_t i) const { return i < words_.size() ? words_[i] : 0; }
  std::size_t word_count() const { return words_.size(); }

  // y_m for m in [2, N + 1] (index m - 2); empty unless mode == stored.
  const std::vector<double>& stored_weights() const { return weights_; }

  friend bool operator==(const SievePath& a, const SievePath& b) {
    return a.window_max_ == b.window_max_ && a.words_ == b.words_;
  }

  static std::uint64_t low_mask(std::uint64_t bits) {
    return bits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
  }

 private:
  SievePath(std::uint64_t window_max, std::uint64_t seed, std::vector<std::uint64_t> words,
            WeightsMode mode)
      : window_max_(window_max), seed_(seed), mode_(mode), words_(std::move(words)) {
    if (mode_ == WeightsMode::stored) {
      weights_.resize(window_max_, 1.0);
      double y = 1.0;
      for (std::uint64_t m = 2; m <= window_max_ + 1; ++m) {
        weights_[m - 2] = y;
        if (contains(m)) y *= 1.0 - 1.0 / static_cast<double>(m);
      }
    }
  }

  static std::size_t word_count_for(std::uint64_t window_max) {
    return static_cast<std::size_t>(window_max / 64 + 1);
  }

  friend SievePath sample_path_conditional(std::uint64_t, std::uint64_t, WeightsMode);
  friend class RoundsSampler;

  std::uint64_t window_max_;
  std::uint64_t seed_;
  WeightsMode mode_;
  std::vector<std::uint64_t> words_;
  std::vector<double> weights_;
};

// Members in increasing order without storing the path.  While no member is
// added y stays fixed, so the run of non-members before the next member is
// geometric with success probability y; one uniform is drawn per member.
class ConditionalStream {
 public:
  explicit ConditionalStream(std::uint64_t seed) : rng_(seed) {}

  // y_m for the smallest m not yet decided.
  double weight() const { return y_; }
  std::uint64_t position() const { return m_; }

  std::uint64_t next_member() {
    if (y_ < 1.0) {
      const double g = std::floor(std::log(rng_.uniform_open_zero()) / std::log1p(-y_));
      m_ += g >= 1e18 ? std::uint64_t{1} << 62 : static_cast<std::uint64_t>(g);
    }
    const std::uint64_t member = m_;
    y_ *= 1.0 - 1.0 / static_cast<double>(member);
    ++m_;
    return member;
  }

 private:
  Xoshiro256StarStar rng_;
  std::uint64_t m_ = 2;
  double y_ = 1.0;
};

inline SievePath sample_path_conditional(std::uint64_t n, std::uint64_t seed,
                                         WeightsMode mode = WeightsMode::recompute) {
  if (n < 2) throw std::invalid_argument("sample_path_conditional: N must be >= 2");
  std::vector<std::uint64_t> words(SievePath::word_count_for(n), 0);
  ConditionalStream stream(seed);
  for (std::uint64_t m = stream.next_member(); m <= n; m = stream.next_member())
    words[m >> 6] |= std::uint64_t{1} << (m & 63);
  return SievePath(n, seed, std::move(words), mode);
}

// Probability with which a survivor is deleted in the round whose minimum is p.
using DeletionProbability = double (*)(std::uint64_t p);

inline double hawkins_deletion(std::uint64_t p) { return 1.0 / static_cast<double>(p); }

// Round-based sieve over [2, N].  Survivors live in a Fenwick tree so the
// r-th remaining survivor can be located in O(log N); deletions within a
// round are placed by geometric skips over the survivors.
class RoundsSampler {
 public:
  RoundsSampler(std::uint64_t n, std::uint64_t seed, DeletionProbability rule)
      : n_(n), seed_(seed), rule_(rule), rng_(seed) {
    if (n < 2) throw std::invalid_argument("sample_path_rounds: N must be >= 2");
  }

  SievePath run(WeightsMode mode) {
    const std::size_t size = static_cast<std::size_t>(n_ - 1);  // integers 2..N
    tree_.assign(size + 1, 0);
    for (std::size_t i = 1; i <= size; ++i) tree_[i] = static_cast<std::uint32_t>(i & (~i + 1));
    std::size_t alive = size;
    std::vector<std::uint64_t> words(SievePath::word_count_for(n_), 0);

    for (std::size_t rank = 0; rank < alive; ++rank) {
      const std::size_t idx = select(rank);
      const std::uint64_t prime = idx + 2;
      words[prime >> 6] |= std::uint64_t{1} << (prime & 63);
      const double p = rule_(prime);
      std::size_t r = rank + 1 + geometric_skip(p);
      while (r < alive) {
        remove(select(r));
        --alive;
        r += geometric_skip(p);
      }
    }
    return SievePath(n_, seed_, std::move(words), mode);
  }

 private:
  // Number of survivors kept before the next deletion.
  std::size_t geometric_skip(double p) {
    if (p >= 1.0) return 0;
    if (p <= 0.0) return static_cast<std::size_t>(-1) / 2;
    const double g = std::floor(std::log(rng_.uniform_open_zero()) / std::log1p(-p));
    return g >= 1e18 ? static_cast<std::size_t>(-1) / 2 : static_cast<std::size_t>(g);
  }

  // 0-based position of the survivor with the given 0-based rank.
  std::size_t select(std::size_t rank) const {
    std::size_t pos = 0;
    std::size_t remaining = rank + 1;
    std::size_t step = std::bit_floor(tree_.size() - 1);
    for (; step > 0; step >>= 1) {
      const std::size_t next = pos + step;
      if (next < tree_.size() && tree_[next] < remaining) {
        pos = next;
        remaining -= tree_[next];
      }
    }
    return pos;  // 1-based index pos + 1 -> 0-based pos
  }

  void remove(std::size_t zero_based) {
    for (std::size_t i = zero_based + 1; i < tree_.size(); i += i & (~i + 1)) --tree_[i];
  }

  std::uint64_t n_;
  std::uint64_t seed_;
  DeletionProbability rule_;
  Xoshiro256StarStar rng_;
  std::vector<std::uint32_t> tree_;
};

inline SievePath sample_path_rounds(std::uint64_t n, std::uint64_t seed,
                                    WeightsMode mode = WeightsMode::recompute,
                                    DeletionProbability rule = hawkins_deletion) {
  return RoundsSampler(n, seed, rule).run(mode);
}

inline SievePath sample_path(SamplerKind kind, std::uint64_t n, std::uint64_t seed,
                             WeightsMode mode = WeightsMode::recompute) {
  return kind == SamplerKind::conditional ? sample_path_conditional(n, seed, mode)
                                          : sample_path_rounds(n, seed, mode);
}

// y_m(path) = prod_{j < m, j in path} (1 - 1/j), for 2 <= m <= N + 1.
template <class T = double>
SurvivalWeight<T> survival_weight(const SievePath& path, std::uint64_t m) {
  if (m < 2 || m > path.window_max() + 1)
    throw std::invalid_argument("survival_weight: m = " + std::to_string(m) + " outside [2, N + 1]");
  if constexpr (std::is_same_v<T, double>) {
    if (path.weights_mode() == WeightsMode::stored) return {path.stored_weights()[m - 2], m};
  }
  T y(1);
  path.for_each_member(m - 1, [&](std::uint64_t j) { y *= one_minus_inverse<T>(j); });
  return {y, m};
}

}  // namespace hawkins
