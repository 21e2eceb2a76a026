#pragma once

// Finite-n expectations E(y_n^k), E(T(n)), E(T(n)^2) and the weighted-counter
// analogues, without sampling.
//
// Pure moments come from the triangle
//   E(y_{n+1}^k) = E(y_n^k) - (1 - (1 - 1/n)^k) E(y_n^{k+1}),
// run in rationals (exact) or by propagating the law of y_n on a fixed
// Chebyshev grid (float; the double-precision triangle loses all accuracy by
// n ~ 300 because of cancellation).
//
// Second moments need more than pure moments: whether m starts a pattern is
// only known once m + span has been decided.  The ladders below carry, for
// every membership window of the last few positions, the joint law of the
// current y together with the running statistic and its square.

#include "hawkins/counters.hpp"
#include "hawkins/exact_measure.hpp"
#include "hawkins/pattern.hpp"
#include "hawkins/polynomial.hpp"
#include "hawkins/rational.hpp"
#include "hawkins/stats.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hawkins {

enum class LadderMode { exact, floating };

inline std::string to_string(LadderMode m) { return m == LadderMode::exact ? "exact" : "float"; }

inline LadderMode parse_ladder_mode(const std::string& s) {
  if (s == "exact") return LadderMode::exact;
  if (s == "float" || s == "floating") return LadderMode::floating;
  throw std::invalid_argument("unknown mode '" + s + "' (expected exact|float)");
}

struct LadderOptions {
  std::uint64_t exact_cap = 64;      // largest N accepted in exact mode
  unsigned nodes = 48;               // collocation points in float mode
  std::size_t atom_cap = 1u << 22;   // distinct y values tracked in exact mode
};

// Chebyshev-Lobatto points on [0, 1/2]; x[0] = 1/2 and x[last] = 0.
class ChebyshevGrid {
 public:
  explicit ChebyshevGrid(unsigned count) {
    if (count < 4) throw std::invalid_argument("ChebyshevGrid: need at least 4 nodes");
    const unsigned p = count - 1;
    x_.resize(count);
    w_.resize(count);
    for (unsigned j = 0; j <= p; ++j) {
      x_[j] = 0.25 * (1.0 + std::cos(std::numbers::pi * j / p));
      w_[j] = (j % 2 ? -1.0 : 1.0) * ((j == 0 || j == p) ? 0.5 : 1.0);
    }
    x_[0] = 0.5;
    x_[p] = 0.0;
  }

  std::size_t size() const { return x_.size(); }
  const std::vector<double>& x() const { return x_; }

  // L[r * size + i] = l_i(q x_r): moves a point mass at x_r to q x_r and
  // re-expresses it on the grid, preserving every polynomial moment up to
  // degree size - 1.
  void transfer(double q, std::vector<double>& L) const {
    const std::size_t P = x_.size();
    L.assign(P * P, 0.0);
    for (std::size_t r = 0; r < P; ++r) {
      const double z = q * x_[r];
      double* row = &L[r * P];
      std::size_t hit = P;
      for (std::size_t i = 0; i < P; ++i)
        if (z == x_[i]) hit = i;
      if (hit < P) {
        row[hit] = 1.0;
        continue;
      }
      double total = 0.0;
      for (std::size_t i = 0; i < P; ++i) {
        row[i] = w_[i] / (z - x_[i]);
        total += row[i];
      }
      for (std::size_t i = 0; i < P; ++i) row[i] /= total;
    }
  }

 private:
  std::vector<double> x_;
  std::vector<double> w_;
};

// Law of y_n on the grid, advanced one position at a time.
class MomentStream {
 public:
  explicit MomentStream(unsigned nodes = 48) : grid_(nodes), mass_(nodes, 0.0), next_(nodes) {
    mass_[0] = 1.0;  // y_3 = 1/2 surely
  }

  // Position whose weight is currently described (starts at 3).
  std::uint64_t n() const { return n_; }

  double moment(unsigned k) const {
    NeumaierSum s;
    for (std::size_t r = 0; r < mass_.size(); ++r) s.add(mass_[r] * std::pow(grid_.x()[r], k));
    return s.value();
  }

  template <class F>
  double integrate(F&& f) const {
    NeumaierSum s;
    for (std::size_t r = 0; r < mass_.size(); ++r) s.add(mass_[r] * f(grid_.x()[r]));
    return s.value();
  }

  void advance() {
    const std::size_t P = mass_.size();
    grid_.transfer(1.0 - 1.0 / static_cast<double>(n_), L_);
    const auto& x = grid_.x();
    for (std::size_t i = 0; i < P; ++i) next_[i] = mass_[i] * (1.0 - x[i]);
    for (std::size_t r = 0; r < P; ++r) {
      const double moved = mass_[r] * x[r];
      if (moved == 0.0) continue;
      const double* row = &L_[r * P];
      for (std::size_t i = 0; i < P; ++i) next_[i] += moved * row[i];
    }
    mass_.swap(next_);
    ++n_;
  }

 private:
  ChebyshevGrid grid_;
  std::vector<double> mass_;
  std::vector<double> next_;
  std::vector<double> L_;
  std::uint64_t n_ = 3;
};

// E(y_n^k) for 2 <= n <= max_n.
class MomentTable {
 public:
  static MomentTable build(std::uint64_t max_n, unsigned k_target, LadderMode mode,
                           const LadderOptions& opt = {}) {
    if (max_n < 2) throw std::invalid_argument("build_moment_table: N must be >= 2");
    if (k_target < 1) throw std::invalid_argument("build_moment_table: k_target must be >= 1");
    MomentTable t;
    t.max_n_ = max_n;
    t.k_target_ = k_target;
    t.mode_ = mode;
    if (mode == LadderMode::exact) {
      if (max_n > opt.exact_cap)
        throw ResourceLimitError("build_moment_table: exact mode capped at N = " +
                                 std::to_string(opt.exact_cap));
      const std::size_t depth = k_target + (max_n - 2);
      std::vector<Rational> e(depth + 1, Rational(1));
      t.exact_.push_back(e);
      for (std::uint64_t n = 2; n < max_n; ++n) {
        const Rational q = survival_factor(n);
        Rational qk(1);
        std::vector<Rational> next(e.size() - 1);
        for (std::size_t k = 0; k + 1 < e.size(); ++k) {
          next[k] = e[k] - (Rational(1) - qk) * e[k + 1];
          qk *= q;
        }
        e.swap(next);
        t.exact_.push_back(e);
      }
    } else {
      t.float_.push_back(std::vector<double>(k_target + 1, 1.0));
      if (max_n >= 3) {
        MomentStream s(opt.nodes);
        for (std::uint64_t n = 3; n <= max_n; ++n) {
          std::vector<double> row(k_target + 1);
          for (unsigned k = 0; k <= k_target; ++k) row[k] = s.moment(k);
          t.float_.push_back(std::move(row));
          if (n < max_n) s.advance();
        }
      }
    }
    return t;
  }

  std::uint64_t max_n() const { return max_n_; }
  unsigned k_target() const { return k_target_; }
  LadderMode mode() const { return mode_; }

  unsigned max_order(std::uint64_t n) const {
    check_n(n);
    return mode_ == LadderMode::exact ? static_cast<unsigned>(exact_[n - 2].size() - 1) : k_target_;
  }

  double value(std::uint64_t n, unsigned k) const {
    check(n, k);
    return mode_ == LadderMode::exact ? exact_[n - 2][k].get_d() : float_[n - 2][k];
  }

  const Rational& exact_value(std::uint64_t n, unsigned k) const {
    if (mode_ != LadderMode::exact) throw std::invalid_argument("MomentTable: not an exact table");
    check(n, k);
    return exact_[n - 2][k];
  }

  template <class T>
  T get(std::uint64_t n, unsigned k) const {
    if constexpr (std::is_same_v<T, Rational>)
      return exact_value(n, k);
    else
      return value(n, k);
  }

  void write_csv(std::ostream& os) const {
    if (mode_ == LadderMode::exact) {
      write_csv_row(os, {"n", "k", "numerator", "denominator", "value"});
      for (std::uint64_t n = 2; n <= max_n_; ++n)
        for (unsigned k = 0; k <= k_target_; ++k) {
          const Rational& v = exact_[n - 2][k];
          write_csv_row(os, {std::to_string(n), std::to_string(k), v.get_num().get_str(),
                             v.get_den().get_str(), format_double(v.get_d())});
        }
    } else {
      write_csv_row(os, {"n", "k", "value"});
      for (std::uint64_t n = 2; n <= max_n_; ++n)
        for (unsigned k = 0; k <= k_target_; ++k)
          write_csv_row(os, {std::to_string(n), std::to_string(k), format_double(float_[n - 2][k])});
    }
  }

  static std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }

 private:
  void check_n(std::uint64_t n) const {
    if (n < 2 || n > max_n_)
      throw std::invalid_argument("MomentTable: n = " + std::to_string(n) + " outside [2, " +
                                  std::to_string(max_n_) + "]");
  }
  void check(std::uint64_t n, unsigned k) const {
    check_n(n);
    if (k > max_order(n))
      throw std::invalid_argument("MomentTable: order " + std::to_string(k) + " not available at n = " +
                                  std::to_string(n));
  }

  std::uint64_t max_n_ = 2;
  unsigned k_target_ = 1;
  LadderMode mode_ = LadderMode::floating;
  std::vector<std::vector<Rational>> exact_;
  std::vector<std::vector<double>> float_;
};

inline MomentTable build_moment_table(std::uint64_t max_n, unsigned k_target, LadderMode mode,
                                      const LadderOptions& opt = {}) {
  return MomentTable::build(max_n, k_target, mode, opt);
}

// E of a polynomial in y_n.
template <class T>
T integrate_polynomial(const Polynomial<T>& p, const MomentTable& table, std::uint64_t n) {
  if (p.degree() > table.max_order(n))
    throw std::invalid_argument("moment table lacks order " + std::to_string(p.degree()) +
                                " at n = " + std::to_string(n));
  T s(0);
  for (std::size_t i = 0; i <= p.degree(); ++i) s += p[i] * table.get<T>(n, static_cast<unsigned>(i));
  return s;
}

namespace detail {
inline void check_table_covers(const MomentTable& table, std::uint64_t N, const char* op) {
  if (table.max_n() < N)
    throw std::invalid_argument(std::string(op) + ": table stops at n = " + std::to_string(table.max_n()));
}
}  // namespace detail

// E(weighted twin sum up to N) = sum_{m=2}^{N} (1 - 1/m) E(y_m), because the
// weight cancels the conditional twin probability down to (1 - 1/m) y_m.
template <class T = double>
T expected_That(std::uint64_t N, const MomentTable& table) {
  if (N < 2) throw std::invalid_argument("expected_That: N must be >= 2");
  detail::check_table_covers(table, N, "expected_That");
  if constexpr (std::is_same_v<T, double>) {
    NeumaierSum s;
    for (std::uint64_t m = 2; m <= N; ++m) s.add(one_minus_inverse<double>(m) * table.value(m, 1));
    return s.value();
  } else {
    T s(0);
    for (std::uint64_t m = 2; m <= N; ++m) s += one_minus_inverse<T>(m) * table.get<T>(m, 1);
    return s;
  }
}

// E(#{m <= N : constraint at m}) = sum_{s=2}^{N} E(P(event at s | y_s)).
template <class T = double>
T expected_count(std::uint64_t N, const Constraint& c, const MomentTable& table) {
  detail::check_table_covers(table, N, "expected_count");
  if (c.span + 1 > table.k_target())
    throw std::invalid_argument("expected_count: table order must be at least span + 1");
  std::vector<T> terms;
  for (std::uint64_t s = 2; s <= N; ++s)
    terms.push_back(integrate_polynomial(event_polynomial<T>(s, c), table, s));
  if constexpr (std::is_same_v<T, double>) {
    NeumaierSum acc;
    for (double v : terms) acc.add(v);
    return acc.value();
  } else {
    T acc(0);
    for (const auto& v : terms) acc += v;
    return acc;
  }
}

// E(T(N)) for an exact pattern, summing the chain-rule polynomial P_{s-1}
// against E(y_s^i).
template <class T = double>
T expected_T(std::uint64_t N, const Pattern& p, const MomentTable& table) {
  detail::check_table_covers(table, N, "expected_T");
  if (p.span() + 1 > table.k_target())
    throw std::invalid_argument("expected_T: table order must be at least span + 1");
  if constexpr (std::is_same_v<T, double>) {
    NeumaierSum acc;
    for (std::uint64_t s = 2; s <= N; ++s)
      acc.add(integrate_polynomial(pattern_polynomial<double>(s - 1, p), table, s));
    return acc.value();
  } else {
    T acc(0);
    for (std::uint64_t s = 2; s <= N; ++s) acc += integrate_polynomial(pattern_polynomial<T>(s - 1, p), table, s);
    return acc;
  }
}

// ---------------------------------------------------------------------------
// Joint-law ladders.  A "space" stores finite measures in y carrying C
// statistics each.  NodeSpace keeps them on the Chebyshev grid; AtomSpace
// keeps exact point masses keyed by the (rational) value of y.

template <std::size_t C>
class NodeSpace {
 public:
  using Scalar = double;
  using Values = std::array<double, C>;
  using Key = std::size_t;
  using Bundle = std::vector<Values>;

  explicit NodeSpace(unsigned nodes) : grid_(nodes) {}

  Bundle zero() const { return Bundle(grid_.size(), Values{}); }
  Bundle at_half(const Values& v) const {
    Bundle b = zero();
    b[0] = v;
    return b;
  }
  void prepare(std::uint64_t n) { grid_.transfer(1.0 - 1.0 / static_cast<double>(n), L_); }

  template <class F>
  void for_each(const Bundle& b, F&& f) const {
    for (std::size_t r = 0; r < b.size(); ++r) f(r, grid_.x()[r], b[r]);
  }
  void accumulate(Bundle& b, Key k, const Values& v) const {
    for (std::size_t c = 0; c < C; ++c) b[k][c] += v[c];
  }
  // target += image of stage under y -> (1 - 1/n) y
  void push_into(Bundle& target, const Bundle& stage) const {
    const std::size_t P = grid_.size();
    for (std::size_t r = 0; r < P; ++r) {
      bool any = false;
      for (double v : stage[r]) any |= v != 0.0;
      if (!any) continue;
      const double* row = &L_[r * P];
      for (std::size_t i = 0; i < P; ++i) {
        const double l = row[i];
        if (l == 0.0) continue;
        for (std::size_t c = 0; c < C; ++c) target[i][c] += l * stage[r][c];
      }
    }
  }
  template <class F>
  double integrate(const Bundle& b, std::size_t comp, F&& f) const {
    NeumaierSum s;
    for (std::size_t r = 0; r < b.size(); ++r) s.add(b[r][comp] * f(grid_.x()[r]));
    return s.value();
  }
  static double ratio(std::int64_t a, std::int64_t b) { return Numeric<double>::from_ratio(a, b); }
  static void check_size(std::size_t) {}

 private:
  ChebyshevGrid grid_;
  std::vector<double> L_;
};

template <std::size_t C>
class AtomSpace {
 public:
  using Scalar = Rational;
  using Values = std::array<Rational, C>;
  using Key = Rational;
  using Bundle = std::map<Rational, Values>;

  explicit AtomSpace(std::size_t cap) : cap_(cap) {}

  Bundle zero() const { return {}; }
  Bundle at_half(const Values& v) const { return Bundle{{Rational(1, 2), v}}; }
  void prepare(std::uint64_t n) { q_ = survival_factor(n); }

  template <class F>
  void for_each(const Bundle& b, F&& f) const {
    for (const auto& [y, v] : b) f(y, y, v);
  }
  void accumulate(Bundle& b, const Key& k, const Values& v) const {
    auto [it, fresh] = b.try_emplace(k, v);
    if (!fresh)
      for (std::size_t c = 0; c < C; ++c) it->second[c] += v[c];
    if (b.size() > cap_) throw ResourceLimitError("exact ladder: too many distinct weights");
  }
  void push_into(Bundle& target, const Bundle& stage) const {
    for (const auto& [y, v] : stage) accumulate(target, Rational(y * q_), v);
  }
  template <class F>
  Rational integrate(const Bundle& b, std::size_t comp, F&& f) const {
    Rational s(0);
    for (const auto& [y, v] : b) s += v[comp] * f(y);
    return s;
  }
  static Rational ratio(std::int64_t a, std::int64_t b) { return make_rational(a, b); }

 private:
  std::size_t cap_;
  Rational q_;
};

template <class Scalar>
struct LadderPoint {
  std::uint64_t n = 0;
  Scalar first{};   // E(S(n))
  Scalar second{};  // E(S(n)^2)
  Scalar mixed{};   // E(y_{n+1}^i S(n)) where requested
};

// Counts of starts m <= n satisfying a membership constraint.  The state is
// the membership of the last `span` positions; each state carries measures
// for 1, T and T^2.
template <class Space>
class PatternLadder {
 public:
  using Scalar = typename Space::Scalar;
  using Values = typename Space::Values;
  using Bundle = typename Space::Bundle;

  PatternLadder(Space space, Constraint c) : space_(std::move(space)), c_(std::move(c)) {
    if (c_.span == 0 || c_.span > 12) throw std::invalid_argument("PatternLadder: span must be in [1, 12]");
    const std::uint32_t k = c_.span;
    for (auto r : c_.required) required_ |= 1u << (k - r);
    for (auto f : c_.forbidden) forbidden_ |= 1u << (k - f);
  }

  // Calls emit(point) for n = 2 .. N.  mixed_power i > 0 also yields
  // E(y_{n+1}^i T(n)).
  template <class Emit>
  void run(std::uint64_t N, unsigned mixed_power, Emit&& emit) {
    const std::uint32_t k = c_.span;
    const std::size_t states = std::size_t{1} << k;
    const std::uint32_t mask = static_cast<std::uint32_t>(states - 1);
    std::vector<Bundle> cur(states, space_.zero()), stay(states), stage(states);
    // position 2 is always a member and y_3 = 1/2
    cur[1] = space_.at_half(Values{Scalar(1), Scalar(0), Scalar(0)});
    for (std::uint64_t n = 3; n <= N + k; ++n) {
      space_.prepare(n);
      for (std::size_t s = 0; s < states; ++s) {
        stay[s] = space_.zero();
        stage[s] = space_.zero();
      }
      for (std::size_t w = 0; w < states; ++w) {
        space_.for_each(cur[w], [&](const auto& key, const Scalar& y, const Values& v) {
          for (std::uint32_t bit = 0; bit < 2; ++bit) {
            const std::uint32_t full = static_cast<std::uint32_t>(w << 1 | bit);
            const Scalar p = bit ? y : Scalar(1) - y;
            Values out{v[0] * p, v[1] * p, v[2] * p};
            if ((full & (required_ | forbidden_)) == required_) {
              out[2] += out[1] + out[1] + out[0];
              out[1] += out[0];
            }
            space_.accumulate(bit ? stage[full & mask] : stay[full & mask], key, out);
          }
        });
      }
      for (std::size_t s = 0; s < states; ++s) {
        space_.push_into(stay[s], stage[s]);
        cur[s] = std::move(stay[s]);
      }
      // starts up to n - k are now settled
      if (n >= k + 2) emit(point(cur, n, mixed_power));
    }
  }

 private:

  LadderPoint<Scalar> point(const std::vector<Bundle>& cur, std::uint64_t n, unsigned mixed_power) const {
    const std::uint32_t k = c_.span;
    LadderPoint<Scalar> pt;
    pt.n = n - k;
    std::vector<Scalar> first, second, mixed;
    for (std::size_t w = 0; w < cur.size(); ++w) {
      first.push_back(space_.integrate(cur[w], 1, [](const Scalar&) { return Scalar(1); }));
      second.push_back(space_.integrate(cur[w], 2, [](const Scalar&) { return Scalar(1); }));
      if (mixed_power) {
        // y_{m+1} = y_{n+1} / rho with rho over members among m+1 .. n
        Scalar rho(1);
        for (std::uint32_t j = 0; j < k; ++j)
          if (w >> j & 1u)
            rho *= Space::ratio(static_cast<std::int64_t>(n - j) - 1, static_cast<std::int64_t>(n - j));
        Scalar rho_pow(1);
        for (unsigned e = 0; e < mixed_power; ++e) rho_pow *= rho;
        mixed.push_back(space_.integrate(cur[w], 1, [&](const Scalar& y) {
          Scalar yp(1);
          for (unsigned e = 0; e < mixed_power; ++e) yp *= y;
          return yp;
        }) / rho_pow);
      }
    }
    pt.first = total(first);
    pt.second = total(second);
    if (mixed_power) pt.mixed = total(mixed);
    return pt;
  }

  static Scalar total(const std::vector<Scalar>& xs) {
    if constexpr (std::is_same_v<Scalar, double>) {
      NeumaierSum s;
      for (double x : xs) s.add(x);
      return s.value();
    } else {
      Scalar s(0);
      for (const auto& x : xs) s += x;
      return s;
    }
  }

  Space space_;
  Constraint c_;
  std::uint32_t required_ = 0;
  std::uint32_t forbidden_ = 0;
};

// Weighted twin counter.  After deciding n the state records whether n - 1
// and n are members; their twin events are still open and carry pending
// weights a = w_{n-1}, b = w_n.  Components per state:
//   0: 1   1: V   2: a   3: b   4: V^2   5: V a   6: V b
//   7: a^2 y_{n-1}   8: a b   9: b^2 y_n
// where V is the settled sum.  The squared pending weights are stored times
// their start weight: w^2 alone behaves like 1/y^2 near y = 0, but y w^2 = g^2/y
// with g = 1/(1 - c y), and multiplying by one further factor y_start keeps
// every component smooth in the current y.
template <class Space>
class HatLadder {
 public:
  using Scalar = typename Space::Scalar;
  using Values = typename Space::Values;
  using Bundle = typename Space::Bundle;

  explicit HatLadder(Space space) : space_(std::move(space)) {}

  template <class Emit>
  void run(std::uint64_t N, Emit&& emit) {
    std::vector<Bundle> cur(4, space_.zero()), stay(4), stage(4);
    {
      // after position 2: y_3 = 1/2, pending weight w_2 = 1 / (1 - c_2) = 6/5
      const Scalar w2 = Scalar(1) / (Scalar(1) - hat_coefficient<Scalar>(2));
      Values v{};
      v[0] = Scalar(1);
      v[3] = w2;
      v[9] = w2 * w2;
      cur[1] = space_.at_half(v);
    }
    for (std::uint64_t n = 3; n <= N + 2; ++n) {
      space_.prepare(n);
      const Scalar c = hat_coefficient<Scalar>(n);
      const Scalar f_prev2 = Space::ratio(static_cast<std::int64_t>(n) - 3, static_cast<std::int64_t>(n) - 2);
      const Scalar f_prev1 = Space::ratio(static_cast<std::int64_t>(n) - 2, static_cast<std::int64_t>(n) - 1);
      for (std::size_t s = 0; s < 4; ++s) {
        stay[s] = space_.zero();
        stage[s] = space_.zero();
      }
      for (std::size_t w = 0; w < 4; ++w) {
        // y_n = y_{n-2} * rho when n - 2 is a member
        const Scalar rho = (w & 1u) ? f_prev2 * f_prev1 : f_prev2;
        space_.for_each(cur[w], [&](const auto& key, const Scalar& y, const Values& v) {
          const Scalar out_p = Scalar(1) - y;
          Values ex{};
          ex[0] = v[0] * out_p;
          ex[1] = v[1] * out_p;
          ex[2] = v[3] * out_p;
          ex[4] = v[4] * out_p;
          ex[5] = v[6] * out_p;
          ex[7] = v[9] * out_p;
          space_.accumulate(stay[(w << 1) & 3u], key, ex);

          const Scalar g = Scalar(1) / (Scalar(1) - c * y);
          const Scalar Vn = v[1] + v[2];
          Values in{};
          in[0] = y * v[0];
          in[1] = y * Vn;
          in[2] = y * v[3];
          in[3] = g * v[0];
          in[4] = y * (v[4] + v[5] + v[5]) + rho * v[7];
          in[5] = y * (v[6] + v[8]);
          in[6] = g * Vn;
          in[7] = y * v[9];
          in[8] = g * v[3];
          in[9] = g * g * v[0];
          space_.accumulate(stage[((w << 1) | 1u) & 3u], key, in);
        });
      }
      for (std::size_t s = 0; s < 4; ++s) {
        space_.push_into(stay[s], stage[s]);
        cur[s] = std::move(stay[s]);
      }
      LadderPoint<Scalar> pt;
      pt.n = n - 2;
      pt.first = Scalar(0);
      pt.second = Scalar(0);
      for (std::size_t s = 0; s < 4; ++s) {
        pt.first += space_.integrate(cur[s], 1, [](const Scalar&) { return Scalar(1); });
        pt.second += space_.integrate(cur[s], 4, [](const Scalar&) { return Scalar(1); });
      }
      if (pt.n >= 2) emit(pt);
    }
  }

 private:
  Space space_;
};

namespace detail {

inline void check_exact_cap(std::uint64_t N, const LadderOptions& opt, const char* op) {
  if (N > opt.exact_cap)
    throw ResourceLimitError(std::string(op) + ": exact mode capped at N = " + std::to_string(opt.exact_cap));
}

template <class T, class Emit>
void run_pattern_ladder(std::uint64_t N, const Constraint& c, unsigned mixed_power, const LadderOptions& opt,
                        Emit&& emit) {
  if (N < 2) throw std::invalid_argument("ladder: N must be >= 2");
  if constexpr (std::is_same_v<T, Rational>) {
    check_exact_cap(N, opt, "pattern ladder");
    PatternLadder<AtomSpace<3>>(AtomSpace<3>(opt.atom_cap), c).run(N, mixed_power, emit);
  } else {
    PatternLadder<NodeSpace<3>>(NodeSpace<3>(opt.nodes), c).run(N, mixed_power, emit);
  }
}

template <class T, class Emit>
void run_hat_ladder(std::uint64_t N, const LadderOptions& opt, Emit&& emit) {
  if (N < 2) throw std::invalid_argument("ladder: N must be >= 2");
  if constexpr (std::is_same_v<T, Rational>) {
    check_exact_cap(N, opt, "weighted ladder");
    HatLadder<AtomSpace<10>>(AtomSpace<10>(opt.atom_cap)).run(N, emit);
  } else {
    HatLadder<NodeSpace<10>>(NodeSpace<10>(opt.nodes)).run(N, emit);
  }
}

}  // namespace detail

// Per-n series of E(T(n)), E(T(n)^2) and E(y_{n+1}^i T(n)) for n = 2 .. N.
template <class T = double>
std::vector<LadderPoint<T>> constraint_ladder_series(std::uint64_t N, const Constraint& c,
                                                     unsigned mixed_power = 0, const LadderOptions& opt = {}) {
  std::vector<LadderPoint<T>> out;
  detail::run_pattern_ladder<T>(N, c, mixed_power, opt, [&](const LadderPoint<T>& p) { out.push_back(p); });
  return out;
}

template <class T = double>
std::vector<LadderPoint<T>> pattern_ladder_series(std::uint64_t N, const Pattern& p, unsigned mixed_power = 0,
                                                  const LadderOptions& opt = {}) {
  return constraint_ladder_series<T>(N, Constraint::of(p), mixed_power, opt);
}

template <class T = double>
std::vector<LadderPoint<T>> hat_ladder_series(std::uint64_t N, const LadderOptions& opt = {}) {
  std::vector<LadderPoint<T>> out;
  detail::run_hat_ladder<T>(N, opt, [&](const LadderPoint<T>& p) { out.push_back(p); });
  return out;
}

template <class T = double>
T expected_T_second(std::uint64_t N, const Pattern& p, const LadderOptions& opt = {}) {
  T v{};
  detail::run_pattern_ladder<T>(N, Constraint::of(p), 0, opt, [&](const LadderPoint<T>& pt) {
    if (pt.n == N) v = pt.second;
  });
  return v;
}

template <class T = double>
T expected_That_second(std::uint64_t N, const LadderOptions& opt = {}) {
  T v{};
  detail::run_hat_ladder<T>(N, opt, [&](const LadderPoint<T>& pt) {
    if (pt.n == N) v = pt.second;
  });
  return v;
}

}  // namespace hawkins
