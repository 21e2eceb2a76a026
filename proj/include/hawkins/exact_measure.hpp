#pragma once

// Exact measure on elementary sets {a_1, ..., a_k; n}, full enumeration at
// small cutoffs, and the closed-form conditional probabilities.

#include "hawkins/csv.hpp"
#include "hawkins/pattern.hpp"
#include "hawkins/polynomial.hpp"
#include "hawkins/rational.hpp"

#include <cstdint>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hawkins {

inline constexpr std::uint64_t kDefaultEnumerationCap = 18;

// All sequences whose members below `cutoff` are exactly `elements`.
struct ElementarySet {
  std::vector<std::uint64_t> elements;
  std::uint64_t cutoff = 2;

  ElementarySet() = default;
  ElementarySet(std::vector<std::uint64_t> elems, std::uint64_t n) : elements(std::move(elems)), cutoff(n) {
    validate();
  }

  void validate() const {
    if (cutoff < 2) throw std::invalid_argument("ElementarySet: cutoff must be >= 2");
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (elements[i] < 2) throw std::invalid_argument("ElementarySet: elements must be >= 2");
      if (i && elements[i] <= elements[i - 1])
        throw std::invalid_argument("ElementarySet: elements must be strictly increasing");
    }
    if (!elements.empty() && elements.back() >= cutoff)
      throw std::invalid_argument("ElementarySet: cutoff must exceed every element");
  }

  // "2,3;5", ".;2" or ";2"
  static ElementarySet parse(const std::string& text) {
    const auto semi = text.find(';');
    if (semi == std::string::npos || text.find(';', semi + 1) != std::string::npos)
      throw std::invalid_argument("ElementarySet: expected 'a,b,...;n', got '" + text + "'");
    std::string head = text.substr(0, semi), tail = text.substr(semi + 1);
    auto strip = [](std::string s) {
      s.erase(0, s.find_first_not_of(" {"));
      s.erase(s.find_last_not_of(" }") + 1);
      return s;
    };
    head = strip(head);
    tail = strip(tail);
    auto number = [&](const std::string& s) -> std::uint64_t {
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 18)
        throw std::invalid_argument("ElementarySet: bad number '" + s + "' in '" + text + "'");
      return std::stoull(s);
    };
    std::vector<std::uint64_t> elems;
    if (!head.empty() && head != ".") {
      std::stringstream ss(head);
      std::string item;
      while (std::getline(ss, item, ',')) elems.push_back(number(strip(item)));
    }
    return ElementarySet(std::move(elems), number(tail));
  }

  std::string str() const {
    std::string s = "{";
    if (elements.empty()) s += '.';
    for (std::size_t i = 0; i < elements.size(); ++i) s += (i ? "," : "") + std::to_string(elements[i]);
    return s + ";" + std::to_string(cutoff) + "}";
  }
};

// Walks the defining recursion upward from {.;2}: deciding j multiplies by
// y (j kept) or 1 - y (j dropped), y being the product over kept elements.
inline Rational mu(const ElementarySet& e) {
  e.validate();
  Rational m(1), y(1);
  std::size_t next = 0;
  for (std::uint64_t j = 2; j < e.cutoff; ++j) {
    if (next < e.elements.size() && e.elements[next] == j) {
      m *= y;
      y *= survival_factor(j);
      ++next;
    } else {
      m *= Rational(1) - y;
    }
    if (m == 0) break;
  }
  return m;
}

// Every elementary set at one cutoff.  Bit j - 2 of an index marks element j.
class MeasureTable {
 public:
  std::uint64_t cutoff() const { return cutoff_; }
  std::size_t size() const { return mu_.size(); }
  const Rational& measure(std::size_t mask) const { return mu_[mask]; }
  // y_n for the history encoded by mask
  const Rational& weight(std::size_t mask) const { return y_[mask]; }

  std::vector<std::uint64_t> elements(std::size_t mask) const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t j = 2; j < cutoff_; ++j)
      if (mask >> (j - 2) & 1u) out.push_back(j);
    return out;
  }

  Rational total() const {
    Rational s(0);
    for (const auto& m : mu_) s += m;
    return s;
  }

  // sum over sets of mu * f(mask, y_n)
  Rational expectation(const std::function<Rational(std::size_t, const Rational&)>& f) const {
    Rational s(0);
    for (std::size_t i = 0; i < mu_.size(); ++i)
      if (mu_[i] != 0) s += mu_[i] * f(i, y_[i]);
    return s;
  }

  void write_csv(std::ostream& os) const {
    write_csv_row(os, {"subset", "numerator", "denominator"});
    for (std::size_t i = 0; i < mu_.size(); ++i) {
      std::string subset;
      for (std::uint64_t e : elements(i)) subset += (subset.empty() ? "" : ",") + std::to_string(e);
      write_csv_row(os, {subset, mu_[i].get_num().get_str(), mu_[i].get_den().get_str()});
    }
  }

  static std::size_t estimated_bytes(std::uint64_t n) {
    return (std::size_t{1} << (n - 2)) * 2 * 64;
  }

 private:
  friend MeasureTable enumerate_level(std::uint64_t, std::uint64_t);
  std::uint64_t cutoff_ = 2;
  std::vector<Rational> mu_;
  std::vector<Rational> y_;
};

inline MeasureTable enumerate_level(std::uint64_t n, std::uint64_t cap = kDefaultEnumerationCap) {
  if (n < 2) throw std::invalid_argument("enumerate_level: n must be >= 2");
  if (n > cap)
    throw ResourceLimitError("enumerate_level: n = " + std::to_string(n) + " exceeds cap " +
                             std::to_string(cap));
  if (n > 40) throw ResourceLimitError("enumerate_level: n too large to index");
  MeasureTable t;
  t.cutoff_ = 2;
  t.mu_ = {Rational(1)};
  t.y_ = {Rational(1)};
  for (std::uint64_t j = 2; j < n; ++j) {
    const std::size_t half = t.mu_.size();
    const Rational f = survival_factor(j);
    t.mu_.resize(2 * half);
    t.y_.resize(2 * half);
    for (std::size_t i = 0; i < half; ++i) {
      t.mu_[i + half] = t.mu_[i] * t.y_[i];
      t.y_[i + half] = t.y_[i] * f;
      t.mu_[i] *= Rational(1) - t.y_[i];
    }
    t.cutoff_ = j + 1;
  }
  if (t.total() != 1) throw std::logic_error("enumerate_level: measure does not sum to 1");
  return t;
}

// P(required subset of alpha, forbidden disjoint from alpha), sets within [2, n).
inline Rational membership_prob(std::uint64_t n, const std::vector<std::uint64_t>& required,
                                const std::vector<std::uint64_t>& forbidden,
                                std::uint64_t cap = kDefaultEnumerationCap) {
  std::size_t req = 0, forb = 0;
  for (std::uint64_t r : required) {
    if (r < 2 || r >= n) throw std::invalid_argument("membership_prob: required element outside [2, n)");
    req |= std::size_t{1} << (r - 2);
  }
  for (std::uint64_t f : forbidden) {
    if (f < 2 || f >= n) throw std::invalid_argument("membership_prob: forbidden element outside [2, n)");
    forb |= std::size_t{1} << (f - 2);
  }
  if (req & forb) throw std::invalid_argument("membership_prob: required and forbidden overlap");
  const MeasureTable t = enumerate_level(n, cap);
  Rational s(0);
  for (std::size_t i = 0; i < t.size(); ++i)
    if ((i & req) == req && (i & forb) == 0) s += t.measure(i);
  return s;
}

// E(y_n^k) by enumeration.
inline Rational exact_moment(std::uint64_t n, unsigned k, std::uint64_t cap = kDefaultEnumerationCap) {
  const MeasureTable t = enumerate_level(n, cap);
  return t.expectation([k](std::size_t, const Rational& y) { return pow(y, k); });
}

namespace detail {

template <class T>
void check_weight(const T& y, const char* op) {
  if (!(y > T(0)) || y > T(1)) throw std::invalid_argument(std::string(op) + ": y must lie in (0, 1]");
}

}  // namespace detail

// P(m, m + 2 in alpha | y_m = y)
template <class T>
T twin_conditional_prob(const T& y, std::uint64_t m) {
  if (m < 2) throw std::invalid_argument("twin_conditional_prob: m must be >= 2");
  detail::check_weight(y, "twin_conditional_prob");
  const T q = one_minus_inverse<T>(m);
  const T c = Numeric<T>::from_ratio(1, static_cast<std::int64_t>(m + 1)) * q;
  return q * (y * y - c * y * y * y);
}

// The chain-rule product for P(m + 1 starts pattern p | y_{m+1} = y), as a
// polynomial in y.
template <class T>
Polynomial<T> pattern_polynomial(std::uint64_t m, const Pattern& p) {
  if (m < 1) throw std::invalid_argument("pattern_polynomial: m must be >= 1");
  const auto& i = p.offsets();
  const std::size_t l = p.interior();
  auto factor = [&](std::size_t j) { return one_minus_inverse<T>(m + 1 + i[j]); };
  std::vector<T> mono(l + 3, T(0));
  mono[l + 2] = T(1);
  Polynomial<T> out(mono);
  for (std::size_t j = 0; j <= l; ++j) {
    T f(1);
    for (std::size_t e = 0; e < l + 1 - j; ++e) f *= factor(j);
    out = out * Polynomial<T>(f);
  }
  for (std::size_t j = 0; j <= l; ++j) {
    T rho(1);
    for (std::size_t h = 0; h <= l - j; ++h) rho *= factor(h);
    const Polynomial<T> base(std::vector<T>{T(1), T(0) - rho});
    out = out * pow(base, static_cast<unsigned>(i[l + 1 - j] - i[l - j] - 1));
  }
  return out;
}

template <class T>
T pattern_conditional_prob(const T& y, std::uint64_t m, const Pattern& p) {
  detail::check_weight(y, "pattern_conditional_prob");
  return pattern_polynomial<T>(m, p)(y);
}

namespace detail {

// Sum over all membership outcomes of start .. start + span that satisfy c
// of the sequential inclusion probabilities, starting from weight `y`.
// V is either a number or a polynomial in y.
template <class T, class V>
V enumerate_event(const V& y, std::uint64_t start, const Constraint& c) {
  std::vector<int> fixed(c.span + 1, -1);
  for (auto r : c.required) fixed[r] = 1;
  for (auto f : c.forbidden) fixed[f] = 0;
  V total(T(0));
  std::function<void(std::uint32_t, V, T)> walk = [&](std::uint32_t i, V prob, T rho) {
    if (i > c.span) {
      total += prob;
      return;
    }
    const V inc = y * V(rho);
    if (fixed[i] != 0) walk(i + 1, prob * inc, rho * one_minus_inverse<T>(start + i));
    if (fixed[i] != 1) walk(i + 1, prob * (V(T(1)) - inc), rho);
  };
  walk(0, V(T(1)), T(1));
  return total;
}

}  // namespace detail

// P(constraint holds at start | y_start = y) by brute-force enumeration.
template <class T>
T event_prob_bruteforce(const T& y, std::uint64_t start, const Constraint& c) {
  if (start < 2) throw std::invalid_argument("event_prob_bruteforce: start must be >= 2");
  detail::check_weight(y, "event_prob_bruteforce");
  return detail::enumerate_event<T, T>(y, start, c);
}

// Same event as a polynomial in y_start.
template <class T>
Polynomial<T> event_polynomial(std::uint64_t start, const Constraint& c) {
  if (start < 2) throw std::invalid_argument("event_polynomial: start must be >= 2");
  return detail::enumerate_event<T, Polynomial<T>>(Polynomial<T>::x(), start, c);
}

// Brute-force counterpart of pattern_conditional_prob: pattern starts at m + 1.
template <class T>
T pattern_prob_bruteforce(const T& y, std::uint64_t m, const Pattern& p) {
  if (m < 1) throw std::invalid_argument("pattern_prob_bruteforce: m must be >= 1");
  return event_prob_bruteforce<T>(y, m + 1, Constraint::of(p));
}

}  // namespace hawkins
