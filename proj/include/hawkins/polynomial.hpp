#pragma once

// Dense univariate polynomials over double or Rational.

#include "hawkins/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

namespace hawkins {

template <class T>
class Polynomial {
 public:
  Polynomial() : c_{T(0)} {}
  Polynomial(T constant) : c_{std::move(constant)} {}  // NOLINT: implicit by design
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(T(0));
    trim();
  }

  static Polynomial x() { return Polynomial(std::vector<T>{T(0), T(1)}); }

  std::size_t degree() const { return c_.size() - 1; }
  const std::vector<T>& coeffs() const { return c_; }
  const T& operator[](std::size_t i) const { return c_[i]; }

  T operator()(const T& y) const {
    T acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * y + c_[i];
    return acc;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::vector<T> out(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(out));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (c_.size() > 1 && c_.back() == T(0)) c_.pop_back();
  }
  std::vector<T> c_;
};

template <class T>
Polynomial<T> pow(const Polynomial<T>& p, unsigned e) {
  Polynomial<T> r(T(1));
  for (unsigned i = 0; i < e; ++i) r = r * p;
  return r;
}

}  // namespace hawkins
