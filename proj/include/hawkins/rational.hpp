#pragma once

// Exact rational arithmetic backed by GMP (gmpxx).

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hawkins {

using Rational = mpq_class;
using Integer = mpz_class;

// Thrown when an exact computation would exceed a configured size cap.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
  Rational r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}

// 1 - 1/j, the survival factor contributed by a member j.
inline Rational survival_factor(std::uint64_t j) {
  return make_rational(static_cast<std::int64_t>(j) - 1, static_cast<std::int64_t>(j));
}

inline Rational pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  mpz_pow_ui(result.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(result.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  return result;
}

inline std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double to_double(const Rational& r) { return r.get_d(); }
inline double to_double(double x) { return x; }

// Numeric traits shared by the templated exact/float code paths.
template <class T>
struct Numeric;

template <>
struct Numeric<double> {
  static double from_ratio(std::int64_t num, std::int64_t den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static double power(double base, unsigned e) {
    double r = 1.0;
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
  }
};

template <>
struct Numeric<Rational> {
  static Rational from_ratio(std::int64_t num, std::int64_t den) { return make_rational(num, den); }
  static Rational power(const Rational& base, unsigned e) { return pow(base, e); }
};

// 1 - 1/j in the requested arithmetic.
template <class T>
T one_minus_inverse(std::uint64_t j) {
  return Numeric<T>::from_ratio(static_cast<std::int64_t>(j) - 1, static_cast<std::int64_t>(j));
}

}  // namespace hawkins
