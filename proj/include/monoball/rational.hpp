#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cmath>
#include <cstdint>
#include <string>

namespace monoball {

using Rational = boost::rational<std::int64_t>;
using BigRational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

inline long double to_long_double(const Rational& q) {
  return static_cast<long double>(q.numerator()) / static_cast<long double>(q.denominator());
}

inline BigRational to_big(const Rational& q) {
  return BigRational(q.numerator()) / BigRational(q.denominator());
}

inline std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

// Reduce a phase into [0, 1).
inline Rational wrap_phase(Rational q) {
  const auto num = q.numerator();
  const auto den = q.denominator();
  auto r = num % den;
  if (r < 0) r += den;
  return Rational(r, den);
}

// ||exp(2 pi i q)|| = |Arg| / 2pi, i.e. distance from q to the nearest integer.
inline Rational circle_norm(const Rational& phase) {
  const Rational q = wrap_phase(phase);
  const Rational other = Rational(1) - q;
  return q < other ? q : other;
}

// Exact test of q <= r * sqrt(s) for q, r, s >= 0.
inline bool leq_times_sqrt(const Rational& q, const Rational& r, const Rational& s) {
  const BigRational bq = to_big(q), br = to_big(r);
  return bq * bq <= br * br * to_big(s);
}

}  // namespace monoball
