#pragma once

// Exact rational scalars and the floor/gcd kernels used by every other header.
//
// Scalar is boost's arbitrary-precision rational, which keeps itself in
// canonical form (positive denominator, coprime parts) after every operation.

#include <algorithm>
#include <cctype>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "capspec/errors.hpp"

namespace capspec {

using Integer = boost::multiprecision::cpp_int;
using Scalar = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Scalar>;

inline Integer numerator_of(const Scalar& x) { return boost::multiprecision::numerator(x); }
inline Integer denominator_of(const Scalar& x) { return boost::multiprecision::denominator(x); }

/// Largest integer not exceeding x.
inline Integer floor_of(const Scalar& x) {
  Integer num = numerator_of(x);
  Integer den = denominator_of(x);
  Integer q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) --q;
  return q;
}

inline Integer ceil_of(const Scalar& x) { return -floor_of(-x); }

inline bool is_integer(const Scalar& x) { return denominator_of(x) == 1; }

/// floor(p / q) for q > 0.
inline Integer floor_ratio(const Scalar& p, const Scalar& q) {
  if (q <= 0) throw DomainError("floor_ratio: divisor must be positive");
  return floor_of(p / q);
}

/// Integer square root, floor(sqrt(n)) for n >= 0.
inline Integer isqrt(const Integer& n) {
  if (n < 0) throw DomainError("isqrt: negative argument");
  return boost::multiprecision::sqrt(n);
}

/// floor(sqrt(x)) for rational x >= 0. Uses floor(sqrt(x)) == isqrt(floor(x)).
inline Integer floor_sqrt(const Scalar& x) { return isqrt(floor_of(x)); }

/// True iff x is the square of an integer.
inline bool is_integer_square(const Scalar& x) {
  if (x < 0 || !is_integer(x)) return false;
  Integer r = isqrt(numerator_of(x));
  return r * r == numerator_of(x);
}

inline std::string to_string(const Scalar& x) {
  if (is_integer(x)) return numerator_of(x).str();
  return numerator_of(x).str() + "/" + denominator_of(x).str();
}

inline double to_double(const Scalar& x) { return x.convert_to<double>(); }

namespace detail {

inline bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

inline Integer parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw DomainError("malformed rational literal '" + std::string(whole) + "'");
  Integer v{std::string(s)};
  return neg ? Integer(-v) : v;
}

}  // namespace detail

/// Parses "p/q", "p", or a decimal such as "-2.5" into an exact rational.
inline Scalar parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw DomainError("empty rational literal");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = detail::parse_integer(s.substr(0, slash), text);
    std::string_view den_text = s.substr(slash + 1);
    if (!detail::all_digits(den_text))
      throw DomainError("malformed rational literal '" + std::string(text) + "'");
    Integer den(std::string{den_text});
    if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    return Scalar(num, den);
  }

  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    bool neg = !int_part.empty() && int_part.front() == '-';
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+'))
      int_part.remove_prefix(1);
    if ((int_part.empty() && frac_part.empty()) ||
        (!int_part.empty() && !detail::all_digits(int_part)) ||
        (!frac_part.empty() && !detail::all_digits(frac_part)))
      throw DomainError("malformed rational literal '" + std::string(text) + "'");
    Integer whole = int_part.empty() ? Integer(0) : Integer(std::string(int_part));
    Integer frac = frac_part.empty() ? Integer(0) : Integer(std::string(frac_part));
    Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac_part.size()));
    Scalar v = Scalar(whole) + Scalar(frac, scale);
    return neg ? Scalar(-v) : v;
  }

  return Scalar(detail::parse_integer(s, text));
}

/// Smallest positive value of sum k_i a_i over integer vectors k.
///
/// Over a common denominator L the entries become integers N_i, and the
/// lattice they generate is gcd(N_i) * Z, so the minimum is gcd(N_i) / L.
inline Scalar min_positive_integer_combination(std::span<const Scalar> a) {
  if (a.empty()) throw DomainError("min_positive_integer_combination: empty vector");
  Integer common = 1;
  for (const auto& x : a) {
    if (x <= 0) throw DomainError("min_positive_integer_combination: entries must be positive");
    common = boost::multiprecision::lcm(common, denominator_of(x));
  }
  Integer g = 0;
  for (const auto& x : a) g = boost::multiprecision::gcd(g, numerator_of(x * common));
  return Scalar(g, common);
}

inline RationalVector scale(std::span<const Scalar> a, const Scalar& alpha) {
  if (alpha <= 0) throw DomainError("scale: factor must be positive");
  RationalVector out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(x * alpha);
  return out;
}

}  // namespace capspec
