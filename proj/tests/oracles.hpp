#pragma once

// Brute-force reference computations for the test suites. Nothing here calls
// the code under test beyond the Scalar type itself.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <tuple>
#include <vector>

#include "capspec/rational.hpp"

namespace oracle {

using capspec::Scalar;
using capspec::RationalVector;

/// min{ sum k_i a_i > 0 : |k_i| <= bound } by full enumeration. The areas are
/// scaled to integers by the product of their denominators first.
inline std::optional<Scalar> min_positive_combination(const RationalVector& a, int bound) {
  capspec::Integer scale = 1;
  for (const auto& x : a) scale *= capspec::denominator_of(x);
  std::vector<std::int64_t> w;
  for (const auto& x : a) w.push_back(capspec::numerator_of(x * scale).convert_to<std::int64_t>());
  std::int64_t best = 0;
  // Depth-first over coordinates with a running partial sum.
  auto rec = [&](auto&& self, std::size_t i, std::int64_t partial) -> void {
    if (i == w.size()) {
      if (partial > 0 && (best == 0 || partial < best)) best = partial;
      return;
    }
    for (int k = -bound; k <= bound; ++k) self(self, i + 1, partial + k * w[i]);
  };
  rec(rec, 0, 0);
  if (best == 0) return std::nullopt;
  return Scalar(capspec::Integer(best), scale);
}

/// Largest d with every a_i / d an integer, found by trial division of the
/// smallest scaled numerator over the common denominator.
inline Scalar common_divisor_by_trial(const RationalVector& a) {
  capspec::Integer den = 1;
  for (const auto& x : a) den *= capspec::denominator_of(x);
  std::vector<std::int64_t> w;
  for (const auto& x : a) w.push_back(capspec::numerator_of(x * den).convert_to<std::int64_t>());
  const std::int64_t lo = *std::min_element(w.begin(), w.end());
  for (std::int64_t d = lo; d >= 1; --d)
    if (lo % d == 0 && std::all_of(w.begin(), w.end(), [d](std::int64_t v) { return v % d == 0; }))
      return Scalar(capspec::Integer(d), den);
  return 0;
}

struct Orbit {
  Scalar action;
  int j;
  std::int64_t m;
};

/// Every m a_j <= cap, sorted by (action, j, m).
inline std::vector<Orbit> spectrum_up_to(const RationalVector& a, const Scalar& cap) {
  std::vector<Orbit> out;
  for (std::size_t j = 0; j < a.size(); ++j)
    for (std::int64_t m = 1; a[j] * m <= cap; ++m) out.push_back({a[j] * m, static_cast<int>(j + 1), m});
  std::sort(out.begin(), out.end(), [](const Orbit& l, const Orbit& r) {
    return std::tie(l.action, l.j, l.m) < std::tie(r.action, r.j, r.m);
  });
  return out;
}

/// The k smallest orbits (k >= 1) with enough slack to see ties at the end.
inline std::vector<Orbit> first_orbits(const RationalVector& a, std::int64_t k) {
  Scalar cap = *std::min_element(a.begin(), a.end()) * k;  // at least k orbits below
  auto all = spectrum_up_to(a, cap);
  all.resize(static_cast<std::size_t>(k));
  return all;
}

/// cz(gamma_j^m) straight from the definition, floors by repeated subtraction.
inline std::int64_t cz_formula(const RationalVector& a, int j, std::int64_t m) {
  const Scalar act = a[static_cast<std::size_t>(j - 1)] * m;
  std::int64_t sum = 0;
  for (const auto& ai : a) {
    Scalar r = act;
    while (r >= ai) {
      r -= ai;
      ++sum;
    }
  }
  return static_cast<std::int64_t>(a.size()) - 1 + 2 * sum;
}

/// True iff two of the first `k + 1` actions coincide.
inline bool has_tie_within(const RationalVector& a, std::int64_t k) {
  auto orbits = first_orbits(a, k + 1);
  for (std::size_t i = 1; i < orbits.size(); ++i)
    if (orbits[i].action == orbits[i - 1].action) return true;
  return false;
}

/// Random positive rational p/q with q <= max_den and value in (0, max_val].
inline Scalar random_rational(std::mt19937_64& gen, int max_den, int max_val) {
  std::uniform_int_distribution<int> den(1, max_den);
  int q = den(gen);
  std::uniform_int_distribution<int> num(1, q * max_val);
  return Scalar(num(gen), q);
}

/// Random areas with no tie among the first `horizon` actions.
inline RationalVector random_generic_areas(std::mt19937_64& gen, int n, int max_den,
                                           std::int64_t horizon) {
  while (true) {
    RationalVector a;
    for (int i = 0; i < n; ++i) a.push_back(random_rational(gen, max_den, 5));
    if (!has_tie_within(a, horizon)) return a;
  }
}

}  // namespace oracle
