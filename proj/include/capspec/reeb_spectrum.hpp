#pragma once

// Reeb orbits on the boundary of an ellipsoid E(a_1, ..., a_n).
//
// The simple orbits are the n coordinate circles; gamma_j^m is the m-fold cover
// of the j-th one, with action m a_j and
//   cz(gamma_j^m) = n - 1 + 2 * sum_i floor(m a_j / a_i).
// Rational areas are never rationally independent, so "generic" means: no two
// orbits share an action within the horizon a query needs. Every operation that
// selects a unique orbit fails with DegenerateSpectrum on a tie.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <vector>

#include "capspec/index_calculus.hpp"
#include "capspec/rational.hpp"

namespace capspec {

class EllipsoidSpec {
 public:
  explicit EllipsoidSpec(RationalVector a) : a_(std::move(a)) {
    if (a_.empty()) throw DomainError("ellipsoid: need at least one area");
    for (std::size_t i = 0; i < a_.size(); ++i)
      if (a_[i] <= 0)
        throw DomainError("ellipsoid.a[" + std::to_string(i) + "]: must be positive");
    order_.resize(a_.size());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [this](std::size_t l, std::size_t r) { return a_[l] < a_[r]; });
  }

  int dimension() const noexcept { return static_cast<int>(a_.size()); }
  /// Areas in the order given; orbit index j refers to this order (1-based).
  const RationalVector& areas() const noexcept { return a_; }
  const Scalar& area(int j) const { return a_.at(static_cast<std::size_t>(j - 1)); }
  /// Zero-based indices of areas() in ascending order of area.
  const std::vector<std::size_t>& ascending_order() const noexcept { return order_; }
  const Scalar& min_area() const { return a_[order_.front()]; }
  const Scalar& max_area() const { return a_[order_.back()]; }

 private:
  RationalVector a_;
  std::vector<std::size_t> order_;
};

struct ReebOrbit {
  int j = 1;
  std::int64_t m = 1;

  friend bool operator==(const ReebOrbit&, const ReebOrbit&) = default;
};

struct SpectrumEntry {
  ReebOrbit orbit;
  Scalar action;
  std::int64_t cz = 0;
  std::int64_t k = 0;  // 1-based position in action order
};

struct Spectrum {
  std::vector<SpectrumEntry> entries;
  bool degenerate = false;  // two listed orbits share an action
};

namespace detail {

inline void check_orbit(const EllipsoidSpec& e, const ReebOrbit& g) {
  if (g.j < 1 || g.j > e.dimension())
    throw DomainError("orbit index j=" + std::to_string(g.j) + " out of range");
  if (g.m < 1) throw DomainError("orbit multiplicity must be at least 1");
}

}  // namespace detail

inline Scalar action(const EllipsoidSpec& e, const ReebOrbit& g) {
  detail::check_orbit(e, g);
  return e.area(g.j) * g.m;
}

inline std::int64_t cz_index(const EllipsoidSpec& e, const ReebOrbit& g) {
  detail::check_orbit(e, g);
  const Scalar act = e.area(g.j) * g.m;
  std::int64_t sum = 0;
  for (const auto& ai : e.areas()) sum += floor_ratio(act, ai).convert_to<std::int64_t>();
  return e.dimension() - 1 + 2 * sum;
}

namespace detail {

/// k-way merge of the progressions {m a_j}, ties broken by j (then m, which is
/// implied). Stops when `stop(next_action, produced)` returns true. One extra
/// entry past the stop point is peeked to flag a tie across the boundary.
template <class Stop>
Spectrum merge_spectrum(const EllipsoidSpec& e, Stop stop, bool check_boundary_tie) {
  struct Head {
    Scalar action;
    int j;
    std::int64_t m;
  };
  auto later = [](const Head& l, const Head& r) {
    if (l.action != r.action) return l.action > r.action;
    return l.j > r.j;
  };
  std::priority_queue<Head, std::vector<Head>, decltype(later)> heap(later);
  for (int j = 1; j <= e.dimension(); ++j) heap.push({e.area(j), j, 1});

  Spectrum out;
  while (!stop(heap.top().action, out.entries.size())) {
    Head h = heap.top();
    heap.pop();
    if (!out.entries.empty() && out.entries.back().action == h.action) out.degenerate = true;
    ReebOrbit g{h.j, h.m};
    out.entries.push_back({g, h.action, cz_index(e, g),
                           static_cast<std::int64_t>(out.entries.size()) + 1});
    heap.push({h.action + e.area(h.j), h.j, h.m + 1});
  }
  if (check_boundary_tie && !out.entries.empty() && heap.top().action == out.entries.back().action)
    out.degenerate = true;
  return out;
}

}  // namespace detail

/// All orbits with action <= cap, in (action, j, m) order.
inline Spectrum enumerate_spectrum(const EllipsoidSpec& e, const Scalar& cap) {
  if (cap <= 0) throw DomainError("spectrum: action cap must be positive");
  return detail::merge_spectrum(
      e, [&](const Scalar& next, std::size_t) { return next > cap; }, false);
}

/// The first `count` orbits in (action, j, m) order. Flagged degenerate also
/// when the last listed orbit ties with the first unlisted one.
inline Spectrum enumerate_spectrum(const EllipsoidSpec& e, std::int64_t count) {
  if (count < 1) throw DomainError("spectrum: count must be at least 1");
  return detail::merge_spectrum(
      e, [&](const Scalar&, std::size_t produced) {
        return static_cast<std::int64_t>(produced) >= count;
      },
      true);
}

/// Number of orbits with action <= t: sum_j floor(t / a_j).
inline Integer count_orbits_up_to(const EllipsoidSpec& e, const Scalar& t) {
  Integer total = 0;
  for (const auto& a : e.areas()) total += floor_ratio(t, a);
  return total;
}

/// Throws DegenerateSpectrum unless the first k actions (and the boundary to
/// the (k+1)-th) are free of ties.
inline void require_generic_through(const EllipsoidSpec& e, std::int64_t k) {
  if (enumerate_spectrum(e, k).degenerate)
    throw DegenerateSpectrum("degenerate spectrum: perturb a");
}

/// The unique orbit with cz = n - 1 + 2k.
inline ReebOrbit orbit_of_degree(const EllipsoidSpec& e, std::int64_t k) {
  if (k < 1) throw DomainError("orbit_of_degree: k must be at least 1");
  require_generic_through(e, k);
  const std::int64_t target = e.dimension() - 1 + 2 * k;
  // cz(gamma_j^m) >= n - 1 + 2m, so m <= k bounds the search; every such orbit
  // has action <= k max(a) <= (k + n) max(a).
  std::vector<ReebOrbit> hits;
  for (int j = 1; j <= e.dimension(); ++j) {
    for (std::int64_t m = 1; m <= k; ++m) {
      std::int64_t cz = cz_index(e, {j, m});
      if (cz == target) hits.push_back({j, m});
      if (cz >= target) break;
    }
  }
  if (hits.size() != 1)
    throw std::logic_error("orbit_of_degree: " + std::to_string(hits.size()) +
                           " orbits of degree " + std::to_string(target) + " on a generic spectrum");
  return hits.front();
}

/// Rank of linearized contact homology in degree d: every orbit is good and the
/// differential vanishes, so this is the number of orbits with cz = d.
inline std::int64_t lch_rank(const EllipsoidSpec& e, std::int64_t degree) {
  const std::int64_t shifted = degree - (e.dimension() - 1);
  if (shifted < 2 || shifted % 2 != 0) return 0;
  const std::int64_t k = shifted / 2;
  require_generic_through(e, k);
  std::int64_t rank = 0;
  for (int j = 1; j <= e.dimension(); ++j) {
    for (std::int64_t m = 1; m <= k; ++m) {
      std::int64_t cz = cz_index(e, {j, m});
      if (cz == degree) ++rank;
      if (cz >= degree) break;
    }
  }
  return rank;
}

/// Normal Conley-Zehnder index of gamma_1^m in E(a_1, ..., a_l) seen inside
/// E(a_1, ..., a_l, a_next): the single block S = (2 pi / a_next) Id over
/// time m a_1. Equals 1 whenever m a_1 < a_next.
inline std::int64_t normal_cz(const EllipsoidSpec& sub, const Scalar& a_next, const ReebOrbit& g) {
  detail::check_orbit(sub, g);
  if (g.j != 1) throw DomainError("normal_cz: orbit must be a cover of gamma_1");
  const Scalar duration = sub.area(1) * g.m;
  if (!(duration < a_next)) throw DomainError("hypothesis m a_1 < a_{l+1} fails");
  return cz_exp_block(BlockPath::from_area(a_next, duration));
}

/// cz(gamma_j^m) assembled from index axioms: one rotation block per transverse
/// direction i != j (ratio m a_j / a_i) summed, then shifted by the Maslov index
/// m of the rotation loop along the orbit direction.
inline IndexDatum cz_by_blocks(const EllipsoidSpec& e, const ReebOrbit& g) {
  detail::check_orbit(e, g);
  const Scalar duration = e.area(g.j) * g.m;
  std::vector<IndexDatum> blocks;
  for (int i = 1; i <= e.dimension(); ++i) {
    if (i == g.j) continue;
    if (is_integer(duration / e.area(i)))
      throw DegenerateSpectrum("degenerate spectrum: gamma_" + std::to_string(g.j) + "^" +
                               std::to_string(g.m) + " is resonant with direction " +
                               std::to_string(i));
    blocks.push_back(cz_block_datum(BlockPath::from_area(e.area(i), duration)));
  }
  IndexDatum transverse = cz_direct_sum(blocks);
  return cz_loop_shift(transverse, maslov_rotation_loop(g.m));
}

}  // namespace capspec
