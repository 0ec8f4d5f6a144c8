#pragma once

// Capacity evaluation on toric domains and the Lagrangian-capacity inequality
// chain
//
//   delta <= c_P <= c_L <= gtilde_k / k <= g_k / k = cgh_k / k
//         <= cgh_k(N(delta)) / k = delta (k + n - 1) / k.
//
// Every value carries a status (theorem, bound, conditional, conjecture,
// recorded identity) and the label of the result it rests on. Nothing is
// reported as a theorem unless it is a closed form for that family.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "capspec/rational.hpp"
#include "capspec/reeb_spectrum.hpp"
#include "capspec/toric_domain.hpp"

namespace capspec {

enum class CapacityName { delta, c_vol, c_B, c_P, c_L, cgh, csh, gtilde1, g1, a_min };

inline std::string_view to_string(CapacityName n) {
  switch (n) {
    case CapacityName::delta: return "delta";
    case CapacityName::c_vol: return "c_vol";
    case CapacityName::c_B: return "c_B";
    case CapacityName::c_P: return "c_P";
    case CapacityName::c_L: return "c_L";
    case CapacityName::cgh: return "cgh_k";
    case CapacityName::csh: return "csh_k";
    case CapacityName::gtilde1: return "gtilde1_k";
    case CapacityName::g1: return "g1_k";
    case CapacityName::a_min: return "A_min";
  }
  return "?";
}

enum class Status {
  theorem,
  lower_bound,
  upper_bound,
  conjecture,
  conditional_on_assumption,
  recorded_identity
};

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::theorem: return "theorem";
    case Status::lower_bound: return "lower_bound";
    case Status::upper_bound: return "upper_bound";
    case Status::conjecture: return "conjecture";
    case Status::conditional_on_assumption: return "conditional_on_assumption";
    case Status::recorded_identity: return "recorded_identity";
  }
  return "?";
}

struct CapacityValue {
  CapacityName name = CapacityName::delta;
  std::optional<std::int64_t> k;
  std::optional<Scalar> value;         // exact value; empty only for approximate c_vol
  std::optional<Scalar> volume_ratio;  // c_vol: vol(X) / vol(B(1)), when exact
  std::optional<double> approx;        // c_vol: the n-th root
  Status status = Status::theorem;
  std::string anchor;
  std::string witness;

  const Scalar& exact() const {
    if (!value) throw std::logic_error(std::string(to_string(name)) + " has no exact value");
    return *value;
  }
};

namespace detail {

inline CapacityValue make_value(CapacityName name, std::optional<std::int64_t> k, Scalar v,
                                Status status, std::string anchor, std::string witness = {}) {
  CapacityValue c;
  c.name = name;
  c.k = k;
  c.value = std::move(v);
  c.status = status;
  c.anchor = std::move(anchor);
  c.witness = std::move(witness);
  return c;
}

/// All areas equal: the ellipsoid is a ball.
inline std::optional<Scalar> ball_area(const ToricRegion& region) {
  auto a = region.ellipsoid_areas();
  if (!a) return std::nullopt;
  for (const auto& x : *a)
    if (x != a->front()) return std::nullopt;
  return a->front();
}

/// Largest a with the cube P(a, ..., a) inside Omega. A half-space
/// <v, x> <= c contains [0, a]^n iff a * sum_j max(v_j, 0) <= c.
inline std::optional<Scalar> inscribed_cube(const ToricRegion& region) {
  if (auto* h = region.get_if<HalfSpaces>()) {
    std::optional<Scalar> best;
    for (std::size_t i = 0; i < h->normals.size(); ++i) {
      Scalar pos = 0;
      for (const auto& v : h->normals[i])
        if (v > 0) pos += v;
      if (pos == 0) continue;
      Scalar t = h->offsets[i] / pos;
      if (!best || t < *best) best = t;
    }
    return best;
  }
  // Named families are convex or concave, so P(delta) sits inside.
  return diagonal(region);
}

/// k-th smallest element (1-based) of the multiset {m a_j : m >= 1}.
inline Scalar kth_action(const RationalVector& areas, std::int64_t k) {
  return enumerate_spectrum(EllipsoidSpec(areas), k).entries.back().action;
}

/// Areas of an ellipsoid inscribed in a convex downward-closed region: the
/// axis intercepts. Unbounded axes are dropped (the E(a, infinity) limit).
inline RationalVector inscribed_ellipsoid_areas(const ToricRegion& region) {
  RationalVector areas;
  for (int j = 0; j < region.dimension(); ++j)
    if (auto t = region.axis_intercept(j)) areas.push_back(*t);
  return areas;
}

}  // namespace detail

/// (vol(X) / vol(B(1)))^{1/n}. The ratio is exact for named families; the root
/// is a double.
inline CapacityValue c_vol(const ToricRegion& region, std::uint64_t seed = kDefaultVolumeSeed) {
  const int n = region.dimension();
  VolumeResult vol = volume(region, seed);
  Scalar factorial = 1;
  for (int i = 2; i <= n; ++i) factorial *= i;
  CapacityValue c;
  c.name = CapacityName::c_vol;
  c.status = Status::theorem;
  c.anchor = "def:symplectic-capacity";
  if (vol.exact) {
    Scalar ratio = vol.value * factorial;
    c.approx = std::pow(to_double(ratio), 1.0 / n);
    if (n == 1) c.value = ratio;
    c.volume_ratio = std::move(ratio);
    c.witness = "exact volume ratio";
  } else {
    c.approx = std::pow(vol.estimate * to_double(factorial), 1.0 / n);
    c.witness = "monte carlo volume, seed " + std::to_string(vol.seed) + ", " +
                std::to_string(vol.samples) + " samples, half-width " +
                std::to_string(vol.half_width);
  }
  return c;
}

/// Largest a with Omega_B(a) inside Omega. Toric inclusions only witness
/// embeddings, so this is a lower bound for the Gromov width.
inline CapacityValue c_B_lower(const ToricRegion& region) {
  auto row = [](Scalar v, std::string w) {
    return detail::make_value(CapacityName::c_B, std::nullopt, std::move(v), Status::lower_bound,
                              "def:symplectic-capacity", std::move(w));
  };
  const int n = region.dimension();
  // N(delta) is not convex; the simplex fits iff its own diagonal a/n is <= delta.
  if (auto* nc = region.get_if<NCylinders>())
    return row(nc->delta * n, "diagonal of B(a) is a/n");
  if (region.is<HalfSpaces>() && !region.is_canonical_convex_hrep()) {
    // B(b) sits inside the cube P(b).
    auto cube = detail::inscribed_cube(region);
    if (!cube) throw Unsupported("unsupported region for c_B: no bounding constraint");
    return row(*cube, "ball inside inscribed cube");
  }
  std::optional<Scalar> best;
  for (int j = 0; j < n; ++j)
    if (auto t = region.axis_intercept(j); t && (!best || *t < *best)) best = t;
  if (!best) throw Unsupported("unsupported region for c_B: every axis is unbounded");
  return row(*best, "vertex inclusion a e_j in Omega");
}

/// c_P = delta for convex or concave toric domains. Otherwise the largest
/// inscribed cube, as a lower bound.
inline CapacityValue c_P(const ToricRegion& region) {
  if (is_convex_toric(region) || is_concave_toric(region))
    return detail::make_value(CapacityName::c_P, std::nullopt, diagonal(region), Status::theorem,
                              "lem:c-square-geq-delta", "P(delta) in X and equality for convex/concave");
  auto cube = detail::inscribed_cube(region);
  if (!cube) throw Unsupported("unsupported region for c_P: no bounding constraint");
  return detail::make_value(CapacityName::c_P, std::nullopt, *cube, Status::lower_bound,
                            "def:symplectic-capacity", "inscribed cube");
}

/// cgh_k where a closed form exists (theorem status); otherwise the lower end
/// of the monotonicity bracket, see cgh_upper_bound.
inline CapacityValue cgh(const ToricRegion& region, std::int64_t k) {
  if (k < 1) throw DomainError("cgh: k must be at least 1");
  const std::int64_t n = region.dimension();
  auto row = [k](Scalar v, Status s, std::string anchor, std::string w) {
    return detail::make_value(CapacityName::cgh, k, std::move(v), s, std::move(anchor), std::move(w));
  };
  if (auto* nc = region.get_if<NCylinders>())
    return row(nc->delta * (k + n - 1), Status::theorem,
               "lem:cgh-of-nondisjoint-union-of-cylinders", "delta (k + n - 1)");
  if (auto a = detail::ball_area(region)) {
    // {m a} with multiplicity n: the k-th element is a * ceil(k / n).
    Scalar v = *a * ((k + n - 1) / n);
    return row(std::move(v), Status::theorem, "thm:properties-of-gutt-hutchings-capacities",
               "counting identity sum_j floor(t / a_j)");
  }
  if (auto a = region.ellipsoid_areas()) {
    EllipsoidSpec e(*a);
    if (!enumerate_spectrum(e, k).degenerate)
      return row(action(e, orbit_of_degree(e, k)), Status::theorem,
                 "thm:properties-of-gutt-hutchings-capacities", "degree selection, oracle-verified");
    return row(detail::kth_action(*a, k), Status::theorem,
               "thm:properties-of-gutt-hutchings-capacities", "counting identity sum_j floor(t / a_j)");
  }
  if (auto* z = region.get_if<Cylinder>())
    return row(z->a * k, Status::theorem, "thm:properties-of-gutt-hutchings-capacities",
               "E(a, infinity, ...) limit");

  // Bracket by monotonicity.
  if (is_convex_toric(region)) {
    RationalVector areas = detail::inscribed_ellipsoid_areas(region);
    if (!areas.empty())
      return row(detail::kth_action(areas, k), Status::lower_bound,
                 "thm:properties-of-gutt-hutchings-capacities", "inscribed ellipsoid " +
                 ToricRegion::ellipsoid(areas).describe());
  }
  auto cube = detail::inscribed_cube(region);
  if (!cube) throw Unsupported("unsupported region for cgh: no bounding constraint");
  return row(*cube * ((k + n - 1) / n), Status::lower_bound,
             "thm:properties-of-gutt-hutchings-capacities",
             "inscribed ball B^" + std::to_string(2 * n) + "(" + to_string(*cube) + ")");
}

/// Upper end of the bracket when cgh has no closed form: X_Omega is inside
/// N(delta) for convex or concave Omega.
inline std::optional<CapacityValue> cgh_upper_bound(const ToricRegion& region, std::int64_t k) {
  CapacityValue exact = cgh(region, k);
  if (exact.status == Status::theorem) return std::nullopt;
  if (!(is_convex_toric(region) || is_concave_toric(region))) return std::nullopt;
  const std::int64_t n = region.dimension();
  return detail::make_value(CapacityName::cgh, k, diagonal(region) * (k + n - 1),
                            Status::upper_bound, "lem:cgh-of-nondisjoint-union-of-cylinders",
                            "X in N(delta)");
}

/// cgh_1, ..., cgh_{k_max} computed in one pass.
inline std::vector<CapacityValue> cgh_sequence(const ToricRegion& region, std::int64_t k_max) {
  if (k_max < 1) throw DomainError("cgh: k_max must be at least 1");
  std::vector<CapacityValue> out;
  out.reserve(static_cast<std::size_t>(k_max));
  auto a = region.ellipsoid_areas();
  if (!a || detail::ball_area(region)) {
    for (std::int64_t k = 1; k <= k_max; ++k) out.push_back(cgh(region, k));
    return out;
  }
  // Ellipsoid: one merge of the spectrum. Entry k is generic when no tie occurs
  // among the first k actions or across the boundary to entry k + 1.
  Spectrum s = enumerate_spectrum(EllipsoidSpec(*a), k_max + 1);
  bool tie_so_far = false;
  for (std::int64_t k = 1; k <= k_max; ++k) {
    const auto& cur = s.entries[static_cast<std::size_t>(k - 1)];
    const auto& next = s.entries[static_cast<std::size_t>(k)];
    if (k > 1 && s.entries[static_cast<std::size_t>(k - 2)].action == cur.action) tie_so_far = true;
    bool generic = !tie_so_far && next.action != cur.action;
    out.push_back(detail::make_value(
        CapacityName::cgh, k, cur.action, Status::theorem,
        "thm:properties-of-gutt-hutchings-capacities",
        generic ? "degree selection, oracle-verified" : "counting identity sum_j floor(t / a_j)"));
  }
  return out;
}

/// True iff cgh_1 <= cgh_2 <= ... <= cgh_{k_max}. Requires closed forms.
inline bool cgh_nondecreasing_check(const ToricRegion& region, std::int64_t k_max) {
  auto seq = cgh_sequence(region, k_max);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i].status != Status::theorem)
      throw Unsupported("cgh of " + region.describe() + " has no closed form");
    if (i > 0 && seq[i].exact() < seq[i - 1].exact()) return false;
  }
  return true;
}

/// Lagrangian capacity: closed forms for balls and cylinders, delta for 4-dim
/// convex toric domains, delta under the standing assumption for convex or
/// concave ones, and otherwise the lower bound c_P <= c_L.
inline CapacityValue c_L(const ToricRegion& region) {
  const int n = region.dimension();
  auto row = [](Scalar v, Status s, std::string anchor, std::string w = {}) {
    return detail::make_value(CapacityName::c_L, std::nullopt, std::move(v), s, std::move(anchor),
                              std::move(w));
  };
  if (auto a = detail::ball_area(region))
    return row(*a / n, Status::theorem, "prp:cl-of-ball", "c_L(B(1)) = 1/n, conformality");
  if (auto* z = region.get_if<Cylinder>())
    return row(z->a, Status::theorem, "prp:cl-of-cylinder", "c_L(Z(1)) = 1, conformality");
  if (is_convex_toric(region) && n == 2)
    return row(diagonal(region), Status::theorem, "lem:computation-of-cl", "4-dimensional convex");
  if (is_convex_toric(region) || is_concave_toric(region))
    return row(diagonal(region), Status::conditional_on_assumption, "thm:my-main-theorem",
               "convex or concave, under the standing assumption");
  CapacityValue p = c_P(region);
  return row(p.exact(), Status::lower_bound, "lem:c-square-leq-c-lag", "c_L >= c_P");
}

/// The conjectured value (1/a_1 + ... + 1/a_n)^{-1} for ellipsoids.
inline std::optional<CapacityValue> c_L_ellipsoid_conjecture(const ToricRegion& region) {
  if (!region.ellipsoid_areas()) return std::nullopt;
  return detail::make_value(CapacityName::c_L, std::nullopt, diagonal(region), Status::conjecture,
                            "conj:cl-of-ellipsoid", "(sum 1/a_i)^{-1}");
}

/// inf_{k <= k_max} cgh_k / k, an upper bound for c_L, available when every
/// cgh_k has a closed form.
inline std::optional<CapacityValue> c_L_upper_bound(const ToricRegion& region, std::int64_t k_max) {
  auto seq = cgh_sequence(region, k_max);
  std::optional<Scalar> best;
  std::int64_t best_k = 0;
  for (const auto& c : seq) {
    if (c.status != Status::theorem) return std::nullopt;
    Scalar r = c.exact() / *c.k;
    if (!best || r < *best) {
      best = r;
      best_k = *c.k;
    }
  }
  return detail::make_value(CapacityName::c_L, best_k, *best, Status::upper_bound,
                            "thm:lagrangian-vs-g-tilde", "inf_k cgh_k / k");
}

/// A_min of the product torus with the given areas: the smallest positive
/// integer combination of the areas.
inline CapacityValue a_min_product_torus(std::span<const Scalar> areas) {
  return detail::make_value(CapacityName::a_min, std::nullopt,
                            min_positive_integer_combination(areas), Status::theorem,
                            "lem:a-min-with-exact-symplectic-manifold", "generator of lambda(pi_1 L)");
}

struct ChainRow {
  std::int64_t k = 0;
  Scalar cgh_value;         // exact cgh_k, or its lower bound when bracketed
  Status cgh_status = Status::theorem;
  std::optional<Scalar> cgh_upper;  // bracket upper end, when bracketed
  Scalar ratio;             // best known upper bound for cgh_k / k
  Scalar n_bound;           // delta (k + n - 1) / k
  bool ok = true;
};

struct CapacityReport {
  ToricRegion domain;
  std::int64_t k_max = 0;
  std::vector<CapacityValue> rows;  // delta, c_P, c_L, ... in chain order
  std::vector<ChainRow> per_k;
  bool chain_ok = true;
  std::optional<Scalar> inf_ratio;  // min_k cgh_k / k
  std::optional<std::int64_t> inf_k;
  std::optional<Scalar> inf_gap;    // inf_ratio - delta
  std::vector<std::string> failures;
};

/// Verifies the chain for k = 1..k_max, exactly.
///
/// Each k checks delta <= cgh_k / k, and cgh_k / k <= delta (k + n - 1) / k
/// when X_Omega is inside N(delta). The summary rows record delta, c_P, c_L,
/// and at the minimizing k the g-capacity rows and cgh <= csh.
inline CapacityReport chain_report(const ToricRegion& region, std::int64_t k_max) {
  if (k_max < 1) throw DomainError("chain: k_max must be at least 1");
  const std::int64_t n = region.dimension();
  const Scalar delta = diagonal(region);
  const bool in_n_delta = is_convex_toric(region) || is_concave_toric(region);

  CapacityReport rep{region, k_max, {}, {}, true, {}, {}, {}, {}};
  auto fail = [&](std::string why) {
    rep.chain_ok = false;
    rep.failures.push_back(std::move(why));
  };

  rep.rows.push_back(detail::make_value(CapacityName::delta, std::nullopt, delta, Status::theorem,
                                        "def:moment-map", "sup{a : (a,...,a) in Omega}"));
  CapacityValue cp = c_P(region);
  CapacityValue cl = c_L(region);
  rep.rows.push_back(cp);
  rep.rows.push_back(cl);
  if (cp.status == Status::theorem && cp.exact() < delta) fail("c_P < delta");
  if (cl.status != Status::lower_bound && cl.exact() < cp.exact()) fail("c_L < c_P");
  if (auto conj = c_L_ellipsoid_conjecture(region)) rep.rows.push_back(*conj);

  auto seq = cgh_sequence(region, k_max);
  rep.per_k.reserve(seq.size());
  for (auto& c : seq) {
    ChainRow r;
    r.k = *c.k;
    r.cgh_value = c.exact();
    r.cgh_status = c.status;
    r.n_bound = delta * (r.k + n - 1) / r.k;
    if (c.status == Status::theorem) {
      r.ratio = r.cgh_value / r.k;
      if (r.ratio < delta) r.ok = false;
      if (in_n_delta && r.ratio > r.n_bound) r.ok = false;
    } else if (auto up = cgh_upper_bound(region, r.k)) {
      r.cgh_upper = up->exact();
      r.ratio = *r.cgh_upper / r.k;
      if (r.cgh_value > *r.cgh_upper) r.ok = false;
      if (r.ratio < delta) r.ok = false;
    } else {
      rep.per_k.push_back(std::move(r));
      continue;  // no upper bound known; nothing to compare
    }
    if (!r.ok) fail("k=" + std::to_string(r.k));
    if (!rep.inf_ratio || r.ratio < *rep.inf_ratio) {
      rep.inf_ratio = r.ratio;
      rep.inf_k = r.k;
    }
    rep.per_k.push_back(std::move(r));
  }

  if (rep.inf_ratio) {
    rep.inf_gap = *rep.inf_ratio - delta;
    const std::int64_t k = *rep.inf_k;
    const auto& best = rep.per_k[static_cast<std::size_t>(k - 1)];
    const Scalar g = best.cgh_upper ? *best.cgh_upper : best.cgh_value;
    const Status gs = best.cgh_status == Status::theorem ? Status::theorem : Status::upper_bound;
    if (cl.status != Status::lower_bound && cl.exact() > *rep.inf_ratio) fail("c_L > inf cgh_k/k");
    rep.rows.push_back(detail::make_value(CapacityName::gtilde1, k, g, Status::upper_bound,
                                          "thm:g-tilde-vs-g-hat", "gtilde_k <= g_k"));
    rep.rows.push_back(detail::make_value(CapacityName::g1, k, g, gs, "thm:g-hat-vs-gh",
                                          "g_k = cgh_k"));
    rep.rows.push_back(seq[static_cast<std::size_t>(k - 1)]);
    rep.rows.push_back(detail::make_value(
        CapacityName::csh, k, g, Status::recorded_identity, "thm:ghc-and-s1eshc",
        region.bounded() ? "cgh_k = csh_k (star-shaped)" : "cgh_k <= csh_k"));
  }
  return rep;
}

}  // namespace capspec
