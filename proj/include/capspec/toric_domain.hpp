#pragma once

// Moment-region model of toric domains X_Omega = mu^{-1}(Omega), Omega in R^n_{>=0},
// and the exact polytope queries the capacity code consumes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "capspec/rational.hpp"

namespace capspec {

/// sum x_i / a_i <= 1
struct Ellipsoid {
  RationalVector a;
};
/// x_i <= a_i
struct Polydisk {
  RationalVector a;
};
/// sum x_i <= a, the ellipsoid E(a, ..., a)
struct Ball {
  Scalar a;
  int n;
};
/// x_i <= a, the polydisk P(a, ..., a)
struct Cube {
  Scalar a;
  int n;
};
/// x_1 <= a
struct Cylinder {
  Scalar a;
  int n;
};
/// min_i x_i <= delta
struct NCylinders {
  Scalar delta;
  int n;
};
/// x >= 0 and <normals[i], x> <= offsets[i] for every i.
struct HalfSpaces {
  std::vector<RationalVector> normals;
  RationalVector offsets;
};

namespace detail {

/// Unique solution of the square system A x = b, or nullopt if A is singular.
inline std::optional<RationalVector> solve_exact(std::vector<RationalVector> a, RationalVector b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Scalar f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

/// Calls f on every k-subset of {0, ..., m - 1}, in lexicographic order.
template <class F>
void for_each_subset(std::size_t m, std::size_t k, F&& f) {
  if (k > m) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Constraint rows of {x >= 0, <v_i, x> <= c_i} as (normal, offset) pairs.
inline std::pair<std::vector<RationalVector>, RationalVector> with_orthant(const HalfSpaces& h,
                                                                          std::size_t n) {
  std::vector<RationalVector> rows = h.normals;
  RationalVector rhs = h.offsets;
  for (std::size_t j = 0; j < n; ++j) {
    RationalVector e(n, Scalar(0));
    e[j] = -1;
    rows.push_back(std::move(e));
    rhs.push_back(0);
  }
  return {std::move(rows), std::move(rhs)};
}

inline Scalar dot(const RationalVector& u, const RationalVector& v) {
  Scalar s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

/// Exact vertices of {x >= 0, <v_i, x> <= c_i}.
inline std::vector<RationalVector> polytope_vertices(const HalfSpaces& h, std::size_t n) {
  auto [rows, rhs] = with_orthant(h, n);
  std::vector<RationalVector> out;
  for_each_subset(rows.size(), n, [&](const std::vector<std::size_t>& idx) {
    std::vector<RationalVector> a;
    RationalVector b;
    for (auto i : idx) {
      a.push_back(rows[i]);
      b.push_back(rhs[i]);
    }
    auto x = solve_exact(std::move(a), std::move(b));
    if (!x) return;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (dot(rows[i], *x) > rhs[i]) return;
    if (std::find(out.begin(), out.end(), *x) == out.end()) out.push_back(std::move(*x));
  });
  return out;
}

/// True iff some d >= 0, d != 0 has <v_i, d> <= 0 for every i. The set of such
/// d with sum d = 1 is a polytope, so it is nonempty iff it has a vertex.
inline bool has_recession_direction(const HalfSpaces& h, std::size_t n) {
  auto [rows, rhs] = with_orthant(h, n);
  bool found = false;
  for_each_subset(rows.size(), n - 1, [&](const std::vector<std::size_t>& idx) {
    if (found) return;
    std::vector<RationalVector> a;
    for (auto i : idx) a.push_back(rows[i]);
    a.push_back(RationalVector(n, Scalar(1)));
    RationalVector b(n, Scalar(0));
    b[n - 1] = 1;
    auto d = solve_exact(std::move(a), std::move(b));
    if (!d) return;
    for (const auto& r : rows)
      if (dot(r, *d) > 0) return;
    found = true;
  });
  return found;
}

}  // namespace detail

class ToricRegion {
 public:
  using Kind = std::variant<Ellipsoid, Polydisk, Ball, Cube, Cylinder, NCylinders, HalfSpaces>;

  static ToricRegion ellipsoid(RationalVector a) {
    require_positive_vector(a, "ellipsoid");
    const auto n = static_cast<int>(a.size());
    return ToricRegion(Ellipsoid{std::move(a)}, n);
  }
  static ToricRegion polydisk(RationalVector a) {
    require_positive_vector(a, "polydisk");
    const auto n = static_cast<int>(a.size());
    return ToricRegion(Polydisk{std::move(a)}, n);
  }
  static ToricRegion ball(Scalar a, int n) {
    require_family(a, n, "ball");
    return ToricRegion(Ball{std::move(a), n}, n);
  }
  static ToricRegion cube(Scalar a, int n) {
    require_family(a, n, "cube");
    return ToricRegion(Cube{std::move(a), n}, n);
  }
  static ToricRegion cylinder(Scalar a, int n) {
    require_family(a, n, "cylinder");
    return ToricRegion(Cylinder{std::move(a), n}, n);
  }
  static ToricRegion ncylinders(Scalar delta, int n) {
    require_family(delta, n, "ncyl");
    return ToricRegion(NCylinders{std::move(delta), n}, n);
  }
  /// Offsets must be positive so that 0 is interior relative to the orthant.
  static ToricRegion half_spaces(std::vector<RationalVector> normals, RationalVector offsets) {
    if (normals.empty()) throw DomainError("hrep: at least one constraint is required");
    if (normals.size() != offsets.size())
      throw DomainError("hrep: normals and offsets differ in length");
    const auto n = normals.front().size();
    if (n == 0) throw DomainError("hrep: normals must be nonempty");
    for (std::size_t i = 0; i < normals.size(); ++i) {
      if (normals[i].size() != n)
        throw DomainError("hrep.normals[" + std::to_string(i) + "]: dimension mismatch");
      if (offsets[i] <= 0)
        throw DomainError("hrep.offsets[" + std::to_string(i) + "]: must be positive");
    }
    return ToricRegion(HalfSpaces{std::move(normals), std::move(offsets)}, static_cast<int>(n));
  }

  int dimension() const noexcept { return dim_; }
  const Kind& kind() const noexcept { return kind_; }

  template <class T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&kind_);
  }
  template <class T>
  bool is() const noexcept {
    return std::holds_alternative<T>(kind_);
  }

  /// Areas (a_1, ..., a_n) when the region is an ellipsoid or a ball.
  std::optional<RationalVector> ellipsoid_areas() const {
    if (auto* e = get_if<Ellipsoid>()) return e->a;
    if (auto* b = get_if<Ball>()) return RationalVector(static_cast<std::size_t>(b->n), b->a);
    return std::nullopt;
  }
  /// Areas when the region is a polydisk or a cube.
  std::optional<RationalVector> polydisk_areas() const {
    if (auto* p = get_if<Polydisk>()) return p->a;
    if (auto* c = get_if<Cube>()) return RationalVector(static_cast<std::size_t>(c->n), c->a);
    return std::nullopt;
  }

  /// Every normal is componentwise nonnegative: Omega is convex and
  /// downward-closed, so X_Omega is a convex toric domain.
  bool is_canonical_convex_hrep() const {
    auto* h = get_if<HalfSpaces>();
    if (h == nullptr) return false;
    for (const auto& v : h->normals)
      for (const auto& x : v)
        if (x < 0) return false;
    return true;
  }

  /// Exact: half-space regions are checked for a recession direction.
  bool bounded() const {
    return std::visit(
        [this](const auto& k) -> bool {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, Cylinder> || std::is_same_v<K, NCylinders>) {
            return dim_ == 1;
          } else if constexpr (std::is_same_v<K, HalfSpaces>) {
            return !detail::has_recession_direction(k, static_cast<std::size_t>(dim_));
          } else {
            return true;
          }
        },
        kind_);
  }

  /// sup{t : t e_j in Omega}, or nullopt when the axis ray is unbounded.
  std::optional<Scalar> axis_intercept(int j) const {
    return std::visit(
        [&](const auto& k) -> std::optional<Scalar> {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, Ellipsoid> || std::is_same_v<K, Polydisk>) {
            return k.a[static_cast<std::size_t>(j)];
          } else if constexpr (std::is_same_v<K, Ball> || std::is_same_v<K, Cube>) {
            return k.a;
          } else if constexpr (std::is_same_v<K, Cylinder>) {
            if (j == 0) return k.a;
            return std::nullopt;
          } else if constexpr (std::is_same_v<K, NCylinders>) {
            if (dim_ == 1) return k.delta;
            return std::nullopt;
          } else {
            std::optional<Scalar> best;
            for (std::size_t i = 0; i < k.normals.size(); ++i) {
              const Scalar& v = k.normals[i][static_cast<std::size_t>(j)];
              if (v <= 0) continue;
              Scalar t = k.offsets[i] / v;
              if (!best || t < *best) best = t;
            }
            return best;
          }
        },
        kind_);
  }

  /// Short human-readable name, e.g. "E(1,5/2)" or "N^4(1)".
  std::string describe() const {
    auto join = [](const RationalVector& a) {
      std::string s;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += to_string(a[i]);
      }
      return s;
    };
    auto sup = [this] { return "^" + std::to_string(2 * dim_); };
    return std::visit(
        [&](const auto& k) -> std::string {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, Ellipsoid>) return "E(" + join(k.a) + ")";
          else if constexpr (std::is_same_v<K, Polydisk>) return "P(" + join(k.a) + ")";
          else if constexpr (std::is_same_v<K, Ball>) return "B" + sup() + "(" + to_string(k.a) + ")";
          else if constexpr (std::is_same_v<K, Cube>) return "C" + sup() + "(" + to_string(k.a) + ")";
          else if constexpr (std::is_same_v<K, Cylinder>) return "Z" + sup() + "(" + to_string(k.a) + ")";
          else if constexpr (std::is_same_v<K, NCylinders>) return "N" + sup() + "(" + to_string(k.delta) + ")";
          else {
            std::string s = "H" + sup() + "[";
            for (std::size_t i = 0; i < k.normals.size(); ++i) {
              if (i) s += ";";
              s += "(" + join(k.normals[i]) + ")<=" + to_string(k.offsets[i]);
            }
            return s + "]";
          }
        },
        kind_);
  }

 private:
  ToricRegion(Kind kind, int dim) : kind_(std::move(kind)), dim_(dim) {}

  static void require_positive_vector(const RationalVector& a, const char* what) {
    if (a.empty()) throw DomainError(std::string(what) + ".a: must be nonempty");
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] <= 0)
        throw DomainError(std::string(what) + ".a[" + std::to_string(i) + "]: must be positive");
  }
  static void require_family(const Scalar& a, int n, const char* what) {
    if (a <= 0) throw DomainError(std::string(what) + ": parameter must be positive");
    if (n < 1) throw DomainError(std::string(what) + ".n: must be at least 1");
  }

  Kind kind_;
  int dim_;
};

inline bool contains_point(const ToricRegion& region, std::span<const Scalar> x) {
  if (static_cast<int>(x.size()) != region.dimension())
    throw DomainError("contains_point: dimension mismatch");
  for (const auto& xi : x)
    if (xi < 0) throw DomainError("contains_point: point has a negative coordinate");
  return std::visit(
      [&](const auto& k) -> bool {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Ellipsoid>) {
          Scalar s = 0;
          for (std::size_t i = 0; i < x.size(); ++i) s += x[i] / k.a[i];
          return s <= 1;
        } else if constexpr (std::is_same_v<K, Polydisk>) {
          for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] > k.a[i]) return false;
          return true;
        } else if constexpr (std::is_same_v<K, Ball>) {
          Scalar s = 0;
          for (const auto& xi : x) s += xi;
          return s <= k.a;
        } else if constexpr (std::is_same_v<K, Cube>) {
          for (const auto& xi : x)
            if (xi > k.a) return false;
          return true;
        } else if constexpr (std::is_same_v<K, Cylinder>) {
          return x[0] <= k.a;
        } else if constexpr (std::is_same_v<K, NCylinders>) {
          return *std::min_element(x.begin(), x.end()) <= k.delta;
        } else {
          for (std::size_t i = 0; i < k.normals.size(); ++i) {
            Scalar s = 0;
            for (std::size_t j = 0; j < x.size(); ++j) s += k.normals[i][j] * x[j];
            if (s > k.offsets[i]) return false;
          }
          return true;
        }
      },
      region.kind());
}

/// sup{a : (a, ..., a) in Omega}.
inline Scalar diagonal(const ToricRegion& region) {
  const int n = region.dimension();
  return std::visit(
      [&](const auto& k) -> Scalar {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Ellipsoid>) {
          Scalar s = 0;
          for (const auto& ai : k.a) s += 1 / ai;
          return 1 / s;
        } else if constexpr (std::is_same_v<K, Polydisk>) {
          return *std::min_element(k.a.begin(), k.a.end());
        } else if constexpr (std::is_same_v<K, Ball>) {
          return k.a / n;
        } else if constexpr (std::is_same_v<K, Cube> || std::is_same_v<K, Cylinder>) {
          return k.a;
        } else if constexpr (std::is_same_v<K, NCylinders>) {
          return k.delta;
        } else {
          // Constraints with <v,1> <= 0 hold along the whole ray since offsets are positive.
          std::optional<Scalar> best;
          for (std::size_t i = 0; i < k.normals.size(); ++i) {
            Scalar s = 0;
            for (const auto& v : k.normals[i]) s += v;
            if (s <= 0) continue;
            Scalar t = k.offsets[i] / s;
            if (!best || t < *best) best = t;
          }
          if (!best) throw DomainError("unbounded diagonal");
          return *best;
        }
      },
      region.kind());
}

/// Why a convexity/concavity question was answered "false" without being
/// decided, if it was.
inline std::optional<std::string> convexity_diagnostic(const ToricRegion& region) {
  if (region.is<HalfSpaces>()) {
    if (!region.is_canonical_convex_hrep())
      return "half-space region has a negative normal entry; convexity of the toric domain is undecided";
    return "concavity is only decided for named families; half-space region reported not concave";
  }
  return std::nullopt;
}

inline bool is_convex_toric(const ToricRegion& region) {
  if (region.is<NCylinders>()) return region.dimension() == 1;
  if (region.is<HalfSpaces>()) return region.is_canonical_convex_hrep();
  return true;
}

inline bool is_concave_toric(const ToricRegion& region) {
  if (region.is<Ellipsoid>() || region.is<Ball>() || region.is<Cylinder>() ||
      region.is<NCylinders>())
    return true;
  // A polydisk with n = 1 is a disk, which is an ellipsoid.
  if (region.is<Polydisk>() || region.is<Cube>()) return region.dimension() == 1;
  return false;
}

/// Exact decision of Omega_inner subset Omega_outer on the supported pairs.
///
/// Inner must be an ellipsoid, ball, polydisk or cube. For a convex
/// downward-closed outer region, ellipsoids reduce to their axis vertices
/// a_j e_j and polydisks to their corner a. Into N(delta), a downward-closed
/// inner region fits iff its diagonal is at most delta.
inline bool includes(const ToricRegion& outer, const ToricRegion& inner) {
  if (outer.dimension() != inner.dimension())
    throw DomainError("includes: dimension mismatch");
  const auto n = static_cast<std::size_t>(inner.dimension());
  auto ell = inner.ellipsoid_areas();
  auto poly = inner.polydisk_areas();
  if (!ell && !poly) throw Unsupported("unsupported inclusion query");

  if (auto* nc = outer.get_if<NCylinders>()) return diagonal(inner) <= nc->delta;
  if (outer.is<HalfSpaces>() && !outer.is_canonical_convex_hrep())
    throw Unsupported("unsupported inclusion query");

  if (poly) return contains_point(outer, *poly);
  RationalVector vertex(n, Scalar(0));
  for (std::size_t j = 0; j < n; ++j) {
    vertex[j] = (*ell)[j];
    if (!contains_point(outer, vertex)) return false;
    vertex[j] = 0;
  }
  return true;
}

/// The same region with every area parameter multiplied by alpha > 0.
inline ToricRegion scale(const ToricRegion& region, const Scalar& alpha) {
  if (alpha <= 0) throw DomainError("scale: factor must be positive");
  return std::visit(
      [&](const auto& k) -> ToricRegion {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Ellipsoid>) return ToricRegion::ellipsoid(scale(k.a, alpha));
        else if constexpr (std::is_same_v<K, Polydisk>) return ToricRegion::polydisk(scale(k.a, alpha));
        else if constexpr (std::is_same_v<K, Ball>) return ToricRegion::ball(k.a * alpha, k.n);
        else if constexpr (std::is_same_v<K, Cube>) return ToricRegion::cube(k.a * alpha, k.n);
        else if constexpr (std::is_same_v<K, Cylinder>) return ToricRegion::cylinder(k.a * alpha, k.n);
        else if constexpr (std::is_same_v<K, NCylinders>) return ToricRegion::ncylinders(k.delta * alpha, k.n);
        else return ToricRegion::half_spaces(k.normals, scale(k.offsets, alpha));
      },
      region.kind());
}

inline constexpr std::uint64_t kDefaultVolumeSeed = 20240601;
inline constexpr std::size_t kDefaultVolumeSamples = 1'000'000;

struct VolumeResult {
  bool exact = true;
  Scalar value;            // exact volume (exact == true)
  double estimate = 0.0;   // equals value when exact
  double half_width = 0.0; // 95% confidence half-width, 0 when exact
  std::uint64_t seed = 0;
  std::size_t samples = 0;
};

/// Monte Carlo estimate of vol(Omega) by uniform sampling of the box spanned
/// by the axis intercepts (or the vertices). Valid for any bounded region.
inline VolumeResult monte_carlo_volume(const ToricRegion& region,
                                       std::size_t samples = kDefaultVolumeSamples,
                                       std::uint64_t seed = kDefaultVolumeSeed) {
  if (!region.bounded()) throw DomainError("infinite volume");
  if (samples == 0) throw DomainError("monte_carlo_volume: need at least one sample");
  const int n = region.dimension();

  // The box spanned by the axis intercepts, or by the vertices when Omega is
  // not downward closed.
  std::vector<double> box(static_cast<std::size_t>(n));
  if (auto* h = region.get_if<HalfSpaces>(); h && !region.is_canonical_convex_hrep()) {
    for (const auto& v : detail::polytope_vertices(*h, box.size()))
      for (std::size_t j = 0; j < box.size(); ++j) box[j] = std::max(box[j], to_double(v[j]));
  } else {
    for (int j = 0; j < n; ++j) box[static_cast<std::size_t>(j)] = to_double(*region.axis_intercept(j));
  }
  double box_volume = 1.0;
  for (double b : box) box_volume *= b;
  // Membership in doubles; the estimate is approximate by construction.
  std::vector<std::vector<double>> normals;
  std::vector<double> offsets;
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        auto row = [&](std::vector<double> v, double c) {
          normals.push_back(std::move(v));
          offsets.push_back(c);
        };
        if constexpr (std::is_same_v<K, Ellipsoid>) {
          std::vector<double> v;
          for (const auto& ai : k.a) v.push_back(1.0 / to_double(ai));
          row(std::move(v), 1.0);
        } else if constexpr (std::is_same_v<K, Ball>) {
          row(std::vector<double>(static_cast<std::size_t>(n), 1.0), to_double(k.a));
        } else if constexpr (std::is_same_v<K, HalfSpaces>) {
          for (std::size_t i = 0; i < k.normals.size(); ++i) {
            std::vector<double> v;
            for (const auto& x : k.normals[i]) v.push_back(to_double(x));
            row(std::move(v), to_double(k.offsets[i]));
          }
        }
        // Box-shaped families and bounded n = 1 cylinders need no extra rows.
      },
      region.kind());

  std::mt19937_64 gen(seed);
  std::vector<double> x(static_cast<std::size_t>(n));
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      // 53 random bits; std::uniform_real_distribution is not portable across libraries.
      double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
      x[j] = u * box[j];
    }
    bool inside = true;
    for (std::size_t i = 0; i < normals.size() && inside; ++i) {
      double dot = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) dot += normals[i][j] * x[j];
      inside = dot <= offsets[i];
    }
    hits += inside ? 1 : 0;
  }
  double p = static_cast<double>(hits) / static_cast<double>(samples);
  VolumeResult r;
  r.exact = false;
  r.estimate = box_volume * p;
  r.half_width = 1.96 * box_volume * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  r.seed = seed;
  r.samples = samples;
  return r;
}

/// Euclidean volume of Omega, which equals the symplectic volume of X_Omega.
/// Exact for the named families; half-space regions fall back to Monte Carlo.
inline VolumeResult volume(const ToricRegion& region, std::uint64_t seed = kDefaultVolumeSeed,
                           std::size_t samples = kDefaultVolumeSamples) {
  if (!region.bounded()) throw DomainError("infinite volume");
  const int n = region.dimension();
  Scalar factorial = 1;
  for (int i = 2; i <= n; ++i) factorial *= i;
  auto exact = [](Scalar v) {
    VolumeResult r;
    r.estimate = to_double(v);
    r.value = std::move(v);
    return r;
  };
  if (auto a = region.ellipsoid_areas()) {
    Scalar prod = 1;
    for (const auto& ai : *a) prod *= ai;
    return exact(prod / factorial);
  }
  if (auto a = region.polydisk_areas()) {
    Scalar prod = 1;
    for (const auto& ai : *a) prod *= ai;
    return exact(prod);
  }
  // Bounded cylinders and N are n = 1 disks.
  if (auto* c = region.get_if<Cylinder>()) return exact(c->a);
  if (auto* c = region.get_if<NCylinders>()) return exact(c->delta);
  return monte_carlo_volume(region, samples, seed);
}

}  // namespace capspec
