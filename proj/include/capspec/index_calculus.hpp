#pragma once

// Conley-Zehnder and Maslov index arithmetic.
//
// Paths are 2x2 blocks A(t) = exp(t J0 S). S is always given in units of 2*pi,
// S = 2*pi * block, so that sqrt(det S) * T / (2*pi) = sqrt(det block) * T is a
// square root of a rational and its floor is exact. Higher-dimensional paths
// are direct sums of blocks combined through the product/loop/inverse rules.

#include <cstdint>
#include <numeric>
#include <span>
#include <string_view>

#include "capspec/rational.hpp"

namespace capspec {

struct SymmetricBlock {
  Scalar s11, s12, s22;

  static SymmetricBlock diagonal(Scalar d1, Scalar d2) { return {std::move(d1), 0, std::move(d2)}; }
  static SymmetricBlock identity_times(const Scalar& c) { return {c, 0, c}; }

  Scalar det() const { return s11 * s22 - s12 * s12; }
  Scalar trace() const { return s11 + s22; }
  bool nondegenerate() const { return det() != 0; }
};

/// Positive minus negative eigenvalues; read off from the signs of det and trace.
inline int signature(const SymmetricBlock& s) {
  Scalar d = s.det();
  if (d == 0) throw DomainError("degenerate S");
  if (d < 0) return 0;
  return s.trace() > 0 ? 2 : -2;
}

/// The path t -> exp(t J0 (2 pi block)) on [0, duration].
struct BlockPath {
  SymmetricBlock block;
  Scalar duration;

  /// Rotation by 2*pi*theta over unit time.
  static BlockPath rotation(const Scalar& theta) {
    return {SymmetricBlock::identity_times(theta), Scalar(1)};
  }
  /// S = (2 pi / a) Id run for time T, so the rotation ratio is T / a.
  static BlockPath from_area(const Scalar& a, const Scalar& duration) {
    if (a <= 0) throw DomainError("block: area must be positive");
    return {SymmetricBlock::identity_times(1 / a), duration};
  }
};

enum class Provenance { prop41, direct_sum, loop_shift, inverse, formula_ellipsoid };

inline std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::prop41: return "prop41";
    case Provenance::direct_sum: return "direct-sum";
    case Provenance::loop_shift: return "loop-shift";
    case Provenance::inverse: return "inverse";
    case Provenance::formula_ellipsoid: return "formula-ellipsoid";
  }
  return "?";
}

struct IndexDatum {
  std::int64_t value = 0;
  Provenance provenance = Provenance::prop41;
  int blocks = 1;  // number of 2x2 blocks the datum was assembled from

  friend bool operator==(const IndexDatum&, const IndexDatum&) = default;
};

/// Closed form for cz of a single block path:
///   (1/2 + floor(sqrt(a1 a2) T / 2pi)) * sign S   if sign S != 0,
///   0                                              if sign S == 0.
/// Throws if exp(T J0 S) = Id, i.e. the rotation ratio is an integer.
inline std::int64_t cz_exp_block(const BlockPath& path) {
  if (path.duration <= 0) throw DomainError("block: duration must be positive");
  const int sig = signature(path.block);
  if (sig == 0) return 0;
  // theta^2 = det(block) * T^2; theta is an integer iff the path closes up.
  Scalar theta_sq = path.block.det() * path.duration * path.duration;
  if (is_integer_square(theta_sq)) throw DomainError("degenerate path: exp(T J0 S) = Id");
  auto f = floor_sqrt(theta_sq).convert_to<std::int64_t>();
  return (1 + 2 * f) * (sig / 2);
}

inline IndexDatum cz_block_datum(const BlockPath& path) {
  return {cz_exp_block(path), Provenance::prop41, 1};
}

inline std::int64_t cz_direct_sum(std::span<const std::int64_t> parts) {
  return std::accumulate(parts.begin(), parts.end(), std::int64_t{0});
}

inline IndexDatum cz_direct_sum(std::span<const IndexDatum> parts) {
  IndexDatum out{0, Provenance::direct_sum, 0};
  for (const auto& p : parts) {
    out.value += p.value;
    out.blocks += p.blocks;
  }
  return out;
}

/// cz(B A) = cz(A) + 2 mu(B) for a loop B.
inline std::int64_t cz_loop_shift(std::int64_t cz, std::int64_t maslov) { return cz + 2 * maslov; }

inline IndexDatum cz_loop_shift(const IndexDatum& cz, std::int64_t maslov) {
  return {cz_loop_shift(cz.value, maslov), Provenance::loop_shift, cz.blocks};
}

/// cz(A^{-1}) = cz(A^T) = -cz(A).
inline std::int64_t cz_inverse(std::int64_t cz) { return -cz; }

inline IndexDatum cz_inverse(const IndexDatum& cz) {
  return {cz_inverse(cz.value), Provenance::inverse, cz.blocks};
}

/// mu(A1 A2) = mu(A1) + mu(A2) for loops of symplectic matrices.
inline std::int64_t maslov_product(std::int64_t mu1, std::int64_t mu2) { return mu1 + mu2; }

/// Maslov index of t -> rotation(2 pi w t): the |w|-fold product of the
/// normalization loop (index 1) or of its inverse (index -1).
inline std::int64_t maslov_rotation_loop(std::int64_t w) {
  const std::int64_t unit = w >= 0 ? 1 : -1;
  std::int64_t mu = 0;  // constant loop
  for (std::int64_t i = 0; i < (w >= 0 ? w : -w); ++i) mu = maslov_product(mu, unit);
  return mu;
}

/// Virtual dimension of punctured curves in a 2n-dimensional cobordism:
/// (n - 3)(2 - p+ - p-) + c1 + cz(Gamma+) - cz(Gamma-).
inline std::int64_t virdim_punctured(std::int64_t n, std::int64_t p_plus, std::int64_t p_minus,
                                     std::int64_t c1, std::int64_t cz_plus, std::int64_t cz_minus) {
  if (p_plus < 0 || p_minus < 0) throw DomainError("virdim: puncture counts must be nonnegative");
  return (n - 3) * (2 - p_plus - p_minus) + c1 + cz_plus - cz_minus;
}

/// Same, with a local tangency constraint of order k at a point, which costs 2n + 2k - 4.
inline std::int64_t virdim_tangency(std::int64_t n, std::int64_t p_plus, std::int64_t p_minus,
                                    std::int64_t c1, std::int64_t cz_plus, std::int64_t cz_minus,
                                    std::int64_t k) {
  if (k < 1) throw DomainError("virdim: tangency order must be at least 1");
  return virdim_punctured(n, p_plus, p_minus, c1, cz_plus, cz_minus) - 2 * n - 2 * k + 4;
}

/// Fredholm index of a Cauchy-Riemann operator on a punctured genus-g surface:
/// n chi + 2 c1 + cz+ - cz-, with chi = 2 - 2g - #punctures.
inline std::int64_t riemann_roch_index(std::int64_t n, std::int64_t genus, std::int64_t punctures,
                                       std::int64_t c1, std::int64_t cz_plus,
                                       std::int64_t cz_minus) {
  if (genus < 0 || punctures < 0)
    throw DomainError("riemann_roch: genus and puncture count must be nonnegative");
  const std::int64_t chi = 2 - 2 * genus - punctures;
  return n * chi + 2 * c1 + cz_plus - cz_minus;
}

}  // namespace capspec
