#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "peisert/fields.hpp"

namespace peisert {

/// Point (a, b) of AG(2,q); both coordinates lie in F_q.
struct AffinePoint {
  Elem a;
  Elem b;
  friend constexpr bool operator==(AffinePoint, AffinePoint) = default;
};

/// Point [a : b] of PG(1,q), normalized so the first nonzero coordinate is 1.
struct ProjectivePoint {
  Elem a;
  Elem b;
  friend constexpr bool operator==(ProjectivePoint, ProjectivePoint) = default;
};

/// Sorted, duplicate-free list of PG(1,q) indices.
///
/// Index 0 is the vertical point [0:1]; index 1 + i is [1 : b] where b is the
/// F_q element with fq_index i. So [1:0] is 1 and [1:1] is 2.
using DirectionSet = std::vector<int>;

int pg_index(const FieldTower& t, Elem u1, Elem u2);
ProjectivePoint pg_point(const FieldTower& t, int index);
std::string pg_to_string(const FieldTower& t, int index);

/// Bit i set iff direction i is present. Needs q + 1 <= 64.
std::uint64_t direction_mask(std::span<const int> dirs);
DirectionSet directions_from_mask(std::uint64_t mask);
DirectionSet complement_directions(std::uint32_t q, std::span<const int> dirs);

/// Identification of F_{q^2} with AG(2,q) through the basis {1, beta}.
class TowerBasis {
 public:
  /// beta defaults to the tower's quadratic root, which without overrides is
  /// the least-code element outside F_q.
  explicit TowerBasis(TowerPtr tower, std::optional<Elem> beta = std::nullopt);

  const FieldTower& tower() const { return *tower_; }
  const TowerPtr& tower_ptr() const { return tower_; }
  Elem beta() const { return beta_; }
  std::uint32_t q() const { return tower_->q(); }

  AffinePoint pi(Elem x) const { return {coord_a_[x.code], coord_b_[x.code]}; }
  Elem point(Elem a, Elem b) const;
  Elem point(AffinePoint pt) const { return point(pt.a, pt.b); }
  /// PG index of sigma(pi(x)); x must be nonzero.
  int direction(Elem x) const;
  /// 1 + c*beta for [1:c], and beta for [0:1]. Its F_q^* multiples are the direction's coset.
  Elem coset_rep(int dir) const;

 private:
  TowerPtr tower_;
  Elem beta_;
  std::vector<Elem> coord_a_;
  std::vector<Elem> coord_b_;
  std::vector<int> dir_;
};

using BasisPtr = std::shared_ptr<const TowerBasis>;

BasisPtr make_basis(TowerPtr tower, std::optional<Elem> beta = std::nullopt);

/// Directions determined by a point set given as elements of F_{q^2}.
DirectionSet directions_of(const TowerBasis& basis, std::span<const Elem> points);

/// Degree j of the largest subfield F_{p^j} over which the set is a subspace
/// of F_{q^2}, or nullopt when it is not even closed under addition. The set
/// must contain 0 and have exactly q elements.
std::optional<int> k_linearity(const TowerBasis& basis, std::span<const Elem> points);

/// 2x2 matrix [[a, b], [c, d]] over F_q acting on column vectors.
struct Mat2 {
  Elem a, b, c, d;
};

Elem det(const FieldTower& t, const Mat2& m);

/// The projective line with the action of PGammaL(2,q).
class ProjectiveLine {
 public:
  explicit ProjectiveLine(TowerPtr tower);

  int size() const { return static_cast<int>(tower_->q()) + 1; }
  const FieldTower& tower() const { return *tower_; }
  int apply(const Mat2& m, int index) const;
  int frobenius(int index) const { return frob_[static_cast<std::size_t>(index)]; }
  /// Permutations of the point indices generating PGammaL(2,q).
  const std::vector<std::vector<int>>& generators() const { return gens_; }

  std::uint64_t image_mask(const std::vector<int>& perm, std::uint64_t mask) const;
  /// Every image of the set under PGammaL(2,q), in discovery order. Needs q <= 63.
  std::vector<std::uint64_t> orbit(std::uint64_t mask) const;
  /// Lexicographically least image of the set under PGammaL(2,q). Needs q <= 63.
  DirectionSet canonical(std::span<const int> dirs) const;
  std::uint64_t canonical_mask(std::uint64_t mask) const;
  bool equivalent(std::span<const int> a, std::span<const int> b) const;

 private:
  TowerPtr tower_;
  std::vector<int> frob_;
  std::vector<std::vector<int>> gens_;
};

/// Lexicographic order on equal-size sets encoded as bit masks.
inline bool mask_less(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t diff = a ^ b;
  return diff != 0 && (a & diff & (~diff + 1)) != 0;
}

}  // namespace peisert
