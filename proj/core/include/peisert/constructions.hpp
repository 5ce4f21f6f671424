#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "peisert/cliques.hpp"
#include "peisert/forms.hpp"
#include "peisert/graph.hpp"

namespace peisert {

/// One named assertion made while building or analysing an object.
struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::vector<Check> checks;

  void add(std::string name, bool passed, std::string detail = {});
  bool ok() const;
};

/// A constructed graph together with the clique that certifies it fails
/// strict-EKR, when the construction comes with one.
struct Construction {
  std::string family;
  PeisertGraph graph;
  std::vector<Elem> witness;  // sorted by code; empty when there is none
  Report report;
};

/// Closed-form e_q: (p + 3) / 2 for odd primes, p^(n-k) + 1 with k the largest
/// proper divisor of n otherwise. q = 2 has no such value.
int extremal_type_formula(std::uint32_t q);

/// Largest proper divisor of n (1 for primes).
int largest_proper_divisor(int n);

/// S = F_q^* plus (u + beta) F_q^* for u in U, where U is the F_{p^k}-span of
/// 1, eps, ..., eps^(d-2), k the largest proper divisor of n and d = n / k.
/// The witness is U + beta F_{p^k}. Needs n > 1.
Construction extremal_construction(const BasisPtr& basis);

/// The graph whose directions are those of {(x, x^((p+1)/2))}, p an odd prime.
Construction ls_graph(const BasisPtr& basis);

/// Default hyperplane generators for y_qn: 1, eps, ..., eps^(N-2), N = n / s.
std::vector<Elem> default_hyperplane(const FieldTower& t, int s);

/// S(U) = F_q^* plus (u + beta) F_q^* for u in U = shift + span_{F_r}(generators),
/// r = p^s. The generators must span an (N-1)-dimensional F_r-subspace of F_q.
Construction y_qn(const BasisPtr& basis, int s, const std::vector<Elem>& generators, Elem shift = Elem{0});

/// X_q: S = union of (delta + beta) F_q^* over delta with delta^(r+1) = 1, q = r^2.
/// The witness is C_q = {g^r + g beta : g in F_q}.
Construction oval_graph_xq(const BasisPtr& basis);

/// The two type (17, 32) graphs generated by V1 = <1, e, b, e^16 b, e^21 + e^9 b>
/// and V2 = <1, e, e^2, e^3, b> over F_2, where e is a root of t^5 + t^2 + 1
/// and b a root of t^2 + t + 1.
struct ExamplePair {
  Construction first;
  Construction second;
};
TowerPtr example_q32_tower();
ExamplePair example_q32();

/// Graph of a point set that is an F_p-subspace: directions of its nonzero elements.
Construction subspace_graph(const BasisPtr& basis, std::string family, const std::vector<Elem>& generators);

/// Explicit isomorphism from X_{r^2} onto VO+(4, r).
struct PolarIsomorphism {
  std::uint32_t r = 0;
  Construction xq;
  Construction extremal;
  FormGraph vo;
  /// Form read off the F_r-coordinates of X_q: N(g1) - N(g2) as a form in 4 variables.
  QuadraticForm norm_form;
  /// Change of variables with hyperbolic(B x) = norm_form(x), over the standalone F_r.
  Matrix b;
  Elem d;                                    // non-square (odd r) or trace-one element (even r) of F_r, tower code
  Elem gamma;                                // element of F_q with gamma^r != gamma used to map Y onto X_q
  std::vector<std::uint32_t> xq_to_vo;       // tower code -> VO+ vertex
  std::vector<std::uint32_t> extremal_to_vo;  // tower code -> VO+ vertex
  std::vector<std::uint32_t> vo_to_xq;       // inverse of xq_to_vo
  Report report;
};

/// Builds and edge-exhaustively verifies the isomorphisms. Needs 2 <= r <= 5.
PolarIsomorphism xq_vo_isomorphism(std::uint32_t r);

/// Raw number of extremal connection sets over F_{q^2} for q = r^d with
/// d = n / k in {2, 3}: every d-dimensional F_r-subspace with r^(d-1) + 1
/// directions yields one, and each graph arises from several subspaces.
struct RawExtremalCount {
  std::uint32_t q = 0;
  std::uint32_t r = 0;
  int d = 0;
  std::uint64_t subspaces = 0;           // all d-dimensional F_r-subspaces
  std::uint64_t extremal_subspaces = 0;  // those with r^(d-1) + 1 directions
  std::vector<DirectionSet> direction_sets;  // distinct, sorted
  std::uint64_t expected = 0;  // (q + 1) sqrt(q) or r(r^5 + ... + 1)
  /// Square q only: every 3-set of directions lies in exactly one set.
  std::optional<bool> triples_covered_once;
};

RawExtremalCount raw_extremal_count(const BasisPtr& basis);

}  // namespace peisert
