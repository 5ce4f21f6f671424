#include <doctest.h>

#include <algorithm>
#include <set>

#include "peisert/classify.hpp"
#include "peisert/cliques.hpp"
#include "peisert/constructions.hpp"
#include "peisert/error.hpp"

using namespace peisert;

namespace {

BasisPtr basis_for(std::uint32_t q) {
  const auto [p, n] = prime_power(q);
  return make_basis(make_tower(p, n));
}

// Every m-subset of PG(1,q) whose graph has a non-canonical q-clique.
std::set<DirectionSet> failing_subsets(const BasisPtr& b, int m) {
  const int size = static_cast<int>(b->q()) + 1;
  std::set<DirectionSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << size); ++mask) {
    if (std::popcount(mask) != m) continue;
    const DirectionSet d = directions_from_mask(mask);
    if (!strict_ekr(PeisertGraph(b, d)).strict) out.insert(d);
  }
  return out;
}

}  // namespace

TEST_CASE("extremal type formula") {
  CHECK(extremal_type_formula(3) == 3);
  CHECK(extremal_type_formula(13) == 8);
  CHECK(extremal_type_formula(64) == 9);   // k = 3
  CHECK(extremal_type_formula(81) == 10);  // k = 2
  CHECK(extremal_type_formula(128) == 65);
  CHECK_THROWS_AS(extremal_type_formula(2), InvalidArgument);
  CHECK_THROWS_AS(extremal_type_formula(6), InvalidArgument);
  CHECK(largest_proper_divisor(1) == 1);
  CHECK(largest_proper_divisor(7) == 1);
  CHECK(largest_proper_divisor(12) == 6);
  CHECK(largest_proper_divisor(9) == 3);
}

TEST_CASE("constructions reject unsupported q") {
  CHECK_THROWS_AS(extremal_construction(basis_for(7)), InvalidArgument);
  CHECK_THROWS_AS(ls_graph(basis_for(9)), InvalidArgument);
  CHECK_THROWS_AS(oval_graph_xq(basis_for(8)), InvalidArgument);
  CHECK_THROWS_AS(xq_vo_isomorphism(1), InvalidArgument);
  CHECK_THROWS_AS(xq_vo_isomorphism(7), InvalidArgument);
  CHECK_THROWS_AS(raw_extremal_count(basis_for(7)), InvalidArgument);
}

TEST_CASE("every construction passes its own checks and carries a non-canonical witness") {
  for (std::uint32_t q : {4u, 8u, 9u, 16u, 27u}) {
    const Construction c = extremal_construction(basis_for(q));
    CHECK(c.report.ok());
    CHECK(c.graph.m() == extremal_type_formula(q));
    CHECK(is_clique(c.graph, c.witness));
  }
  for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
    const Construction c = ls_graph(basis_for(p));
    CHECK(c.report.ok());
    CHECK(c.graph.m() == extremal_type_formula(p));
  }
}

TEST_CASE("y_qn rejects generators that do not span a hyperplane") {
  const auto b = basis_for(8);
  const auto& t = b->tower();
  CHECK_THROWS_AS(y_qn(b, 1, {GaloisField::one(), GaloisField::one()}, Elem{0}), InvalidArgument);
  CHECK_THROWS_AS(y_qn(b, 2, default_hyperplane(t, 1), Elem{0}), InvalidArgument);
  CHECK_THROWS_AS(y_qn(b, 1, {b->beta(), GaloisField::one()}, Elem{0}), InvalidArgument);
}

TEST_CASE("shifting the hyperplane gives an isomorphic graph") {
  const auto b = basis_for(9);
  const auto& t = b->tower();
  const Construction a = y_qn(b, 1, default_hyperplane(t, 1), Elem{0});
  const Construction s = y_qn(b, 1, default_hyperplane(t, 1), t.epsilon());
  CHECK(s.report.ok());
  CHECK(isomorphic(a.graph, s.graph));
}

TEST_CASE("raw extremal counts agree with a brute-force strict-EKR pass") {
  for (std::uint32_t q : {8u, 9u}) {
    const auto b = basis_for(q);
    const RawExtremalCount raw = raw_extremal_count(b);
    const auto brute = failing_subsets(b, extremal_type_formula(q));
    CHECK(std::set<DirectionSet>(raw.direction_sets.begin(), raw.direction_sets.end()) == brute);
    CHECK(raw.direction_sets.size() == raw.expected);
  }
}

TEST_CASE("square q: extremal direction sets cover each triple once") {
  const RawExtremalCount raw = raw_extremal_count(basis_for(9));
  REQUIRE(raw.triples_covered_once.has_value());
  CHECK(*raw.triples_covered_once);
  CHECK_FALSE(raw_extremal_count(basis_for(8)).triples_covered_once.has_value());
}

TEST_CASE("subspace graphs take the directions of the span") {
  const auto b = basis_for(4);
  const Construction c = subspace_graph(b, "plane", {GaloisField::one(), b->beta()});
  CHECK(c.graph.m() == 3);
  CHECK(c.witness.size() == 4);
}

TEST_CASE("the q = 32 example tower uses the prescribed moduli") {
  const auto t = example_q32_tower();
  CHECK(t->q() == 32);
  CHECK(t->fq_modulus() == Poly{1, 0, 1, 0, 0, 1});
  const Elem e = t->epsilon();
  CHECK(t->add(t->add(t->pow(e, 5), t->pow(e, 2)), GaloisField::one()) == GaloisField::zero());
  const Elem b = t->quadratic_root();
  CHECK(t->add(t->add(t->mul(b, b), b), GaloisField::one()) == GaloisField::zero());
}
