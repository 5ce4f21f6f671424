#include <doctest.h>

#include "oracle.hpp"
#include "peisert/cliques.hpp"
#include "peisert/constructions.hpp"
#include "peisert/error.hpp"

using namespace peisert;

namespace {

BasisPtr basis_for(std::uint32_t q) {
  const auto [p, n] = prime_power(q);
  return make_basis(make_tower(p, n));
}

}  // namespace

TEST_CASE("canonical cliques are lines through 0") {
  const auto b = basis_for(5);
  const PeisertGraph g(b, {0, 1, 3});
  for (int d : g.directions()) {
    const Clique c = canonical_clique(g, d);
    CHECK(c.vertices.size() == 5);
    CHECK(c.kind == CliqueKind::canonical);
    CHECK(c.directions == DirectionSet{d});
    CHECK(is_clique(g, c.vertices));
  }
  CHECK_THROWS_AS(canonical_clique(g, 2), InvalidArgument);
}

TEST_CASE("strict-EKR reports a non-canonical witness exactly when one exists") {
  const Construction e = extremal_construction(basis_for(8));
  const EkrResult r = strict_ekr(e.graph);
  CHECK_FALSE(r.strict);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->kind == CliqueKind::noncanonical_maximum);
  CHECK(is_clique(e.graph, r.witness->vertices));

  const PeisertGraph small(basis_for(8), {0, 1, 2});
  CHECK(strict_ekr(small).strict);
}

TEST_CASE("clique counts agree with the oracle on an extremal graph") {
  const Construction e = extremal_construction(basis_for(9));
  const auto want = oracle::cliques_through_zero(oracle::adjacency(e.graph), 9);
  const auto got = max_cliques_through_zero(e.graph);
  REQUIRE(got.size() == want.size());
  const auto counts = count_max_cliques(e.graph);
  CHECK(counts.canonical + counts.noncanonical == want.size());
}

TEST_CASE("monotonicity: adding directions never loses a maximum clique") {
  const auto b = basis_for(7);
  const PeisertGraph g(b, {0, 1, 2, 4, 6});
  const PeisertGraph h(b, {0, 1, 2, 3, 4, 6});
  for (const auto& c : max_cliques_through_zero(g)) CHECK(is_clique(h, c.vertices));
  CHECK(count_max_cliques(h).noncanonical >= count_max_cliques(g).noncanonical);
}

TEST_CASE("budget exhaustion is reported, not truncated") {
  const Construction e = extremal_construction(basis_for(9));
  CHECK_THROWS_AS(max_cliques_through_zero(e.graph, SearchOptions{3}), BudgetExceeded);
  CHECK_THROWS_AS(maximal_cliques_through_zero(e.graph, SearchOptions{3}), BudgetExceeded);
  try {
    count_max_cliques(e.graph, SearchOptions{3});
  } catch (const BudgetExceeded& ex) {
    CHECK(ex.nodes_visited() >= 3);
  }
}

TEST_CASE("maximal cliques of a generic bit graph") {
  // Path 0-1-2 plus triangle 0-3-4: cliques through 0 are {0,1} and {0,3,4}.
  BitGraph g(5);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 3);
  g.add_edge(0, 4);
  g.add_edge(3, 4);
  const auto cl = maximal_cliques_containing(g, 0);
  REQUIRE(cl.size() == 2);
  CHECK(cl[0] == std::vector<std::uint32_t>{0, 1});
  CHECK(cl[1] == std::vector<std::uint32_t>{0, 3, 4});
  CHECK(maximal_cliques_containing(BitGraph(1), 0) == std::vector<std::vector<std::uint32_t>>{{0}});
}

TEST_CASE("nexus, intersections and Baer subarrays on X_9") {
  const Construction x = oval_graph_xq(basis_for(9));
  const auto cl = max_cliques_through_zero(x.graph);
  for (const auto& c : cl) {
    const NexusResult nx = nexus_check(x.graph, c);
    CHECK(nx.delsarte);
    if (c.kind == CliqueKind::noncanonical_maximum) CHECK(baer_subarray_check(x.graph, c));
  }
  CHECK(exact_sqrt(9) == 3u);
  CHECK_FALSE(exact_sqrt(8).has_value());
}

TEST_CASE("make_clique classifies by size and directions") {
  const auto b = basis_for(5);
  const PeisertGraph g(b, {0, 1, 2});
  const Clique small = make_clique(g, {Elem{0}, b->coset_rep(1)});
  CHECK(small.kind == CliqueKind::maximal_submaximum);
  CHECK(to_string(CliqueKind::canonical) == "canonical");
}
