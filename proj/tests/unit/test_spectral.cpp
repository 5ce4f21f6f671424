#include <doctest.h>

#include "peisert/constructions.hpp"
#include "peisert/error.hpp"
#include "peisert/spectral.hpp"

using namespace peisert;

namespace {

BasisPtr basis_for(std::uint32_t q) {
  const auto [p, n] = prime_power(q);
  return make_basis(make_tower(p, n));
}

}  // namespace

TEST_CASE("weighted-distribution bounds") {
  const WdbBounds b = wdb_bounds(4, 9);
  CHECK(b.positive == 12);
  CHECK(b.negative == 8);
  CHECK_THROWS_AS(wdb_bounds(1, 9), InvalidArgument);
  CHECK_THROWS_AS(wdb_bounds(9, 9), InvalidArgument);
}

TEST_CASE("f1 is tight for every rotation of C_q") {
  const PeisertGraph g = oval_graph_xq(basis_for(16)).graph;
  const Clique line = canonical_clique(g, g.directions().back());
  for (int i = 0; i < 5; ++i) {
    const Eigenfunction f = build_f1(g, line, i);
    CHECK(eigenvalue_of(g, f.values) == 16 - 4 - 1);
    CHECK(f.support_size() == 24);
    CHECK(f.sum() == 0);
  }
}

TEST_CASE("eigenvalue_of rejects zero and non-eigen functions") {
  const PeisertGraph g = oval_graph_xq(basis_for(9)).graph;
  std::vector<int> f(81, 0);
  CHECK_FALSE(eigenvalue_of(g, f).has_value());
  f[0] = 1;
  CHECK_FALSE(eigenvalue_of(g, f).has_value());
  CHECK_THROWS_AS(eigenvalue_of(g, std::vector<int>(3, 0)), InvalidArgument);
}

TEST_CASE("witness verification catches bad shapes") {
  const PeisertGraph g = oval_graph_xq(basis_for(9)).graph;
  WitnessSubgraph w = f2_witness(g);
  CHECK(verify_witness(g, w));
  w.kind = WitnessKind::isolated_clique_pair;
  CHECK_FALSE(verify_witness(g, w));
  WitnessSubgraph overlap = f2_witness(g);
  overlap.t1.push_back(overlap.t0.front());
  CHECK_THROWS_AS(verify_witness(g, overlap), InvalidArgument);
  CHECK(to_string(WitnessKind::complete_bipartite) == "complete_bipartite");
}

TEST_CASE("C_q must be a non-canonical clique of the graph") {
  const auto b = basis_for(9);
  CHECK_NOTHROW(clique_cq(oval_graph_xq(b).graph, 0));
  CHECK_THROWS_AS(clique_cq(PeisertGraph(b, {0, 1, 2}), 0), InvalidArgument);
  const PeisertGraph x = oval_graph_xq(b).graph;
  const Clique line = canonical_clique(x, x.directions().front());
  CHECK_THROWS_AS(build_f1(x, clique_cq(x, 0), 0), InvalidArgument);
  CHECK(build_f1(x, line, 0).eigenvalue == 5);
}
