#include <doctest.h>

#include <numeric>
#include <sstream>

#include "oracle.hpp"
#include "peisert/error.hpp"
#include "peisert/graph.hpp"

using namespace peisert;

TEST_CASE("closed-form parameters and primitivity") {
  const SrgParams s = srg_params_of_type(4, 9);
  CHECK(s.v == 81);
  CHECK(s.k == 32);
  CHECK(s.lambda == 13);
  CHECK(s.mu == 12);
  CHECK(s.r1 == 5);
  CHECK(s.r2 == -4);
  CHECK(s.mult1 + s.mult2 + 1 == s.v);
  CHECK(s.primitive);
  CHECK_FALSE(srg_params_of_type(1, 9).primitive);
  CHECK_FALSE(srg_params_of_type(9, 9).primitive);
  CHECK_THROWS_AS(srg_params_of_type(0, 9), InvalidArgument);
  CHECK_THROWS_AS(srg_params_of_type(11, 9), InvalidArgument);
}

TEST_CASE("directions are validated") {
  const auto b = make_basis(make_tower(5, 1));
  CHECK_THROWS_AS(PeisertGraph(b, {}), InvalidArgument);
  CHECK_THROWS_AS(PeisertGraph(b, {0, 0}), InvalidArgument);
  CHECK_THROWS_AS(PeisertGraph(b, {6}), InvalidArgument);
  CHECK_THROWS_AS(PeisertGraph(b, {-1}), InvalidArgument);
}

TEST_CASE("adjacency is the oracle's, and every type is strongly regular") {
  const auto b = make_basis(make_tower(7, 1));
  for (int m = 1; m <= 7; ++m) {
    DirectionSet d(static_cast<std::size_t>(m));
    std::iota(d.begin(), d.end(), 1);
    const PeisertGraph g(b, d);
    const auto adj = oracle::adjacency(g);
    for (std::uint32_t u = 0; u < g.num_vertices(); ++u) {
      for (std::uint32_t v = 0; v < g.num_vertices(); ++v) {
        REQUIRE(static_cast<bool>(adj[u][v]) == g.bits().test(u, v));
      }
    }
    CHECK(g.connection_set().size() == static_cast<std::size_t>(m) * 6);
    CHECK(srg_verify(g) == srg_params_of_type(m, 7));
    CHECK_NOTHROW(verify_spectrum(g));
  }
}

TEST_CASE("character spectrum has the restricted eigenvalues with the right multiplicities") {
  const auto b = make_basis(make_tower(2, 2));
  const PeisertGraph g(b, {0, 1});
  const auto spec = character_spectrum(g);
  const SrgParams s = srg_params_of_type(2, 4);
  REQUIRE(spec.size() == 3);
  CHECK(spec.at(static_cast<long long>(s.k)) == 1);
  CHECK(spec.at(s.r1) == s.mult1);
  CHECK(spec.at(s.r2) == s.mult2);
}

TEST_CASE("complement has the complementary directions") {
  const auto b = make_basis(make_tower(5, 1));
  const PeisertGraph g(b, {0, 2, 3});
  const PeisertGraph c = complement(g);
  CHECK(c.directions() == DirectionSet{1, 4, 5});
  for (std::uint32_t u = 0; u < 25; ++u) {
    for (std::uint32_t v = u + 1; v < 25; ++v) CHECK(g.bits().test(u, v) != c.bits().test(u, v));
  }
  CHECK_THROWS_AS(complement(PeisertGraph(b, {0, 1, 2, 3, 4, 5})), InvalidArgument);
}

TEST_CASE("edge list has one line per edge") {
  const auto b = make_basis(make_tower(3, 1));
  const PeisertGraph g(b, {0, 1});
  std::ostringstream os;
  write_edge_list(g, os);
  const std::string s = os.str();
  CHECK(std::count(s.begin(), s.end(), '\n') == 9 * 4 / 2);
}
