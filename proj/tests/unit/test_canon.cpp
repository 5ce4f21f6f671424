#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "peisert/canon.hpp"
#include "peisert/constructions.hpp"
#include "peisert/error.hpp"

using namespace peisert;

namespace {

BitGraph relabel(const BitGraph& g, const std::vector<std::uint32_t>& perm) {
  BitGraph h(g.size());
  for (std::uint32_t u = 0; u < g.size(); ++u) {
    for (std::uint32_t v = u + 1; v < g.size(); ++v) {
      if (g.test(u, v)) h.add_edge(perm[u], perm[v]);
    }
  }
  return h;
}

BitGraph cycle(std::size_t n) {
  BitGraph g(n);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

}  // namespace

TEST_CASE("certificates are invariant under relabeling") {
  const auto b = make_basis(make_tower(3, 2));
  const BitGraph g = oval_graph_xq(b).graph.bits();
  std::vector<std::uint32_t> perm(g.size());
  std::iota(perm.begin(), perm.end(), 0u);
  std::mt19937 rng(7);
  const auto base = canonical_form(g).certificate;
  for (int trial = 0; trial < 3; ++trial) {
    std::shuffle(perm.begin(), perm.end(), rng);
    const BitGraph h = relabel(g, perm);
    CHECK(canonical_form(h).certificate == base);
    const auto map = find_isomorphism(g, h);
    REQUIRE(map.has_value());
    CHECK(is_isomorphism(g, h, *map));
  }
}

TEST_CASE("non-isomorphic regular graphs get different certificates") {
  // C6 and two triangles are both 2-regular on 6 vertices.
  BitGraph two_triangles(6);
  for (std::size_t base : {0u, 3u}) {
    two_triangles.add_edge(base, base + 1);
    two_triangles.add_edge(base + 1, base + 2);
    two_triangles.add_edge(base, base + 2);
  }
  CHECK(canonical_form(cycle(6)).certificate != canonical_form(two_triangles).certificate);
  CHECK_FALSE(find_isomorphism(cycle(6), two_triangles).has_value());
}

TEST_CASE("automorphism generators are automorphisms") {
  const BitGraph g = cycle(8);
  const CanonicalForm c = canonical_form(g);
  CHECK_FALSE(c.automorphisms.empty());
  for (const auto& a : c.automorphisms) CHECK(is_isomorphism(g, g, a));
  CHECK(c.digest().size() > 0);
}

TEST_CASE("is_isomorphism rejects non-bijections and wrong maps") {
  const BitGraph g = cycle(5);
  CHECK_FALSE(is_isomorphism(g, g, {0, 0, 1, 2, 3}));
  CHECK_FALSE(is_isomorphism(g, g, {0, 2, 1, 3, 4}));
  CHECK_FALSE(is_isomorphism(g, g, {0, 1, 2}));
}

TEST_CASE("canonical labeling honours the node budget") {
  const auto b = make_basis(make_tower(2, 3));
  const BitGraph g = extremal_construction(b).graph.bits();
  CanonOptions opts;
  opts.node_budget = 1;
  CHECK_THROWS_AS(canonical_form(g, opts), BudgetExceeded);
}

TEST_CASE("vertex colours restrict the labeling") {
  const BitGraph g = cycle(4);
  CanonOptions a, b;
  a.colors = {0, 1, 1, 1};
  b.colors = {1, 1, 1, 0};
  CHECK(canonical_form(g, a).certificate == canonical_form(g, b).certificate);
  CanonOptions bad;
  bad.colors = {0, 1};
  CHECK_THROWS_AS(canonical_form(g, bad), InvalidArgument);
}
