#include <doctest.h>

#include <algorithm>
#include <set>

#include "peisert/error.hpp"
#include "peisert/plane.hpp"

using namespace peisert;

TEST_CASE("projective indices cover PG(1,q) once") {
  const auto t = make_tower(3, 2);
  std::set<int> seen;
  for (Elem a : t->fq_elements()) {
    for (Elem b : t->fq_elements()) {
      if (a.code == 0 && b.code == 0) continue;
      const int i = pg_index(*t, a, b);
      seen.insert(i);
      const auto pt = pg_point(*t, i);
      // (a, b) is a nonzero multiple of the normalized point.
      const Elem lambda = pt.a.code != 0 ? t->div(a, pt.a) : t->div(b, pt.b);
      CHECK(t->mul(lambda, pt.a) == a);
      CHECK(t->mul(lambda, pt.b) == b);
    }
  }
  CHECK(seen.size() == 10);
  CHECK(*seen.begin() == 0);
  CHECK(*seen.rbegin() == 9);
  CHECK(pg_to_string(*t, 0) == "[0:1]");
  CHECK(pg_to_string(*t, 1) == "[1:0]");
  CHECK(pg_to_string(*t, 2) == "[1:1]");
}

TEST_CASE("basis coordinates: pi is a bijection onto F_q x F_q") {
  const auto b = make_basis(make_tower(2, 2));
  const auto& t = b->tower();
  for (std::uint32_t c = 0; c < t.order(); ++c) {
    const Elem x{c};
    CHECK(b->point(b->pi(x)) == x);
  }
  CHECK(b->direction(GaloisField::one()) == 1);
  CHECK(b->direction(b->beta()) == 0);
  CHECK_THROWS_AS(make_basis(make_tower(2, 2), GaloisField::one()), InvalidArgument);
}

TEST_CASE("coset representatives realize their direction") {
  const auto b = make_basis(make_tower(5, 1));
  for (int d = 0; d <= 5; ++d) CHECK(b->direction(b->coset_rep(d)) == d);
}

TEST_CASE("direction masks round-trip and complements partition the line") {
  const DirectionSet d{0, 3, 5};
  CHECK(directions_from_mask(direction_mask(d)) == d);
  const auto c = complement_directions(7, d);
  CHECK(c.size() == 5);
  for (int x : d) CHECK(std::find(c.begin(), c.end(), x) == c.end());
  CHECK(mask_less(0b011, 0b101));
  CHECK_FALSE(mask_less(0b101, 0b011));
  CHECK_FALSE(mask_less(0b101, 0b101));
}

TEST_CASE("PGammaL orbits: group elements preserve set sizes and canonical forms are orbit invariants") {
  const auto t = make_tower(2, 3);
  const ProjectiveLine line(t);
  CHECK(line.size() == 9);
  const DirectionSet a{0, 1, 2, 5};
  const auto canon = line.canonical(a);
  CHECK(canon.size() == 4);
  for (const auto& g : line.generators()) {
    DirectionSet img;
    for (int x : a) img.push_back(g[static_cast<std::size_t>(x)]);
    std::sort(img.begin(), img.end());
    CHECK(line.canonical(img) == canon);
    CHECK(line.equivalent(a, img));
  }
  // 3-transitivity: every 3-set is equivalent to {0, 1, 2}.
  CHECK(line.canonical(DirectionSet{3, 6, 8}) == DirectionSet{0, 1, 2});
  CHECK(line.orbit(direction_mask(DirectionSet{0, 1, 2})).size() == 84);
}

TEST_CASE("k-linearity of lines, subfield planes and non-subspaces") {
  const auto b = make_basis(make_tower(3, 2));
  const auto& t = b->tower();
  std::vector<Elem> line(t.fq_elements().begin(), t.fq_elements().end());
  CHECK(k_linearity(*b, line) == 2);

  // F_3-span of 1 and beta: linear over F_3 only.
  std::vector<Elem> plane;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) plane.push_back(t.add(t.field().from_int(i), t.mul(t.field().from_int(j), b->beta())));
  }
  CHECK(k_linearity(*b, plane) == 1);

  std::vector<Elem> bent = line;
  bent.back() = b->beta();
  CHECK_FALSE(k_linearity(*b, bent).has_value());
  CHECK_THROWS_AS(k_linearity(*b, std::vector<Elem>{GaloisField::zero()}), InvalidArgument);
}
