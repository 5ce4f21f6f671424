#include <doctest.h>

#include "oracle.hpp"
#include "peisert/error.hpp"
#include "peisert/fields.hpp"

using namespace peisert;

TEST_CASE("prime_power splits prime powers and rejects the rest") {
  CHECK(prime_power(2) == std::pair{2, 1});
  CHECK(prime_power(27) == std::pair{3, 3});
  CHECK(prime_power(1024) == std::pair{2, 10});
  CHECK_THROWS_AS(prime_power(1), InvalidArgument);
  CHECK_THROWS_AS(prime_power(12), InvalidArgument);
}

TEST_CASE("least irreducible polynomials are irreducible and minimal") {
  for (int p : {2, 3, 5}) {
    for (int d = 1; d <= 4; ++d) {
      const Poly f = least_irreducible(p, d);
      REQUIRE(f.size() == static_cast<std::size_t>(d) + 1);
      CHECK(f.back() == 1);
      CHECK(oracle::irreducible(p, f));
      CHECK(is_irreducible(p, f));
    }
  }
  // x^2 + 1 is reducible over F_2 and F_5, irreducible over F_3.
  CHECK_FALSE(is_irreducible(2, {1, 0, 1}));
  CHECK(is_irreducible(3, {1, 0, 1}));
  CHECK_FALSE(is_irreducible(5, {1, 0, 1}));
}

TEST_CASE("field axioms hold exhaustively for small fields") {
  for (auto [p, d] : {std::pair{2, 4}, std::pair{3, 2}, std::pair{5, 2}, std::pair{7, 2}}) {
    const GaloisField f(p, d);
    const std::uint32_t n = f.order();
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = 0; b < n; ++b) {
        const Elem x{a}, y{b};
        REQUIRE(f.add(x, y) == f.add(y, x));
        REQUIRE(f.mul(x, y) == f.mul(y, x));
        for (std::uint32_t c = 0; c < n; c += 3) {
          const Elem z{c};
          REQUIRE(f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z)));
          REQUIRE(f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z)));
        }
      }
    }
  }
}

TEST_CASE("powers, logs and orders agree") {
  const GaloisField f(3, 3);
  const Elem g = f.generator();
  CHECK(f.multiplicative_order(g) == 26);
  for (long long k = 0; k < 26; ++k) CHECK(f.log(f.exp(k)) == k);
  CHECK(f.pow(g, 26) == GaloisField::one());
  CHECK(f.pow(g, -1) == f.inv(g));
  CHECK_THROWS_AS(f.inv(GaloisField::zero()), InvalidArgument);
}

TEST_CASE("an explicit modulus must be irreducible of the right degree") {
  CHECK_THROWS_AS(GaloisField(2, 2, Poly{1, 0, 1}), InvalidArgument);
  CHECK_THROWS_AS(GaloisField(2, 3, Poly{1, 1, 1}), InvalidArgument);
  CHECK_NOTHROW(GaloisField(2, 3, Poly{1, 0, 1, 1}));
}

TEST_CASE("tower: F_q is the fixed field of the q-Frobenius, epsilon is primitive and a root of its modulus") {
  for (auto [p, n] : {std::pair{2, 1}, std::pair{2, 3}, std::pair{3, 2}, std::pair{5, 1}, std::pair{2, 4}}) {
    const auto t = make_tower(p, n);
    CHECK(t->fq_elements().size() == t->q());
    for (std::uint32_t c = 0; c < t->order(); ++c) {
      const Elem x{c};
      CHECK(t->in_fq(x) == (t->frobenius(x, n) == x));
    }
    if (t->q() > 2) CHECK(t->field().multiplicative_order(t->epsilon()) == t->q() - 1);
    Elem v = GaloisField::zero();
    Elem power = GaloisField::one();
    for (int c : t->fq_modulus()) {
      v = t->add(v, t->mul(t->field().from_int(c), power));
      power = t->mul(power, t->epsilon());
    }
    CHECK(v == GaloisField::zero());
    CHECK_FALSE(t->in_fq(t->quadratic_root()));
  }
}

TEST_CASE("eps codes round-trip on F_q") {
  const auto t = make_tower(3, 2);
  for (Elem x : t->fq_elements()) CHECK(t->from_eps_code(t->eps_code(x)) == x);
  CHECK(t->eps_code(GaloisField::one()) == 1);
  CHECK(t->eps_code(t->epsilon()) == 3);
}

TEST_CASE("trace and norm land in the target subfield") {
  const auto t = make_tower(2, 3);
  for (std::uint32_t c = 0; c < t->order(); ++c) {
    const Elem x{c};
    CHECK(t->in_fq(t->trace(x, 6, 3)));
    CHECK(t->in_fq(t->norm(x, 6, 3)));
    CHECK(t->trace(x, 6, 1).code <= 1);
  }
}

TEST_CASE("tower overrides reproduce the same tower") {
  const auto a = make_tower(3, 2);
  TowerOverrides ov;
  ov.top_modulus = a->top_modulus();
  ov.fq_modulus = a->fq_modulus();
  ov.fq2_modulus = a->fq2_modulus();
  const auto b = make_tower(3, 2, ov);
  CHECK(a->epsilon() == b->epsilon());
  CHECK(a->quadratic_root() == b->quadratic_root());

  TowerOverrides bad;
  bad.fq_modulus = Poly{1, 1, 1};  // (t - 1)^2 over F_3
  CHECK_THROWS_AS(make_tower(3, 2, bad), InvalidArgument);
  TowerOverrides wrong_degree;
  wrong_degree.top_modulus = Poly{1, 1};
  CHECK_THROWS_AS(make_tower(3, 2, wrong_degree), InvalidArgument);
}

TEST_CASE("towers beyond the table limit are rejected") {
  CHECK_THROWS_AS(make_tower(2, 11), InvalidArgument);
  CHECK_THROWS_AS(make_tower(4, 1), InvalidArgument);
}
