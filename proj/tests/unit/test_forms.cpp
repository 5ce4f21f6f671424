#include <doctest.h>

#include "peisert/error.hpp"
#include "peisert/forms.hpp"

using namespace peisert;

TEST_CASE("vector indices round-trip") {
  const FieldPtr f = make_field(3);
  for (std::uint32_t i = 0; i < 81; ++i) CHECK(vector_index(*f, index_vector(*f, 4, i)) == i);
}

TEST_CASE("determinants") {
  const FieldPtr f = make_field(5);
  CHECK(determinant(*f, Matrix::identity(4)) == GaloisField::one());
  const Matrix m = Matrix::from_ints(*f, {{1, 2}, {3, 4}});
  CHECK(determinant(*f, m) == f->from_int(-2));
  const Matrix singular = Matrix::from_ints(*f, {{1, 2}, {2, 4}});
  CHECK(determinant(*f, singular) == GaloisField::zero());
}

TEST_CASE("VO+(2e, r) has the polar-graph valency") {
  // (r^e - 1)(r^(e-1) + 1) nonzero singular vectors of the hyperbolic form.
  for (auto [e, r] : {std::pair{2, 2u}, std::pair{2, 3u}, std::pair{3, 2u}}) {
    const FormGraph g = vo_plus(e, r);
    std::uint32_t re = 1, re1 = 1;
    for (int i = 0; i < e; ++i) re *= r;
    re1 = re / r;
    CHECK(g.valency == (re - 1) * (re1 + 1));
    for (std::uint32_t u = 0; u < g.graph.size(); ++u) CHECK(g.graph.degree(u) == g.valency);
  }
  CHECK_THROWS_AS(vo_plus(1, 3), InvalidArgument);
  CHECK_THROWS_AS(vo_plus(2, 6), InvalidArgument);
  CHECK_THROWS_AS(vo_plus(4, 5), InvalidArgument);
}

TEST_CASE("form equivalence under an invertible change of variables") {
  const FieldPtr f = make_field(3);
  const QuadraticForm h = QuadraticForm::hyperbolic(f, 1);
  // x1^2 - x2^2 = (x1 + x2)(x1 - x2).
  std::vector<Elem> c(4, GaloisField::zero());
  c[0] = GaloisField::one();
  c[3] = f->from_int(-1);
  const QuadraticForm diff(f, 2, c);
  CHECK(form_equivalence_check(h, diff, Matrix::from_ints(*f, {{1, 1}, {1, -1}})));
  CHECK_FALSE(form_equivalence_check(h, diff, Matrix::identity(2)));
  CHECK_THROWS_AS(form_equivalence_check(h, diff, Matrix::from_ints(*f, {{1, 1}, {1, 1}})), InvalidArgument);
  CHECK_THROWS_AS(form_equivalence_check(h, QuadraticForm::zero(f, 3), Matrix::identity(2)), InvalidArgument);
}

TEST_CASE("quadratic forms reject lower-triangular coefficients") {
  const FieldPtr f = make_field(2);
  std::vector<Elem> c(4, GaloisField::zero());
  c[2] = GaloisField::one();
  CHECK_THROWS_AS(QuadraticForm(f, 2, c), InvalidArgument);
}
