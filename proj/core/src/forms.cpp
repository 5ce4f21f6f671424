#include "peisert/forms.hpp"

#include <utility>

#include "peisert/error.hpp"

namespace peisert {

FieldPtr make_field(std::uint32_t r) {
  const auto [p, s] = prime_power(r);
  return std::make_shared<const GaloisField>(p, s);
}

Matrix Matrix::identity(int n) {
  Matrix m{n, std::vector<Elem>(static_cast<std::size_t>(n * n), Elem{0})};
  for (int i = 0; i < n; ++i) m.at(i, i) = Elem{1};
  return m;
}

Matrix Matrix::from_ints(const GaloisField& f, const std::vector<std::vector<long long>>& rows) {
  const int n = static_cast<int>(rows.size());
  Matrix m{n, {}};
  for (const auto& row : rows) {
    require(static_cast<int>(row.size()) == n, "matrix must be square");
    for (long long v : row) m.entries.push_back(f.from_int(v));
  }
  return m;
}

Elem determinant(const GaloisField& f, Matrix m) {
  Elem det = Elem{1};
  const int n = m.n;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    while (pivot < n && m.at(pivot, col).code == 0) ++pivot;
    if (pivot == n) return Elem{0};
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(m.at(pivot, j), m.at(col, j));
      det = f.neg(det);
    }
    const Elem lead = m.at(col, col);
    det = f.mul(det, lead);
    const Elem inv = f.inv(lead);
    for (int i = col + 1; i < n; ++i) {
      const Elem factor = f.mul(m.at(i, col), inv);
      if (factor.code == 0) continue;
      for (int j = col; j < n; ++j) m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(col, j)));
    }
  }
  return det;
}

std::vector<Elem> apply(const GaloisField& f, const Matrix& m, std::span<const Elem> x) {
  require(static_cast<int>(x.size()) == m.n, "vector length does not match the matrix");
  std::vector<Elem> y(x.size(), Elem{0});
  for (int i = 0; i < m.n; ++i) {
    for (int j = 0; j < m.n; ++j) y[static_cast<std::size_t>(i)] = f.add(y[static_cast<std::size_t>(i)], f.mul(m.at(i, j), x[static_cast<std::size_t>(j)]));
  }
  return y;
}

QuadraticForm::QuadraticForm(FieldPtr field, int dim, std::vector<Elem> coefficients)
    : field_(std::move(field)), dim_(dim), c_(std::move(coefficients)) {
  require(field_ != nullptr, "null field");
  require(dim_ >= 1, "a quadratic form needs at least one variable");
  require(c_.size() == static_cast<std::size_t>(dim_ * dim_), "coefficient matrix has the wrong size");
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      require(c_[static_cast<std::size_t>(i * dim_ + j)].code < field_->order(), "coefficient outside the field");
      if (j < i) require(coefficient(i, j).code == 0, "coefficients below the diagonal must be zero");
    }
  }
}

QuadraticForm QuadraticForm::hyperbolic(FieldPtr field, int e) {
  require(e >= 1, "hyperbolic form needs e >= 1");
  const int dim = 2 * e;
  std::vector<Elem> c(static_cast<std::size_t>(dim * dim), Elem{0});
  for (int i = 0; i < e; ++i) c[static_cast<std::size_t>(2 * i * dim + 2 * i + 1)] = Elem{1};
  return QuadraticForm(std::move(field), dim, std::move(c));
}

QuadraticForm QuadraticForm::zero(FieldPtr field, int dim) {
  require(dim >= 1, "a quadratic form needs at least one variable");
  return QuadraticForm(std::move(field), dim, std::vector<Elem>(static_cast<std::size_t>(dim * dim), Elem{0}));
}

Elem QuadraticForm::evaluate(std::span<const Elem> x) const {
  require(static_cast<int>(x.size()) == dim_, "vector length does not match the form");
  const GaloisField& f = *field_;
  Elem sum{0};
  for (int i = 0; i < dim_; ++i) {
    if (x[static_cast<std::size_t>(i)].code == 0) continue;
    Elem row{0};
    for (int j = i; j < dim_; ++j) row = f.add(row, f.mul(coefficient(i, j), x[static_cast<std::size_t>(j)]));
    sum = f.add(sum, f.mul(x[static_cast<std::size_t>(i)], row));
  }
  return sum;
}

std::uint32_t vector_index(const GaloisField& f, std::span<const Elem> x) {
  std::uint32_t idx = 0;
  for (std::size_t i = x.size(); i-- > 0;) idx = idx * f.order() + x[i].code;
  return idx;
}

std::vector<Elem> index_vector(const GaloisField& f, int dim, std::uint32_t index) {
  std::vector<Elem> x(static_cast<std::size_t>(dim));
  for (auto& c : x) {
    c = Elem{index % f.order()};
    index /= f.order();
  }
  return x;
}

namespace {

std::uint32_t vertex_count(const GaloisField& f, int dim) {
  std::uint64_t n = 1;
  for (int i = 0; i < dim; ++i) {
    n *= f.order();
    require(n <= kMaxFormVertices, "form graphs are limited to " + std::to_string(kMaxFormVertices) + " vertices");
  }
  return static_cast<std::uint32_t>(n);
}

}  // namespace

FormGraph quad_form_graph(const QuadraticForm& f) {
  const GaloisField& fld = f.field();
  const int dim = f.dimension();
  const std::uint32_t n = vertex_count(fld, dim);

  std::vector<std::vector<Elem>> vecs(n);
  std::vector<std::uint32_t> zeros;
  for (std::uint32_t i = 0; i < n; ++i) {
    vecs[i] = index_vector(fld, dim, i);
    if (i != 0 && f.evaluate(vecs[i]).code == 0) zeros.push_back(i);
  }
  BitGraph g(n);
  std::vector<Elem> sum(static_cast<std::size_t>(dim));
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t z : zeros) {
      for (int k = 0; k < dim; ++k) sum[static_cast<std::size_t>(k)] = fld.add(vecs[u][static_cast<std::size_t>(k)], vecs[z][static_cast<std::size_t>(k)]);
      const std::uint32_t v = vector_index(fld, sum);
      if (u < v) g.add_edge(u, v);
    }
  }
  return FormGraph{f, std::move(g), static_cast<std::uint32_t>(zeros.size())};
}

FormGraph vo_plus(int e, std::uint32_t r) {
  require(e >= 2, "VO+(2e, r) needs e >= 2");
  return quad_form_graph(QuadraticForm::hyperbolic(make_field(r), e));
}

bool form_equivalence_check(const QuadraticForm& f1, const QuadraticForm& f2, const Matrix& b) {
  require(f1.dimension() == f2.dimension() && b.n == f1.dimension(), "dimensions do not match");
  require(f1.field().order() == f2.field().order() && f1.field().modulus() == f2.field().modulus(),
          "forms are over different fields");
  const GaloisField& fld = f1.field();
  require(determinant(fld, b).code != 0, "matrix is singular");
  const std::uint32_t n = vertex_count(fld, f1.dimension());
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto x = index_vector(fld, f1.dimension(), i);
    if (f1.evaluate(apply(fld, b, x)) != f2.evaluate(x)) return false;
  }
  return true;
}

}  // namespace peisert
