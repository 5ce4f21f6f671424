#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "peisert/bitgraph.hpp"
#include "peisert/fields.hpp"

namespace peisert {

using FieldPtr = std::shared_ptr<const GaloisField>;

/// The field F_r as a standalone table, r a prime power.
FieldPtr make_field(std::uint32_t r);

/// Dense square matrix over a GaloisField, row-major.
struct Matrix {
  int n = 0;
  std::vector<Elem> entries;

  Elem at(int i, int j) const { return entries[static_cast<std::size_t>(i * n + j)]; }
  Elem& at(int i, int j) { return entries[static_cast<std::size_t>(i * n + j)]; }

  static Matrix identity(int n);
  /// Rows of small integers, reduced into the prime subfield.
  static Matrix from_ints(const GaloisField& f, const std::vector<std::vector<long long>>& rows);
};

Elem determinant(const GaloisField& f, Matrix m);
std::vector<Elem> apply(const GaloisField& f, const Matrix& m, std::span<const Elem> x);

/// Quadratic form sum_{i <= j} c_ij x_i x_j on V(dim, r).
class QuadraticForm {
 public:
  /// `coefficients` is a dim x dim row-major matrix; only entries with i <= j
  /// are used and the rest must be zero.
  QuadraticForm(FieldPtr field, int dim, std::vector<Elem> coefficients);

  /// x_1 x_2 + x_3 x_4 + ... + x_{2e-1} x_{2e}.
  static QuadraticForm hyperbolic(FieldPtr field, int e);
  static QuadraticForm zero(FieldPtr field, int dim);

  const GaloisField& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  int dimension() const { return dim_; }
  Elem coefficient(int i, int j) const { return c_[static_cast<std::size_t>(i * dim_ + j)]; }

  Elem evaluate(std::span<const Elem> x) const;

 private:
  FieldPtr field_;
  int dim_;
  std::vector<Elem> c_;
};

/// Largest vertex count accepted by form graphs.
inline constexpr std::uint32_t kMaxFormVertices = 4096;

/// Vertex index of a vector: sum of x_i.code * r^i, so x_1 is least significant.
std::uint32_t vector_index(const GaloisField& f, std::span<const Elem> x);
std::vector<Elem> index_vector(const GaloisField& f, int dim, std::uint32_t index);

/// Cayley graph on V(dim, r) with u ~ v iff f(u - v) = 0 and u != v.
struct FormGraph {
  QuadraticForm form;
  BitGraph graph;
  /// Number of nonzero vectors in the zero set, i.e. the valency.
  std::uint32_t valency = 0;
};

FormGraph quad_form_graph(const QuadraticForm& f);

/// Affine polar graph VO+(2e, r).
FormGraph vo_plus(int e, std::uint32_t r);

/// True iff f1(Bx) = f2(x) for every x. Throws InvalidArgument when B is
/// singular or the dimensions disagree.
bool form_equivalence_check(const QuadraticForm& f1, const QuadraticForm& f2, const Matrix& b);

}  // namespace peisert
