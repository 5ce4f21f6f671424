#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace peisert {

/// Polynomial over a prime field, coefficients listed from the constant term up.
using Poly = std::vector<int>;

/// A field element. `code` is the base-p digit encoding of the element's
/// coordinate vector in the polynomial basis of its field, so code 0 is zero,
/// code 1 is one, and codes below p are the prime subfield.
struct Elem {
  std::uint32_t code = 0;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Exhaustive trial division by every monic polynomial of degree <= deg/2.
bool is_irreducible(int p, const Poly& f);

/// Least monic irreducible polynomial of the given degree, ordering candidates
/// lexicographically by coefficient starting at the constant term.
Poly least_irreducible(int p, int degree);

std::string poly_to_string(const Poly& f, char var = 't');

/// Table-driven finite field F_{p^d}. Immutable after construction.
class GaloisField {
 public:
  /// `modulus` defaults to least_irreducible(p, degree); `generator` to the
  /// least code of multiplicative order p^d - 1.
  GaloisField(int p, int degree, std::optional<Poly> modulus = std::nullopt,
              std::optional<std::uint32_t> generator = std::nullopt);

  int characteristic() const { return p_; }
  int degree() const { return degree_; }
  std::uint32_t order() const { return order_; }
  const Poly& modulus() const { return modulus_; }
  Elem generator() const { return gen_; }

  static constexpr Elem zero() { return Elem{0}; }
  static constexpr Elem one() { return Elem{1}; }
  /// The image of the integer k in the prime subfield.
  Elem from_int(long long k) const;

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return Elem{a.code ^ b.code};
    if (a.code == 0) return b;
    if (b.code == 0) return a;
    const std::uint32_t m = order_ - 1;
    std::uint32_t k = (static_cast<std::uint32_t>(log_[b.code]) + m - static_cast<std::uint32_t>(log_[a.code])) % m;
    const std::int32_t z = zech_[k];
    if (z < 0) return zero();
    return Elem{exp_[static_cast<std::uint32_t>(log_[a.code]) + static_cast<std::uint32_t>(z)]};
  }
  Elem neg(Elem a) const {
    if (p_ == 2 || a.code == 0) return a;
    return Elem{exp_[static_cast<std::uint32_t>(log_[a.code]) + (order_ - 1) / 2]};
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a.code == 0 || b.code == 0) return zero();
    return Elem{exp_[static_cast<std::uint32_t>(log_[a.code]) + static_cast<std::uint32_t>(log_[b.code])]};
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, long long e) const;

  /// Discrete logarithm with respect to generator(); `a` must be nonzero.
  std::uint32_t log(Elem a) const;
  Elem exp(long long k) const;
  std::uint64_t multiplicative_order(Elem a) const;

  std::vector<int> digits(Elem a) const;
  Elem from_digits(std::span<const int> digits) const;

  /// Minimal polynomial over the prime field.
  Poly minimal_polynomial(Elem a) const;
  /// Evaluate a polynomial with prime-field coefficients.
  Elem evaluate(const Poly& f, Elem x) const;
  /// Evaluate a polynomial whose coefficients are field elements.
  Elem evaluate(std::span<const Elem> coeffs, Elem x) const;

 private:
  int p_;
  int degree_;
  std::uint32_t order_;
  Poly modulus_;
  Elem gen_;
  std::vector<std::uint32_t> exp_;  // doubled so log sums need no reduction
  std::vector<std::int32_t> log_;
  std::vector<std::int32_t> zech_;  // log(1 + g^k), -1 when that sum is zero
};

/// Optional pinned choices for make_tower. Anything left empty is chosen
/// deterministically.
struct TowerOverrides {
  std::optional<Poly> top_modulus;  // degree 2n over F_p, defines F_{q^2}
  std::optional<Poly> fq_modulus;   // degree n over F_p; its least root becomes epsilon
  /// Monic degree-2 polynomial over F_q, coefficients as epsilon-basis codes
  /// (see FieldTower::eps_code). Its least root is the default basis element.
  std::optional<std::vector<std::uint32_t>> fq2_modulus;
  std::optional<std::uint32_t> generator;  // code of a primitive element of F_{q^2}
};

/// The tower F_p < F_q < F_{q^2}, q = p^n, realized as one table-driven field
/// of order q^2. Subfields are the fixed sets of Frobenius powers.
class FieldTower {
 public:
  /// Largest supported top-field order.
  static constexpr std::uint64_t kMaxOrder = 1u << 20;

  FieldTower(int p, int n, const TowerOverrides& overrides = {});

  const GaloisField& field() const { return field_; }
  int p() const { return p_; }
  int n() const { return n_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t order() const { return field_.order(); }

  Elem epsilon() const { return epsilon_; }
  Elem generator() const { return field_.generator(); }
  const Poly& fq_modulus() const { return fq_modulus_; }
  const Poly& top_modulus() const { return field_.modulus(); }
  /// Coefficients of the quadratic over F_q as epsilon-basis codes.
  const std::vector<std::uint32_t>& fq2_modulus() const { return fq2_modulus_; }
  /// Least root of fq2_modulus; never in F_q.
  Elem quadratic_root() const { return quad_root_; }

  // Arithmetic shortcuts on the top field.
  Elem add(Elem a, Elem b) const { return field_.add(a, b); }
  Elem sub(Elem a, Elem b) const { return field_.sub(a, b); }
  Elem neg(Elem a) const { return field_.neg(a); }
  Elem mul(Elem a, Elem b) const { return field_.mul(a, b); }
  Elem div(Elem a, Elem b) const { return field_.div(a, b); }
  Elem inv(Elem a) const { return field_.inv(a); }
  Elem pow(Elem a, long long e) const { return field_.pow(a, e); }

  /// x lies in F_{p^m}; m must divide 2n.
  bool in_subfield(Elem x, int m) const;
  bool in_fq(Elem x) const { return fq_index_[x.code] >= 0; }
  /// x^(p^k).
  Elem frobenius(Elem x, int k) const;
  /// Trace from F_{p^from_degree} down to F_{p^to_degree}.
  Elem trace(Elem x, int from_degree, int to_degree) const;
  /// Norm x^((p^from - 1)/(p^to - 1)).
  Elem norm(Elem x, int from_degree, int to_degree) const;
  /// A primitive element of the subfield F_{p^m}.
  Elem subfield_generator(int m) const;
  /// All elements of F_{p^m}, zero first, then increasing powers of subfield_generator(m).
  std::vector<Elem> subfield_elements(int m) const;
  /// Least-code d in F_{p^m} with absolute trace 1.
  Elem choose_trace_one(int m) const;
  /// Least-code non-square of F_{p^m}^*; p must be odd.
  Elem least_nonsquare(int m) const;

  /// F_q indexing: 0 is zero, i >= 1 is epsilon^(i-1).
  Elem fq_element(int index) const { return fq_elems_[static_cast<std::size_t>(index)]; }
  int fq_index(Elem x) const { return fq_index_[x.code]; }
  std::span<const Elem> fq_elements() const { return fq_elems_; }

  /// Coordinates of x in F_q over the basis 1, eps, ..., eps^(n-1), packed base p.
  std::uint32_t eps_code(Elem x) const;
  Elem from_eps_code(std::uint32_t code) const;

 private:
  GaloisField field_;
  int p_;
  int n_;
  std::uint32_t q_;
  Elem epsilon_;
  Poly fq_modulus_;
  std::vector<std::uint32_t> fq2_modulus_;
  Elem quad_root_;
  std::vector<Elem> fq_elems_;
  std::vector<int> fq_index_;
  std::vector<std::uint32_t> eps_code_of_;  // indexed by fq index
  std::vector<Elem> from_eps_code_;
};

using TowerPtr = std::shared_ptr<const FieldTower>;

TowerPtr make_tower(int p, int n, const TowerOverrides& overrides = {});

/// Split a prime power into (p, n); throws InvalidArgument otherwise.
std::pair<int, int> prime_power(std::uint64_t q);

}  // namespace peisert
