#include "peisert/fields.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "peisert/error.hpp"

namespace peisert {

namespace {

std::uint64_t ipow(std::uint64_t base, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

int mod_inverse(int a, int p) {
  // p is prime, so a^(p-2) works and avoids a signed extended gcd.
  long long r = 1, b = a % p, e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<int>(r);
}

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of a modulo a monic b.
Poly poly_mod(Poly a, const Poly& b, int p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const int lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = static_cast<int>((a[shift + i] + static_cast<long long>(p - lead) * b[i]) % p);
    }
    trim(a);
  }
  return a;
}

void require_monic_over(int p, const Poly& f, const char* what) {
  require(f.size() >= 2, std::string(what) + ": degree must be at least 1");
  for (int c : f) require(c >= 0 && c < p, std::string(what) + ": coefficient out of range");
  require(f.back() == 1, std::string(what) + ": polynomial must be monic");
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::pair<int, int> prime_power(std::uint64_t q) {
  require(q >= 2, "q must be a prime power >= 2");
  const auto f = prime_factors(q);
  require(f.size() == 1, "q = " + std::to_string(q) + " is not a prime power");
  int n = 0;
  while (q > 1) {
    q /= f[0];
    ++n;
  }
  return {static_cast<int>(f[0]), n};
}

bool is_irreducible(int p, const Poly& f) {
  Poly g = f;
  trim(g);
  const int deg = static_cast<int>(g.size()) - 1;
  if (deg < 1) return false;
  if (deg == 1) return true;
  // Make monic so poly_mod can divide by it.
  const int inv = mod_inverse(g.back(), p);
  for (int& c : g) c = static_cast<int>(static_cast<long long>(c) * inv % p);
  for (int d = 1; d <= deg / 2; ++d) {
    const std::uint64_t count = ipow(static_cast<std::uint64_t>(p), d);
    for (std::uint64_t k = 0; k < count; ++k) {
      Poly h(static_cast<std::size_t>(d) + 1, 0);
      std::uint64_t t = k;
      for (int i = 0; i < d; ++i) {
        h[static_cast<std::size_t>(i)] = static_cast<int>(t % static_cast<std::uint64_t>(p));
        t /= static_cast<std::uint64_t>(p);
      }
      h[static_cast<std::size_t>(d)] = 1;
      if (poly_mod(g, h, p).empty()) return false;
    }
  }
  return true;
}

Poly least_irreducible(int p, int degree) {
  require(is_prime(static_cast<std::uint64_t>(p)), "characteristic must be prime");
  require(degree >= 1, "degree must be positive");
  const std::uint64_t count = ipow(static_cast<std::uint64_t>(p), degree);
  for (std::uint64_t k = 0; k < count; ++k) {
    // The constant term is the most significant digit of k.
    Poly f(static_cast<std::size_t>(degree) + 1, 0);
    std::uint64_t t = k;
    for (int i = degree - 1; i >= 0; --i) {
      f[static_cast<std::size_t>(i)] = static_cast<int>(t % static_cast<std::uint64_t>(p));
      t /= static_cast<std::uint64_t>(p);
    }
    f[static_cast<std::size_t>(degree)] = 1;
    if (is_irreducible(p, f)) return f;
  }
  throw InternalInconsistency("no irreducible polynomial found");
}

std::string poly_to_string(const Poly& f, char var) {
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
    const int c = f[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || c != 1) os << c;
    if (i >= 1) os << var;
    if (i >= 2) os << '^' << i;
  }
  if (first) os << '0';
  return os.str();
}

// ---------------------------------------------------------------------------

GaloisField::GaloisField(int p, int degree, std::optional<Poly> modulus,
                         std::optional<std::uint32_t> generator)
    : p_(p), degree_(degree) {
  require(is_prime(static_cast<std::uint64_t>(p)), "characteristic " + std::to_string(p) + " is not prime");
  require(degree >= 1, "field degree must be positive");
  std::uint64_t order = 1;
  for (int i = 0; i < degree; ++i) {
    order *= static_cast<std::uint64_t>(p);
    require(order <= FieldTower::kMaxOrder, "field order exceeds 2^20");
  }
  order_ = static_cast<std::uint32_t>(order);

  if (modulus) {
    require_monic_over(p, *modulus, "modulus");
    require(static_cast<int>(modulus->size()) - 1 == degree, "modulus has wrong degree");
    require(is_irreducible(p, *modulus), "modulus " + poly_to_string(*modulus) + " is reducible");
    modulus_ = *modulus;
  } else {
    modulus_ = least_irreducible(p, degree);
  }

  const auto d = static_cast<std::size_t>(degree);
  auto to_digits = [&](std::uint32_t code) {
    std::vector<int> v(d);
    for (std::size_t i = 0; i < d; ++i) {
      v[i] = static_cast<int>(code % static_cast<std::uint32_t>(p));
      code /= static_cast<std::uint32_t>(p);
    }
    return v;
  };
  auto to_code = [&](const std::vector<int>& v) {
    std::uint32_t code = 0;
    for (std::size_t i = d; i-- > 0;) code = code * static_cast<std::uint32_t>(p) + static_cast<std::uint32_t>(v[i]);
    return code;
  };
  auto slow_mul = [&](std::uint32_t a, std::uint32_t b) {
    const auto x = to_digits(a);
    const auto y = to_digits(b);
    std::vector<long long> prod(2 * d - 1, 0);
    for (std::size_t i = 0; i < d; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) prod[i + j] += static_cast<long long>(x[i]) * y[j];
    }
    for (std::size_t k = prod.size(); k-- > d;) {
      const long long lead = prod[k] % p;
      if (lead == 0) continue;
      for (std::size_t i = 0; i < d; ++i) prod[k - d + i] -= lead * modulus_[i];
      prod[k] = 0;
    }
    std::vector<int> r(d);
    for (std::size_t i = 0; i < d; ++i) r[i] = static_cast<int>(((prod[i] % p) + p) % p);
    return to_code(r);
  };
  auto slow_pow = [&](std::uint32_t a, std::uint64_t e) {
    std::uint32_t r = 1;
    while (e > 0) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  };

  const std::uint64_t m = order_ - 1;
  const auto factors = prime_factors(m);
  auto is_primitive = [&](std::uint32_t c) {
    if (c == 0) return false;
    if (slow_pow(c, m) != 1) return false;
    return std::all_of(factors.begin(), factors.end(), [&](std::uint64_t f) { return slow_pow(c, m / f) != 1; });
  };
  if (generator) {
    require(*generator < order_ && is_primitive(*generator),
            "generator override " + std::to_string(*generator) + " is not a primitive element");
    gen_ = Elem{*generator};
  } else {
    std::uint32_t c = 1;
    while (!is_primitive(c)) ++c;
    gen_ = Elem{c};
  }

  exp_.assign(2 * m, 0);
  log_.assign(order_, -1);
  std::uint32_t cur = 1;
  for (std::uint64_t k = 0; k < m; ++k) {
    exp_[k] = cur;
    log_[cur] = static_cast<std::int32_t>(k);
    cur = slow_mul(cur, gen_.code);
  }
  verify(cur == 1, "generator power cycle did not close");
  for (std::uint64_t k = 0; k < m; ++k) exp_[k + m] = exp_[k];

  if (p_ != 2) {
    zech_.assign(m, -1);
    for (std::uint64_t k = 0; k < m; ++k) {
      const std::uint32_t c = exp_[k];
      const std::uint32_t c0 = c % static_cast<std::uint32_t>(p);
      const std::uint32_t plus_one = c - c0 + (c0 + 1) % static_cast<std::uint32_t>(p);
      zech_[k] = log_[plus_one];
    }
  }
}

Elem GaloisField::from_int(long long k) const {
  const long long r = ((k % p_) + p_) % p_;
  return Elem{static_cast<std::uint32_t>(r)};
}

Elem GaloisField::inv(Elem a) const {
  require(a.code != 0, "inverse of zero");
  const std::uint32_t m = order_ - 1;
  return Elem{exp_[(m - static_cast<std::uint32_t>(log_[a.code])) % m]};
}

Elem GaloisField::pow(Elem a, long long e) const {
  if (a.code == 0) {
    require(e >= 0, "negative power of zero");
    return e == 0 ? one() : zero();
  }
  const long long m = order_ - 1;
  const long long em = ((e % m) + m) % m;
  const long long k = static_cast<long long>(log_[a.code]) * em % m;
  return Elem{exp_[static_cast<std::size_t>(k)]};
}

std::uint32_t GaloisField::log(Elem a) const {
  require(a.code != 0 && a.code < order_, "logarithm of zero");
  return static_cast<std::uint32_t>(log_[a.code]);
}

Elem GaloisField::exp(long long k) const {
  const long long m = order_ - 1;
  return Elem{exp_[static_cast<std::size_t>(((k % m) + m) % m)]};
}

std::uint64_t GaloisField::multiplicative_order(Elem a) const {
  const std::uint64_t m = order_ - 1;
  return m / std::gcd(m, static_cast<std::uint64_t>(log(a)));
}

std::vector<int> GaloisField::digits(Elem a) const {
  std::vector<int> v(static_cast<std::size_t>(degree_));
  std::uint32_t c = a.code;
  for (auto& x : v) {
    x = static_cast<int>(c % static_cast<std::uint32_t>(p_));
    c /= static_cast<std::uint32_t>(p_);
  }
  return v;
}

Elem GaloisField::from_digits(std::span<const int> digits) const {
  require(digits.size() <= static_cast<std::size_t>(degree_), "too many digits");
  std::uint32_t code = 0;
  for (std::size_t i = digits.size(); i-- > 0;) {
    require(digits[i] >= 0 && digits[i] < p_, "digit out of range");
    code = code * static_cast<std::uint32_t>(p_) + static_cast<std::uint32_t>(digits[i]);
  }
  return Elem{code};
}

Poly GaloisField::minimal_polynomial(Elem a) const {
  std::vector<Elem> conj{a};
  for (Elem c = pow(a, p_); c != a; c = pow(c, p_)) conj.push_back(c);
  std::vector<Elem> coeffs{one()};
  for (Elem c : conj) {
    // Multiply by (t - c).
    std::vector<Elem> next(coeffs.size() + 1, zero());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      next[i + 1] = add(next[i + 1], coeffs[i]);
      next[i] = sub(next[i], mul(coeffs[i], c));
    }
    coeffs = std::move(next);
  }
  Poly out;
  for (Elem c : coeffs) {
    verify(c.code < static_cast<std::uint32_t>(p_), "minimal polynomial left the prime field");
    out.push_back(static_cast<int>(c.code));
  }
  return out;
}

Elem GaloisField::evaluate(const Poly& f, Elem x) const {
  Elem r = zero();
  for (std::size_t i = f.size(); i-- > 0;) r = add(mul(r, x), from_int(f[i]));
  return r;
}

Elem GaloisField::evaluate(std::span<const Elem> coeffs, Elem x) const {
  Elem r = zero();
  for (std::size_t i = coeffs.size(); i-- > 0;) r = add(mul(r, x), coeffs[i]);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

GaloisField make_top(int p, int n, const TowerOverrides& ov) {
  require(is_prime(static_cast<std::uint64_t>(p)), "p = " + std::to_string(p) + " is not prime");
  require(n >= 1, "n must be positive");
  require(n <= 10 && ipow(static_cast<std::uint64_t>(p), 2 * n) <= FieldTower::kMaxOrder,
          "q^2 = p^(2n) exceeds the 2^20 size cap");
  return GaloisField(p, 2 * n, ov.top_modulus, ov.generator);
}

}  // namespace

FieldTower::FieldTower(int p, int n, const TowerOverrides& ov)
    : field_(make_top(p, n, ov)), p_(p), n_(n), q_(static_cast<std::uint32_t>(ipow(static_cast<std::uint64_t>(p), n))) {
  const std::uint32_t order = field_.order();

  fq_index_.assign(order, -1);
  auto in_fq_raw = [&](Elem x) { return x.code == 0 || field_.log(x) % (q_ + 1) == 0; };

  if (ov.fq_modulus) {
    require_monic_over(p, *ov.fq_modulus, "fq_modulus");
    require(static_cast<int>(ov.fq_modulus->size()) - 1 == n, "fq_modulus must have degree n");
    require(is_irreducible(p, *ov.fq_modulus), "fq_modulus " + poly_to_string(*ov.fq_modulus) + " is reducible");
    std::optional<Elem> root;
    for (std::uint32_t c = 1; c < order && !root; ++c) {
      if (field_.evaluate(*ov.fq_modulus, Elem{c}).code == 0) root = Elem{c};
    }
    verify(root.has_value(), "irreducible fq_modulus has no root in the top field");
    require(field_.multiplicative_order(*root) == q_ - 1, "fq_modulus is not primitive: its roots do not generate F_q^*");
    epsilon_ = *root;
    fq_modulus_ = *ov.fq_modulus;
  } else {
    std::uint32_t c = 1;
    while (!(in_fq_raw(Elem{c}) && field_.multiplicative_order(Elem{c}) == q_ - 1)) ++c;
    epsilon_ = Elem{c};
    fq_modulus_ = field_.minimal_polynomial(epsilon_);
  }

  fq_elems_.reserve(q_);
  fq_elems_.push_back(Elem{0});
  Elem e = GaloisField::one();
  for (std::uint32_t i = 1; i < q_; ++i) {
    fq_index_[e.code] = static_cast<int>(fq_elems_.size());
    fq_elems_.push_back(e);
    e = field_.mul(e, epsilon_);
  }
  fq_index_[0] = 0;

  // epsilon-basis coordinates: code c <-> sum_i digit_i(c) * eps^i.
  from_eps_code_.assign(q_, Elem{0});
  eps_code_of_.assign(q_, 0);
  for (std::uint32_t c = 0; c < q_; ++c) {
    Elem x{0};
    std::uint32_t t = c;
    Elem pw = GaloisField::one();
    for (int i = 0; i < n; ++i) {
      x = field_.add(x, field_.mul(field_.from_int(t % static_cast<std::uint32_t>(p)), pw));
      t /= static_cast<std::uint32_t>(p);
      pw = field_.mul(pw, epsilon_);
    }
    from_eps_code_[c] = x;
    eps_code_of_[static_cast<std::size_t>(fq_index_[x.code])] = c;
  }

  if (ov.fq2_modulus) {
    const auto& f = *ov.fq2_modulus;
    require(f.size() == 3, "fq2_modulus must have exactly three coefficients");
    for (auto c : f) require(c < q_, "fq2_modulus coefficient out of range");
    require(f[2] == 1, "fq2_modulus must be monic");
    const std::vector<Elem> coeffs{from_eps_code(f[0]), from_eps_code(f[1]), from_eps_code(f[2])};
    for (Elem x : fq_elems_) {
      require(field_.evaluate(coeffs, x).code != 0, "fq2_modulus is reducible over F_q");
    }
    std::uint32_t c = 1;
    while (field_.evaluate(coeffs, Elem{c}).code != 0) ++c;
    quad_root_ = Elem{c};
    fq2_modulus_ = f;
  } else {
    std::uint32_t c = 1;
    while (in_fq_raw(Elem{c})) ++c;
    const Elem b{c};
    const Elem bq = field_.pow(b, q_);
    const Elem tr = field_.add(b, bq);
    const Elem nm = field_.mul(b, bq);
    fq2_modulus_ = {eps_code(nm), eps_code(field_.neg(tr)), 1};
    quad_root_ = b;
  }
  verify(!in_fq_raw(quad_root_), "quadratic root lies in F_q");
}

bool FieldTower::in_subfield(Elem x, int m) const {
  require(m >= 1 && (2 * n_) % m == 0, "subfield degree must divide 2n");
  if (x.code == 0) return true;
  const std::uint32_t idx = (order() - 1) / static_cast<std::uint32_t>(ipow(static_cast<std::uint64_t>(p_), m) - 1);
  return field_.log(x) % idx == 0;
}

Elem FieldTower::frobenius(Elem x, int k) const {
  require(k >= 0, "frobenius power must be nonnegative");
  const long long mod = order() - 1;
  long long e = 1;
  for (int i = 0; i < k; ++i) e = e * p_ % mod;
  if (x.code == 0) return x;
  if (e == 0) e = mod;  // only for the order-2 field, where x^(p^k) = x
  return field_.pow(x, e);
}

Elem FieldTower::trace(Elem x, int from_degree, int to_degree) const {
  require(to_degree >= 1 && from_degree % to_degree == 0, "trace target must be a subfield of the source");
  require(in_subfield(x, from_degree), "trace argument is not in the source field");
  Elem s{0};
  for (int i = 0; i < from_degree / to_degree; ++i) s = add(s, frobenius(x, to_degree * i));
  return s;
}

Elem FieldTower::norm(Elem x, int from_degree, int to_degree) const {
  require(to_degree >= 1 && from_degree % to_degree == 0, "norm target must be a subfield of the source");
  require(in_subfield(x, from_degree), "norm argument is not in the source field");
  const auto e = (ipow(static_cast<std::uint64_t>(p_), from_degree) - 1) / (ipow(static_cast<std::uint64_t>(p_), to_degree) - 1);
  return pow(x, static_cast<long long>(e));
}

Elem FieldTower::subfield_generator(int m) const {
  require(m >= 1 && (2 * n_) % m == 0, "subfield degree must divide 2n");
  const auto idx = (order() - 1) / (ipow(static_cast<std::uint64_t>(p_), m) - 1);
  return field_.exp(static_cast<long long>(idx));
}

std::vector<Elem> FieldTower::subfield_elements(int m) const {
  const Elem g = subfield_generator(m);
  const auto size = ipow(static_cast<std::uint64_t>(p_), m);
  std::vector<Elem> out{Elem{0}};
  Elem e = GaloisField::one();
  for (std::uint64_t i = 1; i < size; ++i) {
    out.push_back(e);
    e = mul(e, g);
  }
  return out;
}

Elem FieldTower::choose_trace_one(int m) const {
  for (std::uint32_t c = 1; c < order(); ++c) {
    const Elem x{c};
    if (in_subfield(x, m) && trace(x, m, 1) == GaloisField::one()) return x;
  }
  throw InternalInconsistency("absolute trace is not surjective");
}

Elem FieldTower::least_nonsquare(int m) const {
  require(p_ % 2 == 1, "non-squares are only defined here for odd characteristic");
  const auto half = (ipow(static_cast<std::uint64_t>(p_), m) - 1) / 2;
  for (std::uint32_t c = 1; c < order(); ++c) {
    const Elem x{c};
    if (in_subfield(x, m) && pow(x, static_cast<long long>(half)) != GaloisField::one()) return x;
  }
  throw InternalInconsistency("no non-square found");
}

std::uint32_t FieldTower::eps_code(Elem x) const {
  const int i = fq_index(x);
  require(i >= 0, "element is not in F_q");
  return eps_code_of_[static_cast<std::size_t>(i)];
}

Elem FieldTower::from_eps_code(std::uint32_t code) const {
  require(code < q_, "epsilon-basis code out of range");
  return from_eps_code_[code];
}

TowerPtr make_tower(int p, int n, const TowerOverrides& overrides) {
  return std::make_shared<const FieldTower>(p, n, overrides);
}

}  // namespace peisert
