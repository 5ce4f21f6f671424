#include "peisert/constructions.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>

#include "peisert/error.hpp"

namespace peisert {

void Report::add(std::string name, bool passed, std::string detail) {
  checks.push_back({std::move(name), passed, std::move(detail)});
}

bool Report::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

int largest_proper_divisor(int n) {
  require(n >= 1, "n must be positive");
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return n / d;
  }
  return 1;
}

int extremal_type_formula(std::uint32_t q) {
  const auto [p, n] = prime_power(q);
  if (n == 1) {
    require(p >= 3, "q = 2 has no extremal type");
    return (p + 3) / 2;
  }
  const int k = largest_proper_divisor(n);
  long long v = 1;
  for (int i = 0; i < n - k; ++i) v *= p;
  return static_cast<int>(v + 1);
}

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

/// Span over the subfield whose elements are `scalars`, sorted by code.
std::vector<Elem> span_over(const FieldTower& t, const std::vector<Elem>& scalars, const std::vector<Elem>& gens) {
  std::vector<Elem> span{Elem{0}};
  for (Elem g : gens) {
    std::vector<Elem> next;
    next.reserve(span.size() * scalars.size());
    for (Elem w : span) {
      for (Elem c : scalars) next.push_back(t.add(w, t.mul(c, g)));
    }
    span = std::move(next);
  }
  std::sort(span.begin(), span.end());
  span.erase(std::unique(span.begin(), span.end()), span.end());
  return span;
}

void check_witness(Construction& c) {
  const PeisertGraph& g = c.graph;
  const bool size_ok = c.witness.size() == g.q();
  c.report.add("witness has q points", size_ok, std::to_string(c.witness.size()));
  const bool clique = is_clique(g, c.witness);
  c.report.add("witness is a clique", clique);
  const auto dirs = directions_of(g.basis(), c.witness);
  c.report.add("witness is non-canonical", dirs.size() > 1, std::to_string(dirs.size()) + " directions");
}

void check_type(Construction& c, int expected_m) {
  c.report.add("cosets pairwise disjoint", c.graph.connection_set().size() == c.graph.directions().size() * (c.graph.q() - 1),
               "|S| = " + std::to_string(c.graph.connection_set().size()));
  c.report.add("type (" + std::to_string(expected_m) + ", " + std::to_string(c.graph.q()) + ")", c.graph.m() == expected_m,
               "m = " + std::to_string(c.graph.m()));
}

/// Directions {F_q^*} plus {(u + beta) F_q^*}; throws if two of them coincide.
DirectionSet hyperplane_directions(const TowerBasis& b, const std::vector<Elem>& u) {
  const FieldTower& t = b.tower();
  DirectionSet dirs{b.direction(GaloisField::one())};
  for (Elem x : u) dirs.push_back(b.direction(t.add(x, b.beta())));
  std::sort(dirs.begin(), dirs.end());
  verify(std::adjacent_find(dirs.begin(), dirs.end()) == dirs.end(), "cosets of the construction overlap");
  return dirs;
}

Construction make_construction(std::string family, const BasisPtr& basis, DirectionSet dirs, std::vector<Elem> witness) {
  std::sort(witness.begin(), witness.end());
  return Construction{std::move(family), PeisertGraph(basis, std::move(dirs)), std::move(witness), {}};
}

}  // namespace

Construction extremal_construction(const BasisPtr& basis) {
  require(basis != nullptr, "null basis");
  const FieldTower& t = basis->tower();
  const int n = t.n();
  require(n > 1, "extremal_construction needs q = p^n with n > 1; use ls_graph for primes");
  const int k = largest_proper_divisor(n);
  const int d = n / k;
  const auto scalars = t.subfield_elements(k);

  std::vector<Elem> gens;
  for (int i = 0; i + 2 <= d; ++i) gens.push_back(t.pow(t.epsilon(), i));
  const auto u = span_over(t, scalars, gens);
  verify(u.size() == ipow(scalars.size(), d - 1), "powers of epsilon are dependent over the subfield");

  auto wgens = gens;
  wgens.push_back(basis->beta());
  Construction c = make_construction("extremal", basis, hyperplane_directions(*basis, u), span_over(t, scalars, wgens));
  check_type(c, extremal_type_formula(t.q()));
  check_witness(c);
  if (d == 3) {
    // Witness = a F_r + b F_r + c F_r with a = 1, b = eps, c = beta.
    const bool ab_dependent = t.in_fq(t.div(gens[1], gens[0]));
    const bool ac_independent = !t.in_fq(t.div(basis->beta(), gens[0]));
    c.report.add("a, b dependent over F_q and a, c independent", ab_dependent && ac_independent);
  }
  return c;
}

Construction ls_graph(const BasisPtr& basis) {
  require(basis != nullptr, "null basis");
  const FieldTower& t = basis->tower();
  require(t.n() == 1 && t.p() >= 3, "ls_graph needs an odd prime q");
  const int p = t.p();
  std::vector<Elem> u0;
  for (int x = 0; x < p; ++x) {
    const Elem e = t.field().from_int(x);
    u0.push_back(basis->point(e, t.pow(e, (p + 1) / 2)));
  }
  auto dirs = directions_of(*basis, u0);
  Construction c = make_construction("ls", basis, std::move(dirs), std::move(u0));
  check_type(c, (p + 3) / 2);
  check_witness(c);
  return c;
}

std::vector<Elem> default_hyperplane(const FieldTower& t, int s) {
  require(s >= 1 && t.n() % s == 0 && t.n() / s >= 2, "need r = p^s with s a proper divisor of n");
  std::vector<Elem> gens;
  for (int i = 0; i + 2 <= t.n() / s; ++i) gens.push_back(t.pow(t.epsilon(), i));
  return gens;
}

Construction y_qn(const BasisPtr& basis, int s, const std::vector<Elem>& generators, Elem shift) {
  require(basis != nullptr, "null basis");
  const FieldTower& t = basis->tower();
  require(s >= 1 && t.n() % s == 0 && t.n() / s >= 2, "need q = r^N with r = p^s and N >= 2");
  const int big_n = t.n() / s;
  require(shift.code < t.order() && t.in_fq(shift), "hyperplane shift must lie in F_q");
  for (Elem g : generators) require(g.code < t.order() && t.in_fq(g), "hyperplane generators must lie in F_q");
  const auto scalars = t.subfield_elements(s);
  const auto w = span_over(t, scalars, generators);
  require(w.size() == ipow(scalars.size(), big_n - 1),
          "generators do not span a hyperplane of F_q over F_r (span has " + std::to_string(w.size()) + " points)");

  std::vector<Elem> u;
  for (Elem x : w) u.push_back(t.add(x, shift));
  const Elem lead = t.add(shift, basis->beta());
  std::vector<Elem> witness;
  for (Elem x : w) {
    for (Elem c : scalars) witness.push_back(t.add(x, t.mul(c, lead)));
  }
  Construction c = make_construction("y_qn", basis, hyperplane_directions(*basis, u), std::move(witness));
  check_type(c, static_cast<int>(ipow(scalars.size(), big_n - 1) + 1));
  check_witness(c);
  return c;
}

Construction oval_graph_xq(const BasisPtr& basis) {
  require(basis != nullptr, "null basis");
  const FieldTower& t = basis->tower();
  require(t.n() % 2 == 0, "X_q needs q to be a square");
  const auto r = static_cast<long long>(ipow(static_cast<std::uint64_t>(t.p()), t.n() / 2));
  std::vector<Elem> oval;
  for (Elem g : t.fq_elements().subspan(1)) {
    if (t.pow(g, r + 1) == GaloisField::one()) oval.push_back(g);
  }
  DirectionSet dirs;
  for (Elem delta : oval) dirs.push_back(basis->direction(t.add(delta, basis->beta())));
  std::sort(dirs.begin(), dirs.end());
  verify(std::adjacent_find(dirs.begin(), dirs.end()) == dirs.end(), "oval directions coincide");

  std::vector<Elem> cq;
  for (Elem g : t.fq_elements()) cq.push_back(t.add(t.pow(g, r), t.mul(g, basis->beta())));
  Construction c = make_construction("xq", basis, std::move(dirs), std::move(cq));
  c.report.add("|Q| = sqrt(q) + 1", oval.size() == static_cast<std::size_t>(r + 1), std::to_string(oval.size()));
  check_type(c, static_cast<int>(r + 1));
  check_witness(c);
  return c;
}

Construction subspace_graph(const BasisPtr& basis, std::string family, const std::vector<Elem>& generators) {
  require(basis != nullptr, "null basis");
  const FieldTower& t = basis->tower();
  for (Elem g : generators) require(g.code < t.order(), "generator outside the field");
  auto v = span_over(t, t.subfield_elements(1), generators);
  require(v.size() == ipow(static_cast<std::uint64_t>(t.p()), static_cast<int>(generators.size())),
          "generators are linearly dependent over F_p");
  DirectionSet dirs;
  for (Elem x : v) {
    if (x.code != 0) dirs.push_back(basis->direction(x));
  }
  std::sort(dirs.begin(), dirs.end());
  dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
  Construction c = make_construction(std::move(family), basis, std::move(dirs), std::move(v));
  check_type(c, c.graph.m());
  check_witness(c);
  return c;
}

TowerPtr example_q32_tower() {
  TowerOverrides ov;
  ov.fq_modulus = Poly{1, 0, 1, 0, 0, 1};
  ov.fq2_modulus = std::vector<std::uint32_t>{1, 1, 1};
  return make_tower(2, 5, ov);
}

ExamplePair example_q32() {
  const auto tower = example_q32_tower();
  const auto basis = make_basis(tower);
  const FieldTower& t = *tower;
  const Elem e = t.epsilon();
  const Elem b = basis->beta();
  auto ep = [&](int k) { return t.pow(e, k); };
  const std::vector<Elem> v1{Elem{1}, e, b, t.mul(ep(16), b), t.add(ep(21), t.mul(ep(9), b))};
  const std::vector<Elem> v2{Elem{1}, e, ep(2), ep(3), b};
  ExamplePair out{subspace_graph(basis, "example_q32_first", v1), subspace_graph(basis, "example_q32_second", v2)};
  for (Construction* c : {&out.first, &out.second}) {
    c->report.add("type (17, 32)", c->graph.m() == 17, "m = " + std::to_string(c->graph.m()));
    c->report.add("m equals the extremal value", c->graph.m() == extremal_type_formula(32));
  }
  return out;
}

PolarIsomorphism xq_vo_isomorphism(std::uint32_t r) {
  require(r >= 2 && r <= 5, "the polar isomorphism is built for 2 <= r <= 5");
  const auto [p, s] = prime_power(r);
  const auto tower = make_tower(p, 2 * s);
  const auto basis = make_basis(tower);
  const FieldTower& t = *tower;
  const auto fr = t.subfield_elements(s);
  const bool odd = p % 2 == 1;

  Report rep;
  // F_q = F_r(alpha) with alpha^2 = d (odd) or alpha^2 = alpha + d (even).
  const Elem d = odd ? t.least_nonsquare(s) : t.choose_trace_one(s);
  auto quad = [&](Elem x) {
    const Elem sq = t.mul(x, x);
    return odd ? t.sub(sq, d) : t.add(t.add(sq, x), d);
  };
  Elem alpha{0};
  bool found = false;
  for (std::uint32_t c = 0; c < t.order() && !found; ++c) {
    if (t.in_fq(Elem{c}) && quad(Elem{c}).code == 0) {
      alpha = Elem{c};
      found = true;
    }
  }
  verify(found && !t.in_subfield(alpha, s), "the quadratic defining F_q over F_r has no root outside F_r");

  // F_q element -> (x, y) with element = x + y alpha.
  std::map<std::uint32_t, std::pair<Elem, Elem>> split;
  for (Elem x : fr) {
    for (Elem y : fr) split[t.add(x, t.mul(y, alpha)).code] = {x, y};
  }
  verify(split.size() == t.q(), "1, alpha is not a basis of F_q over F_r");

  // Tower copy of F_r -> standalone F_r, sending the least root of the
  // standalone modulus to the standalone variable.
  const FieldPtr f = make_field(r);
  Elem rho{0};
  found = false;
  for (Elem x : fr) {
    if (t.field().evaluate(f->modulus(), x).code == 0 && (!found || x < rho)) {
      rho = x;
      found = true;
    }
  }
  verify(found, "standalone modulus has no root in the tower's F_r");
  std::map<std::uint32_t, Elem> phi;
  for (std::uint32_t c = 0; c < r; ++c) {
    const auto digits = f->digits(Elem{c});
    Elem x{0};
    for (std::size_t i = 0; i < digits.size(); ++i) x = t.add(x, t.mul(t.field().from_int(digits[i]), t.pow(rho, static_cast<long long>(i))));
    phi[x.code] = Elem{c};
  }
  verify(phi.size() == r, "subfield identification is not a bijection");
  bool hom = true;
  for (Elem a : fr) {
    for (Elem b : fr) {
      hom = hom && phi[t.add(a, b).code] == f->add(phi[a.code], phi[b.code]) &&
            phi[t.mul(a, b).code] == f->mul(phi[a.code], phi[b.code]);
    }
  }
  rep.add("subfield identification is a field isomorphism", hom);

  const Elem fd = phi[d.code];
  const GaloisField& F = *f;
  Matrix b = odd ? Matrix::from_ints(F, {{1, 0, 1, 0}, {1, 0, -1, 0}, {0, 0, 0, 0}, {0, -1, 0, 1}})
                 : Matrix::from_ints(F, {{1, 1, 1, 0}, {1, 0, 1, 0}, {0, 1, 0, 1}, {0, 0, 1, 0}});
  if (odd) {
    b.at(2, 1) = fd;
    b.at(2, 3) = fd;
  } else {
    b.at(3, 1) = fd;
    b.at(3, 3) = fd;
  }
  std::vector<Elem> coeff(16, Elem{0});
  if (odd) {
    coeff[0] = Elem{1};
    coeff[5] = F.neg(fd);
    coeff[10] = F.neg(Elem{1});
    coeff[15] = fd;
  } else {
    coeff[0] = coeff[1] = Elem{1};
    coeff[5] = fd;
    coeff[10] = coeff[11] = Elem{1};
    coeff[15] = fd;
  }
  QuadraticForm norm_form(f, 4, coeff);
  const QuadraticForm hyp = QuadraticForm::hyperbolic(f, 2);
  const Elem det_b = determinant(F, b);
  const Elem det_expected = odd ? F.mul(F.from_int(4), fd) : Elem{1};
  rep.add(odd ? "det B = 4d" : "det B = 1", det_b == det_expected && det_b.code != 0);
  rep.add("hyperbolic(Bx) = norm form(x) for all x", form_equivalence_check(hyp, norm_form, b));

  Construction xq = oval_graph_xq(basis);
  Construction ext = extremal_construction(basis);
  FormGraph vo = vo_plus(2, r);

  // x = a + b beta -> (a1, a2, b1, b2) over the standalone F_r.
  auto coords = [&](Elem x) {
    const auto pt = basis->pi(x);
    const auto [a1, a2] = split.at(pt.a.code);
    const auto [b1, b2] = split.at(pt.b.code);
    return std::vector<Elem>{phi[a1.code], phi[a2.code], phi[b1.code], phi[b2.code]};
  };
  bool zero_set = true;
  for (std::uint32_t x = 0; x < t.order(); ++x) {
    const bool on_quadric = x != 0 && norm_form.evaluate(coords(Elem{x})).code == 0;
    zero_set = zero_set && on_quadric == xq.graph.in_connection_set(Elem{x});
  }
  rep.add("X_q connection set is the nonzero zero set of the norm form", zero_set);

  const std::uint32_t nv = t.order();
  std::vector<std::uint32_t> to_vo(nv), from_vo(nv, nv);
  for (std::uint32_t x = 0; x < nv; ++x) {
    to_vo[x] = vector_index(F, apply(F, b, coords(Elem{x})));
    verify(to_vo[x] < nv && from_vo[to_vo[x]] == nv, "coordinate map is not a bijection");
    from_vo[to_vo[x]] = x;
  }
  bool inverse_ok = true;
  for (std::uint32_t x = 0; x < nv; ++x) inverse_ok = inverse_ok && from_vo[to_vo[x]] == x && to_vo[from_vo[x]] == x;
  rep.add("bijection composed with its inverse is the identity", inverse_ok);

  auto edges_agree = [&](const PeisertGraph& g, const std::vector<std::uint32_t>& map) {
    for (std::uint32_t u = 0; u < nv; ++u) {
      for (std::uint32_t v = u + 1; v < nv; ++v) {
        if (g.adjacent(Elem{u}, Elem{v}) != vo.graph.test(map[u], map[v])) return false;
      }
    }
    return true;
  };
  rep.add("X_q -> VO+(4, r) preserves adjacency and non-adjacency on all pairs", edges_agree(xq.graph, to_vo));

  // (v1, v2) = (b, a) -> (v1 + v2, gamma v1 + gamma^r v2) maps X_q onto Y_{q,2}(F_r).
  Elem gamma{0};
  found = false;
  for (std::uint32_t c = 1; c < nv && !found; ++c) {
    if (t.in_fq(Elem{c}) && t.pow(Elem{c}, r) != Elem{c}) {
      gamma = Elem{c};
      found = true;
    }
  }
  verify(found, "F_q equals F_r");
  const Elem gamma_r = t.pow(gamma, r);
  std::vector<std::uint32_t> a_map(nv), a_inv(nv, nv);
  for (std::uint32_t x = 0; x < nv; ++x) {
    const auto pt = basis->pi(Elem{x});
    const Elem y = basis->point(t.add(t.mul(gamma, pt.b), t.mul(gamma_r, pt.a)), t.add(pt.a, pt.b));
    a_map[x] = y.code;
    verify(a_inv[y.code] == nv, "matrix A is singular");
    a_inv[y.code] = x;
  }
  bool a_ok = true;
  for (std::uint32_t x = 0; x < nv; ++x) a_ok = a_ok && xq.graph.in_connection_set(Elem{x}) == ext.graph.in_connection_set(Elem{a_map[x]});
  rep.add("matrix A maps the X_q connection set onto the extremal one", a_ok);
  std::vector<std::uint32_t> ext_to_vo(nv);
  for (std::uint32_t y = 0; y < nv; ++y) ext_to_vo[y] = to_vo[a_inv[y]];
  rep.add("extremal -> VO+(4, r) preserves adjacency and non-adjacency on all pairs", edges_agree(ext.graph, ext_to_vo));

  return PolarIsomorphism{r,        std::move(xq),      std::move(ext),      std::move(vo), std::move(norm_form),
                          std::move(b), d,              gamma,               std::move(to_vo), std::move(ext_to_vo),
                          std::move(from_vo), std::move(rep)};
}

RawExtremalCount raw_extremal_count(const BasisPtr& basis) {
  require(basis != nullptr, "null basis");
  const FieldTower& t = basis->tower();
  require(t.n() > 1, "raw counts need q = p^n with n > 1");
  require(t.q() <= 63, "raw counts need q + 1 <= 64 directions");
  const int k = largest_proper_divisor(t.n());
  const int d = t.n() / k;
  require(d == 2 || d == 3, "raw counts are implemented for q = r^2 and q = r^3");
  const double n = t.order();
  const double work = d == 2 ? n * n / 2 : n * n * n / 6;
  require(work <= 5e7, "subspace enumeration is too large for q = " + std::to_string(t.q()));

  const auto scalars = t.subfield_elements(k);
  RawExtremalCount out;
  out.q = t.q();
  out.r = static_cast<std::uint32_t>(scalars.size());
  out.d = d;
  const std::uint64_t r = out.r;
  out.expected = d == 2 ? (out.q + 1) * r : r * (ipow(r, 5) + ipow(r, 4) + ipow(r, 3) + ipow(r, 2) + r + 1);
  const auto target = static_cast<int>(ipow(r, d - 1) + 1);

  std::set<std::uint64_t> found;
  std::vector<char> in_span(t.order(), 0);
  std::vector<Elem> span{Elem{0}};
  in_span[0] = 1;
  // Subspaces are generated by their greedy basis: each new vector is the
  // least element of its layer, which makes the enumeration duplicate-free.
  std::function<void(int, std::uint32_t)> rec = [&](int level, std::uint32_t lo) {
    if (level == d) {
      ++out.subspaces;
      std::uint64_t mask = 0;
      for (Elem x : span) {
        if (x.code != 0) mask |= std::uint64_t{1} << basis->direction(x);
      }
      if (std::popcount(mask) == target) {
        ++out.extremal_subspaces;
        found.insert(mask);
      }
      return;
    }
    const std::size_t base = span.size();
    for (std::uint32_t v = lo; v < t.order(); ++v) {
      if (in_span[v]) continue;
      bool least = true;
      for (std::size_t i = 0; i < base && least; ++i) {
        for (Elem c : scalars) {
          if (c.code == 0) continue;
          const Elem y = t.add(span[i], t.mul(c, Elem{v}));
          if (y.code < v) {
            least = false;
            break;
          }
          span.push_back(y);
        }
      }
      if (least) {
        for (std::size_t i = base; i < span.size(); ++i) in_span[span[i].code] = 1;
        rec(level + 1, v + 1);
        for (std::size_t i = base; i < span.size(); ++i) in_span[span[i].code] = 0;
      }
      span.resize(base);
    }
  };
  rec(0, 1);

  for (std::uint64_t mask : found) out.direction_sets.push_back(directions_from_mask(mask));
  std::sort(out.direction_sets.begin(), out.direction_sets.end());
  if (d == 2) {
    std::map<std::uint64_t, int> triples;
    for (const auto& ds : out.direction_sets) {
      for (std::size_t a = 0; a < ds.size(); ++a)
        for (std::size_t b = a + 1; b < ds.size(); ++b)
          for (std::size_t c = b + 1; c < ds.size(); ++c)
            ++triples[(std::uint64_t{1} << ds[a]) | (std::uint64_t{1} << ds[b]) | (std::uint64_t{1} << ds[c])];
    }
    const std::uint64_t all = (out.q + 1) * out.q * (out.q - 1) / 6;
    out.triples_covered_once = triples.size() == all &&
                               std::all_of(triples.begin(), triples.end(), [](const auto& kv) { return kv.second == 1; });
  }
  return out;
}

}  // namespace peisert
