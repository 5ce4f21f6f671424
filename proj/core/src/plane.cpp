#include "peisert/plane.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_set>

#include "peisert/error.hpp"

namespace peisert {

int pg_index(const FieldTower& t, Elem u1, Elem u2) {
  if (u1.code == 0) {
    require(u2.code != 0, "[0:0] is not a projective point");
    return 0;
  }
  const int i = t.fq_index(t.div(u2, u1));
  require(i >= 0, "projective coordinates must lie in F_q");
  return 1 + i;
}

ProjectivePoint pg_point(const FieldTower& t, int index) {
  require(index >= 0 && index <= static_cast<int>(t.q()), "projective index out of range");
  if (index == 0) return {Elem{0}, Elem{1}};
  return {Elem{1}, t.fq_element(index - 1)};
}

std::string pg_to_string(const FieldTower& t, int index) {
  const auto pt = pg_point(t, index);
  auto show = [&](Elem x) {
    if (x.code == 0) return std::string("0");
    const int i = t.fq_index(x) - 1;
    return i == 0 ? std::string("1") : "e^" + std::to_string(i);
  };
  return "[" + show(pt.a) + ":" + show(pt.b) + "]";
}

std::uint64_t direction_mask(std::span<const int> dirs) {
  std::uint64_t m = 0;
  for (int d : dirs) {
    require(d >= 0 && d < 64, "direction index does not fit a 64-bit mask");
    m |= std::uint64_t{1} << d;
  }
  return m;
}

DirectionSet directions_from_mask(std::uint64_t mask) {
  DirectionSet out;
  while (mask != 0) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

DirectionSet complement_directions(std::uint32_t q, std::span<const int> dirs) {
  std::vector<char> present(q + 1, 0);
  for (int d : dirs) present[static_cast<std::size_t>(d)] = 1;
  DirectionSet out;
  for (int d = 0; d <= static_cast<int>(q); ++d) {
    if (!present[static_cast<std::size_t>(d)]) out.push_back(d);
  }
  return out;
}

TowerBasis::TowerBasis(TowerPtr tower, std::optional<Elem> beta) : tower_(std::move(tower)) {
  require(tower_ != nullptr, "null tower");
  const FieldTower& t = *tower_;
  beta_ = beta.value_or(t.quadratic_root());
  require(beta_.code < t.order(), "beta out of range");
  require(!t.in_fq(beta_), "beta must lie outside F_q");

  coord_a_.assign(t.order(), Elem{0});
  coord_b_.assign(t.order(), Elem{0});
  dir_.assign(t.order(), -1);
  std::vector<char> seen(t.order(), 0);
  for (Elem a : t.fq_elements()) {
    for (Elem b : t.fq_elements()) {
      const Elem x = t.add(a, t.mul(b, beta_));
      verify(!seen[x.code], "{1, beta} is not a basis");
      seen[x.code] = 1;
      coord_a_[x.code] = a;
      coord_b_[x.code] = b;
      if (x.code != 0) dir_[x.code] = pg_index(t, a, b);
    }
  }
}

Elem TowerBasis::point(Elem a, Elem b) const {
  return tower_->add(a, tower_->mul(b, beta_));
}

int TowerBasis::direction(Elem x) const {
  require(x.code != 0, "zero determines no direction");
  return dir_[x.code];
}

Elem TowerBasis::coset_rep(int dir) const {
  const auto pt = pg_point(*tower_, dir);
  return point(pt.a, pt.b);
}

BasisPtr make_basis(TowerPtr tower, std::optional<Elem> beta) {
  return std::make_shared<const TowerBasis>(std::move(tower), beta);
}

DirectionSet directions_of(const TowerBasis& basis, std::span<const Elem> points) {
  const FieldTower& t = basis.tower();
  std::vector<char> present(t.q() + 1, 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const Elem d = t.sub(points[i], points[j]);
      if (d.code != 0) present[static_cast<std::size_t>(basis.direction(d))] = 1;
    }
  }
  DirectionSet out;
  for (std::size_t d = 0; d < present.size(); ++d) {
    if (present[d]) out.push_back(static_cast<int>(d));
  }
  return out;
}

std::optional<int> k_linearity(const TowerBasis& basis, std::span<const Elem> points) {
  const FieldTower& t = basis.tower();
  require(points.size() == t.q(), "k_linearity needs exactly q points");
  std::vector<char> in(t.order(), 0);
  for (Elem x : points) in[x.code] = 1;
  require(in[0], "k_linearity needs the origin in the set");
  for (Elem x : points) {
    for (Elem y : points) {
      if (!in[t.add(x, y).code]) return std::nullopt;
    }
  }
  for (int j = t.n(); j >= 1; --j) {
    if (t.n() % j != 0) continue;
    const Elem g = t.subfield_generator(j);
    if (std::all_of(points.begin(), points.end(), [&](Elem x) { return in[t.mul(g, x).code] != 0; })) return j;
  }
  // Additive closure already makes the set an F_p-space, so j = 1 always succeeds.
  throw InternalInconsistency("additively closed set failed F_p scaling");
}

Elem det(const FieldTower& t, const Mat2& m) {
  return t.sub(t.mul(m.a, m.d), t.mul(m.b, m.c));
}

ProjectiveLine::ProjectiveLine(TowerPtr tower) : tower_(std::move(tower)) {
  const FieldTower& t = *tower_;
  const int n = size();
  frob_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto pt = pg_point(t, i);
    frob_[static_cast<std::size_t>(i)] = pg_index(t, t.frobenius(pt.a, 1), t.frobenius(pt.b, 1));
  }
  const Elem zero{0}, one{1};
  const std::vector<Mat2> mats{
      {one, zero, one, one},              // b -> b + 1
      {one, zero, zero, t.epsilon()},     // b -> eps * b
      {zero, one, one, zero},             // b -> 1 / b
  };
  for (const auto& m : mats) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = apply(m, i);
    gens_.push_back(std::move(perm));
  }
  if (t.n() > 1) gens_.push_back(frob_);
}

int ProjectiveLine::apply(const Mat2& m, int index) const {
  const FieldTower& t = *tower_;
  require(det(t, m).code != 0, "singular matrix");
  const auto pt = pg_point(t, index);
  return pg_index(t, t.add(t.mul(m.a, pt.a), t.mul(m.b, pt.b)), t.add(t.mul(m.c, pt.a), t.mul(m.d, pt.b)));
}

std::uint64_t ProjectiveLine::image_mask(const std::vector<int>& perm, std::uint64_t mask) const {
  std::uint64_t out = 0;
  while (mask != 0) {
    out |= std::uint64_t{1} << perm[static_cast<std::size_t>(std::countr_zero(mask))];
    mask &= mask - 1;
  }
  return out;
}

std::vector<std::uint64_t> ProjectiveLine::orbit(std::uint64_t mask) const {
  require(size() <= 64, "PGammaL orbits need q <= 63");
  std::unordered_set<std::uint64_t> seen{mask};
  std::vector<std::uint64_t> out{mask};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& g : gens_) {
      const std::uint64_t img = image_mask(g, out[i]);
      if (seen.insert(img).second) out.push_back(img);
    }
  }
  return out;
}

std::uint64_t ProjectiveLine::canonical_mask(std::uint64_t mask) const {
  const auto all = orbit(mask);
  std::uint64_t best = mask;
  for (std::uint64_t x : all) {
    if (mask_less(x, best)) best = x;
  }
  return best;
}

DirectionSet ProjectiveLine::canonical(std::span<const int> dirs) const {
  return directions_from_mask(canonical_mask(direction_mask(dirs)));
}

bool ProjectiveLine::equivalent(std::span<const int> a, std::span<const int> b) const {
  if (a.size() != b.size()) return false;
  return canonical_mask(direction_mask(a)) == canonical_mask(direction_mask(b));
}

}  // namespace peisert
