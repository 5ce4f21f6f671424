#include "peisert/graph.hpp"

#include <algorithm>

#include "peisert/error.hpp"

namespace peisert {

SrgParams srg_params_of_type(int m, std::uint32_t q) {
  require(m >= 1 && static_cast<std::uint32_t>(m) <= q, "type (m, q) needs 1 <= m <= q");
  const auto mm = static_cast<std::uint64_t>(m);
  SrgParams s;
  s.v = std::uint64_t{q} * q;
  s.k = mm * (q - 1);
  s.lambda = (mm - 1) * (mm - 2) + q - 2;
  s.mu = mm * (mm - 1);
  s.r1 = static_cast<long long>(q) - m;
  s.mult1 = s.k;
  s.r2 = -static_cast<long long>(m);
  s.mult2 = s.v - 1 - s.k;
  s.primitive = m > 1 && static_cast<std::uint32_t>(m) < q;
  return s;
}

PeisertGraph::PeisertGraph(BasisPtr basis, DirectionSet directions)
    : basis_(std::move(basis)), dirs_(std::move(directions)), lazy_(std::make_shared<Lazy>()) {
  require(basis_ != nullptr, "null basis");
  const std::uint32_t q = basis_->q();
  std::sort(dirs_.begin(), dirs_.end());
  require(std::adjacent_find(dirs_.begin(), dirs_.end()) == dirs_.end(), "duplicate direction");
  require(!dirs_.empty(), "a Peisert-type graph needs at least one direction");
  require(dirs_.size() <= q, "at most q directions are allowed");
  require(dirs_.front() >= 0 && dirs_.back() <= static_cast<int>(q), "direction index out of range");

  const FieldTower& t = basis_->tower();
  dir_present_.assign(q + 1, 0);
  for (int d : dirs_) dir_present_[static_cast<std::size_t>(d)] = 1;
  in_s_.assign(t.order(), 0);
  for (int d : dirs_) {
    const Elem rep = basis_->coset_rep(d);
    for (Elem c : t.fq_elements().subspan(1)) {
      const Elem x = t.mul(rep, c);
      verify(!in_s_[x.code], "connection set cosets overlap");
      in_s_[x.code] = 1;
    }
  }
  for (std::uint32_t c = 1; c < t.order(); ++c) {
    if (in_s_[c]) s_.push_back(Elem{c});
  }
  verify(s_.size() == dirs_.size() * (q - 1), "connection set has the wrong size");
}

const BitGraph& PeisertGraph::bits() const {
  std::call_once(lazy_->once, [this] {
    require(q() <= 32, "dense adjacency is limited to q <= 32");
    const FieldTower& t = tower();
    BitGraph g(num_vertices());
    for (std::uint32_t u = 0; u < num_vertices(); ++u) {
      for (Elem s : s_) {
        const std::uint32_t v = t.add(Elem{u}, s).code;
        if (u < v) g.add_edge(u, v);
      }
    }
    lazy_->bits = std::move(g);
  });
  return lazy_->bits;
}

SrgParams srg_verify(const PeisertGraph& g) {
  const SrgParams expect = srg_params_of_type(g.m(), g.q());
  const BitGraph& b = g.bits();
  const std::size_t n = b.size();
  verify(n == expect.v, "vertex count mismatch");
  for (std::size_t u = 0; u < n; ++u) {
    verify(!b.test(u, u), "loop in graph");
    verify(b.degree(u) == expect.k, "vertex " + std::to_string(u) + " has the wrong degree");
    for (std::size_t v = u + 1; v < n; ++v) {
      const std::size_t c = b.common(u, v);
      const std::uint64_t want = b.test(u, v) ? expect.lambda : expect.mu;
      if (c != want) {
        throw InternalInconsistency("pair (" + std::to_string(u) + ", " + std::to_string(v) + ") has " +
                                    std::to_string(c) + " common neighbours, expected " + std::to_string(want));
      }
    }
  }
  return expect;
}

std::map<long long, std::uint64_t> character_spectrum(const PeisertGraph& g) {
  const FieldTower& t = g.tower();
  const int p = t.p();
  std::vector<int> tr(t.order());
  for (std::uint32_t c = 0; c < t.order(); ++c) tr[c] = static_cast<int>(t.trace(Elem{c}, 2 * t.n(), 1).code);

  std::map<long long, std::uint64_t> spec;
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(p));
  for (std::uint32_t a = 0; a < t.order(); ++a) {
    std::fill(counts.begin(), counts.end(), 0);
    for (Elem s : g.connection_set()) ++counts[static_cast<std::size_t>(tr[t.mul(Elem{a}, s).code])];
    // sum_j c_j zeta^j is rational only when c_1 = ... = c_{p-1}.
    for (int j = 2; j < p; ++j) verify(counts[static_cast<std::size_t>(j)] == counts[1], "irrational character sum");
    ++spec[static_cast<long long>(counts[0]) - static_cast<long long>(p > 1 ? counts[1] : 0)];
  }
  return spec;
}

void verify_spectrum(const PeisertGraph& g) {
  const SrgParams s = srg_params_of_type(g.m(), g.q());
  std::map<long long, std::uint64_t> expect;
  expect[static_cast<long long>(s.k)] += 1;
  expect[s.r1] += s.mult1;
  expect[s.r2] += s.mult2;
  verify(character_spectrum(g) == expect, "spectrum differs from the closed form");
}

PeisertGraph complement(const PeisertGraph& g) {
  return PeisertGraph(g.basis_ptr(), complement_directions(g.q(), g.directions()));
}

void write_edge_list(const PeisertGraph& g, std::ostream& os) {
  const FieldTower& t = g.tower();
  std::vector<std::uint32_t> nbrs;
  for (std::uint32_t u = 0; u < g.num_vertices(); ++u) {
    nbrs.clear();
    for (Elem s : g.connection_set()) {
      const std::uint32_t v = t.add(Elem{u}, s).code;
      if (u < v) nbrs.push_back(v);
    }
    std::sort(nbrs.begin(), nbrs.end());
    for (auto v : nbrs) os << u << ' ' << v << '\n';
  }
}

}  // namespace peisert
