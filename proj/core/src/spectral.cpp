#include "peisert/spectral.hpp"

#include <algorithm>
#include <numeric>

#include "peisert/error.hpp"

namespace peisert {

WdbBounds wdb_bounds(int m, std::uint32_t q) {
  const SrgParams s = srg_params_of_type(m, q);
  require(s.primitive, "weight-distribution bounds need a primitive graph, 2 <= m <= q - 1");
  return {2 * (s.r1 + 1), -2 * s.r2};
}

std::uint64_t Eigenfunction::support_size() const {
  return static_cast<std::uint64_t>(std::count_if(values.begin(), values.end(), [](int v) { return v != 0; }));
}

long long Eigenfunction::sum() const { return std::accumulate(values.begin(), values.end(), 0LL); }

std::optional<long long> eigenvalue_of(const PeisertGraph& g, const std::vector<int>& values) {
  require(values.size() == g.num_vertices(), "function must have one value per vertex");
  const FieldTower& t = g.tower();
  std::optional<long long> theta;
  // Vertices where f is nonzero pin theta; everywhere else the neighbour sum must vanish.
  for (std::uint32_t x = 0; x < g.num_vertices(); ++x) {
    long long total = 0;
    for (Elem s : g.connection_set()) total += values[t.add(Elem{x}, s).code];
    const long long fx = values[x];
    if (fx == 0) {
      if (total != 0) return std::nullopt;
      continue;
    }
    if (total % fx != 0) return std::nullopt;
    const long long th = total / fx;
    if (theta && *theta != th) return std::nullopt;
    theta = th;
  }
  return theta;
}

std::string to_string(WitnessKind k) {
  return k == WitnessKind::isolated_clique_pair ? "isolated_clique_pair" : "complete_bipartite";
}

std::vector<int> indicator(const PeisertGraph& g, const WitnessSubgraph& w) {
  std::vector<int> f(g.num_vertices(), 0);
  for (Elem x : w.t0) f[x.code] += 1;
  for (Elem x : w.t1) f[x.code] -= 1;
  return f;
}

bool verify_witness(const PeisertGraph& g, const WitnessSubgraph& w) {
  std::vector<char> seen(g.num_vertices(), 0);
  for (const auto* part : {&w.t0, &w.t1}) {
    for (Elem x : *part) {
      require(x.code < g.num_vertices(), "witness vertex out of range");
      require(!seen[x.code], "witness parts must be disjoint sets");
      seen[x.code] = 1;
    }
  }
  const bool inside = w.kind == WitnessKind::isolated_clique_pair;
  auto part_ok = [&](const std::vector<Elem>& part) {
    for (std::size_t i = 0; i < part.size(); ++i) {
      for (std::size_t j = i + 1; j < part.size(); ++j) {
        if (g.adjacent(part[i], part[j]) != inside) return false;
      }
    }
    return true;
  };
  if (!part_ok(w.t0) || !part_ok(w.t1)) return false;
  for (Elem a : w.t0) {
    for (Elem b : w.t1) {
      if (g.adjacent(a, b) == inside) return false;
    }
  }
  return eigenvalue_of(g, indicator(g, w)).has_value();
}

namespace {

std::uint32_t root_of(const PeisertGraph& g) {
  const auto r = exact_sqrt(g.q());
  require(r.has_value(), "q must be a square");
  return *r;
}

std::vector<Elem> difference(const std::vector<Elem>& a, const std::vector<Elem>& b) {
  std::vector<Elem> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

Clique clique_cq(const PeisertGraph& xq, int i) {
  const std::uint32_t r = root_of(xq);
  require(i >= 0 && static_cast<std::uint32_t>(i) <= r, "index i must lie in [0, sqrt(q)]");
  const FieldTower& t = xq.tower();
  const Elem scale = t.pow(t.epsilon(), i);
  std::vector<Elem> v;
  for (Elem g : t.fq_elements()) v.push_back(t.mul(scale, t.add(t.pow(g, r), t.mul(g, xq.basis().beta()))));
  require(is_clique(xq, v), "C_q is not a clique of this graph");
  Clique c = make_clique(xq, std::move(v));
  require(c.kind == CliqueKind::noncanonical_maximum, "C_q is not a non-canonical maximum clique of this graph");
  return c;
}

WitnessSubgraph f1_witness(const PeisertGraph& xq, const Clique& canonical, int i) {
  const std::uint32_t r = root_of(xq);
  require(canonical.kind == CliqueKind::canonical && !canonical.vertices.empty() && canonical.vertices.front().code == 0,
          "f1 needs a canonical clique through 0");
  const Clique cq = clique_cq(xq, i);
  std::vector<Elem> d;
  std::set_intersection(canonical.vertices.begin(), canonical.vertices.end(), cq.vertices.begin(), cq.vertices.end(),
                        std::back_inserter(d));
  verify(d.size() == r, "canonical clique meets eps^i C_q in " + std::to_string(d.size()) + " points, expected " +
                            std::to_string(r));
  return {difference(canonical.vertices, d), difference(cq.vertices, d), WitnessKind::isolated_clique_pair};
}

WitnessSubgraph f2_witness(const PeisertGraph& xq) {
  const std::uint32_t r = root_of(xq);
  const FieldTower& t = xq.tower();
  WitnessSubgraph w;
  w.kind = WitnessKind::complete_bipartite;
  for (Elem g : t.fq_elements().subspan(1)) {
    if (t.pow(g, static_cast<long long>(r) + 1) == GaloisField::one()) {
      w.t0.push_back(g);
      w.t1.push_back(t.mul(g, xq.basis().beta()));
    }
  }
  std::sort(w.t0.begin(), w.t0.end());
  std::sort(w.t1.begin(), w.t1.end());
  verify(w.t0.size() == r + 1, "the oval has the wrong size");
  return w;
}

namespace {

Eigenfunction from_witness(const PeisertGraph& g, const WitnessSubgraph& w) {
  verify(verify_witness(g, w), "witness subgraph does not have the " + to_string(w.kind) + " shape");
  Eigenfunction f;
  f.values = indicator(g, w);
  const auto theta = eigenvalue_of(g, f.values);
  verify(theta.has_value(), "indicator is not an eigenfunction");
  f.eigenvalue = *theta;
  return f;
}

}  // namespace

Eigenfunction build_f1(const PeisertGraph& xq, const Clique& canonical, int i) {
  return from_witness(xq, f1_witness(xq, canonical, i));
}

Eigenfunction build_f2(const PeisertGraph& xq) { return from_witness(xq, f2_witness(xq)); }

}  // namespace peisert
