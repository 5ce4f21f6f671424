#include "peisert/cliques.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "peisert/error.hpp"

namespace peisert {

std::string to_string(CliqueKind k) {
  switch (k) {
    case CliqueKind::canonical: return "canonical";
    case CliqueKind::noncanonical_maximum: return "noncanonical_maximum";
    case CliqueKind::maximal_submaximum: return "maximal_submaximum";
  }
  return "unknown";
}

std::optional<std::uint32_t> exact_sqrt(std::uint32_t q) {
  std::uint32_t r = 0;
  while ((r + 1) * (r + 1) <= q) ++r;
  if (r * r == q) return r;
  return std::nullopt;
}

bool is_clique(const PeisertGraph& g, std::span<const Elem> vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (!g.adjacent(vertices[i], vertices[j])) return false;
    }
  }
  return true;
}

Clique make_clique(const PeisertGraph& g, std::vector<Elem> vertices) {
  std::sort(vertices.begin(), vertices.end());
  Clique c;
  c.directions = directions_of(g.basis(), vertices);
  if (vertices.size() == g.q()) {
    c.kind = c.directions.size() == 1 ? CliqueKind::canonical : CliqueKind::noncanonical_maximum;
  } else {
    c.kind = CliqueKind::maximal_submaximum;
  }
  c.vertices = std::move(vertices);
  return c;
}

Clique canonical_clique(const PeisertGraph& g, int direction) {
  require(direction >= 0 && direction <= static_cast<int>(g.q()) && g.has_direction(direction),
          "direction is not in the graph");
  const FieldTower& t = g.tower();
  const Elem rep = g.basis().coset_rep(direction);
  std::vector<Elem> line;
  for (Elem c : t.fq_elements()) line.push_back(t.mul(c, rep));
  return make_clique(g, std::move(line));
}

namespace {

// q-cliques through 0 as graphs of functions f: F_q -> F_q with f(0) = 0.
//
// A direction d0 missing from the graph is moved to the vertical by a linear
// map of AG(2,q). No two clique points can then share an x-coordinate, so a
// q-clique meets every vertical line exactly once. Column values are kept as
// bit masks over fq indices and intersected forward after each assignment.
class FunctionSearch {
 public:
  FunctionSearch(const PeisertGraph& g, const SearchOptions& opt) : g_(g), opt_(opt) {
    const FieldTower& t = g.tower();
    q_ = static_cast<int>(g.q());
    require(q_ <= 64, "maximum clique search needs q <= 64");
    const auto uq = static_cast<std::size_t>(q_);
    add_.assign(uq * uq, 0);
    sub_.assign(uq * uq, 0);
    mul_.assign(uq * uq, 0);
    for (int i = 0; i < q_; ++i) {
      for (int j = 0; j < q_; ++j) {
        const Elem a = t.fq_element(i), b = t.fq_element(j);
        add_[idx(i, j)] = t.fq_index(t.add(a, b));
        sub_[idx(i, j)] = t.fq_index(t.sub(a, b));
        mul_[idx(i, j)] = t.fq_index(t.mul(a, b));
      }
    }

    int d0 = 0;
    while (g.has_direction(d0)) ++d0;
    verify(d0 <= q_, "no missing direction");
    s_ = d0 == 0 ? -1 : d0 - 1;

    std::vector<int> slopes;
    for (int d : g.directions()) {
      const auto pt = pg_point(t, d);
      const auto [x, y] = forward(t.fq_index(pt.a), t.fq_index(pt.b));
      verify(x != 0, "an allowed direction became vertical");
      slopes.push_back(mul_[idx(y, inv_index(x))]);
    }
    // table_[dx][y0] = { y0 + dx * sigma : sigma allowed }
    table_.assign(uq * uq, 0);
    for (int dx = 1; dx < q_; ++dx) {
      for (int y0 = 0; y0 < q_; ++y0) {
        std::uint64_t m = 0;
        for (int s : slopes) m |= bit(add_[idx(y0, mul_[idx(dx, s)])]);
        table_[idx(dx, y0)] = m;
      }
    }
  }

  template <class Leaf>
  SearchStats run(Leaf&& leaf) {
    std::vector<std::uint64_t> cand(static_cast<std::size_t>(q_), 0);
    f_.assign(static_cast<std::size_t>(q_), -1);
    f_[0] = 0;
    for (int x = 1; x < q_; ++x) cand[static_cast<std::size_t>(x)] = table_[idx(x, 0)];
    levels_.assign(static_cast<std::size_t>(q_) + 1, {});
    for (auto& l : levels_) l.resize(static_cast<std::size_t>(q_));
    stats_ = {};
    stop_ = false;
    if (q_ == 1) {
      emit(leaf);
    } else {
      dfs(1, cand, leaf);
    }
    stats_.stopped_early = stop_;
    return stats_;
  }

  /// Back to affine coordinates (a, b) as fq indices.
  std::pair<int, int> backward(int x, int y) const {
    if (s_ < 0) return {x, y};
    return {y, sub_[idx(mul_[idx(s_, y)], x)]};
  }
  const std::vector<int>& values() const { return f_; }
  bool is_linear() const {
    for (int x = 2; x < q_; ++x) {
      if (f_[static_cast<std::size_t>(x)] != mul_[idx(f_[1], x)]) return false;
    }
    return true;
  }

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * static_cast<std::size_t>(q_) + static_cast<std::size_t>(j); }
  static std::uint64_t bit(int i) { return std::uint64_t{1} << i; }
  int inv_index(int x) const {
    for (int y = 1; y < q_; ++y) {
      if (mul_[idx(x, y)] == 1) return y;
    }
    throw InternalInconsistency("no inverse in F_q");
  }
  std::pair<int, int> forward(int a, int b) const {
    if (s_ < 0) return {a, b};
    return {sub_[idx(mul_[idx(s_, a)], b)], a};
  }

  template <class Leaf>
  void emit(Leaf& leaf) {
    const bool lin = is_linear();
    ++stats_.found;
    if (lin) ++stats_.canonical;
    if (!leaf(lin)) stop_ = true;
  }

  template <class Leaf>
  void dfs(int depth, const std::vector<std::uint64_t>& cand, Leaf& leaf) {
    ++stats_.nodes;
    if (opt_.node_budget != 0 && stats_.nodes > opt_.node_budget) {
      throw BudgetExceeded("maximum clique search exceeded its node budget", stats_.nodes, stats_.found);
    }
    if (depth == q_) {
      emit(leaf);
      return;
    }
    int best = -1;
    int best_count = 65;
    for (int x = 1; x < q_; ++x) {
      if (f_[static_cast<std::size_t>(x)] >= 0) continue;
      const int c = std::popcount(cand[static_cast<std::size_t>(x)]);
      if (c < best_count) {
        best_count = c;
        best = x;
        if (c <= 1) break;
      }
    }
    if (best_count == 0) return;
    auto& next = levels_[static_cast<std::size_t>(depth)];
    std::uint64_t choices = cand[static_cast<std::size_t>(best)];
    while (choices != 0 && !stop_) {
      const int y = std::countr_zero(choices);
      choices &= choices - 1;
      bool dead = false;
      for (int x = 1; x < q_; ++x) {
        const auto ux = static_cast<std::size_t>(x);
        if (f_[ux] >= 0 || x == best) {
          next[ux] = 0;
          continue;
        }
        next[ux] = cand[ux] & table_[idx(sub_[idx(x, best)], y)];
        if (next[ux] == 0) {
          dead = true;
          break;
        }
      }
      if (dead) continue;
      f_[static_cast<std::size_t>(best)] = y;
      dfs(depth + 1, next, leaf);
      f_[static_cast<std::size_t>(best)] = -1;
    }
  }

  const PeisertGraph& g_;
  SearchOptions opt_;
  int q_ = 0;
  int s_ = -1;
  std::vector<int> add_, sub_, mul_;
  std::vector<std::uint64_t> table_;
  std::vector<int> f_;
  std::vector<std::vector<std::uint64_t>> levels_;
  SearchStats stats_;
  bool stop_ = false;
};

std::vector<Elem> clique_vertices(const PeisertGraph& g, const FunctionSearch& s) {
  const FieldTower& t = g.tower();
  std::vector<Elem> out;
  const auto& f = s.values();
  for (int x = 0; x < static_cast<int>(f.size()); ++x) {
    const auto [a, b] = s.backward(x, f[static_cast<std::size_t>(x)]);
    out.push_back(g.basis().point(t.fq_element(a), t.fq_element(b)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SearchStats visit_max_cliques(const PeisertGraph& g, const CliqueVisitor& visit, const SearchOptions& options) {
  FunctionSearch s(g, options);
  return s.run([&](bool canonical) {
    const auto v = clique_vertices(g, s);
    return visit(v, canonical);
  });
}

std::vector<Clique> max_cliques_through_zero(const PeisertGraph& g, const SearchOptions& options) {
  std::vector<Clique> out;
  FunctionSearch s(g, options);
  s.run([&](bool) {
    out.push_back(make_clique(g, clique_vertices(g, s)));
    return true;
  });
  std::sort(out.begin(), out.end(), [](const Clique& a, const Clique& b) { return a.vertices < b.vertices; });
  return out;
}

CliqueCounts count_max_cliques(const PeisertGraph& g, const SearchOptions& options) {
  FunctionSearch s(g, options);
  const auto st = s.run([](bool) { return true; });
  return {st.canonical, st.found - st.canonical};
}

EkrResult strict_ekr(const PeisertGraph& g, const SearchOptions& options) {
  EkrResult r;
  FunctionSearch s(g, options);
  const auto st = s.run([&](bool canonical) {
    if (canonical) return true;
    r.strict = false;
    r.witness = make_clique(g, clique_vertices(g, s));
    return false;
  });
  r.nodes = st.nodes;
  return r;
}

namespace {

// Pivoting Bron-Kerbosch over a candidate set of pairwise-tested vertices.
class MaximalSearch {
 public:
  template <class Adjacent>
  MaximalSearch(std::size_t n, Adjacent adjacent, const SearchOptions& opt) : opt_(opt), n_(n) {
    w_ = (n_ + 63) / 64;
    adj_.assign(n_ * w_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        if (adjacent(i, j)) {
          adj_[i * w_ + j / 64] |= std::uint64_t{1} << (j % 64);
          adj_[j * w_ + i / 64] |= std::uint64_t{1} << (i % 64);
        }
      }
    }
  }

  std::vector<std::vector<std::size_t>> run() {
    std::vector<std::uint64_t> p(w_, 0), x(w_, 0);
    for (std::size_t i = 0; i < n_; ++i) p[i / 64] |= std::uint64_t{1} << (i % 64);
    expand(p, x);
    return std::move(found_);
  }

 private:
  const std::uint64_t* row(std::size_t i) const { return adj_.data() + i * w_; }

  void expand(const std::vector<std::uint64_t>& p, const std::vector<std::uint64_t>& x) {
    ++nodes_;
    if (opt_.node_budget != 0 && nodes_ > opt_.node_budget) {
      throw BudgetExceeded("maximal clique enumeration exceeded its node budget", nodes_, found_.size());
    }
    bool p_empty = true, x_empty = true;
    for (std::size_t k = 0; k < w_; ++k) {
      p_empty = p_empty && p[k] == 0;
      x_empty = x_empty && x[k] == 0;
    }
    if (p_empty) {
      if (x_empty) found_.push_back(r_);
      return;
    }
    // Pivot maximizing |P ∩ N(u)| over u in P ∪ X.
    std::size_t pivot = 0;
    int best = -1;
    for (std::size_t k = 0; k < w_; ++k) {
      std::uint64_t cand = p[k] | x[k];
      while (cand != 0) {
        const std::size_t u = k * 64 + static_cast<std::size_t>(std::countr_zero(cand));
        cand &= cand - 1;
        int c = 0;
        const auto* ru = row(u);
        for (std::size_t j = 0; j < w_; ++j) c += std::popcount(p[j] & ru[j]);
        if (c > best) {
          best = c;
          pivot = u;
        }
      }
    }
    std::vector<std::uint64_t> pp = p, xx = x;
    std::vector<std::uint64_t> np(w_), nx(w_);
    const auto* rp = row(pivot);
    for (std::size_t k = 0; k < w_; ++k) {
      std::uint64_t todo = p[k] & ~rp[k];
      while (todo != 0) {
        const std::size_t v = k * 64 + static_cast<std::size_t>(std::countr_zero(todo));
        todo &= todo - 1;
        const auto* rv = row(v);
        for (std::size_t j = 0; j < w_; ++j) {
          np[j] = pp[j] & rv[j];
          nx[j] = xx[j] & rv[j];
        }
        r_.push_back(v);
        expand(np, nx);
        r_.pop_back();
        pp[v / 64] &= ~(std::uint64_t{1} << (v % 64));
        xx[v / 64] |= std::uint64_t{1} << (v % 64);
      }
    }
  }

  SearchOptions opt_;
  std::size_t n_ = 0, w_ = 0;
  std::vector<std::uint64_t> adj_;
  std::vector<std::size_t> r_;
  std::vector<std::vector<std::size_t>> found_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

std::vector<Clique> maximal_cliques_through_zero(const PeisertGraph& g, const SearchOptions& options) {
  const auto& s = g.connection_set();
  MaximalSearch search(s.size(), [&](std::size_t i, std::size_t j) { return g.adjacent(s[i], s[j]); }, options);
  std::vector<Clique> out;
  for (const auto& idx : search.run()) {
    std::vector<Elem> v{Elem{0}};
    for (auto i : idx) v.push_back(s[i]);
    out.push_back(make_clique(g, std::move(v)));
  }
  std::sort(out.begin(), out.end(), [](const Clique& a, const Clique& b) { return a.vertices < b.vertices; });
  return out;
}

std::vector<std::vector<std::uint32_t>> maximal_cliques_containing(const BitGraph& g, std::uint32_t v,
                                                                   const SearchOptions& options) {
  require(v < g.size(), "vertex out of range");
  std::vector<std::uint32_t> nbrs;
  for (std::uint32_t u = 0; u < g.size(); ++u) {
    if (g.test(v, u)) nbrs.push_back(u);
  }
  MaximalSearch search(nbrs.size(), [&](std::size_t i, std::size_t j) { return g.test(nbrs[i], nbrs[j]); }, options);
  std::vector<std::vector<std::uint32_t>> out;
  for (const auto& idx : search.run()) {
    std::vector<std::uint32_t> c{v};
    for (auto i : idx) c.push_back(nbrs[i]);
    std::sort(c.begin(), c.end());
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

NexusResult nexus_check(const PeisertGraph& g, const Clique& c) {
  require(c.vertices.size() == g.q(), "nexus needs a clique of size q");
  std::vector<char> in(g.num_vertices(), 0);
  for (Elem v : c.vertices) in[v.code] = 1;
  int nexus = -1;
  for (std::uint32_t v = 0; v < g.num_vertices(); ++v) {
    if (in[v]) continue;
    int cnt = 0;
    for (Elem u : c.vertices) cnt += g.adjacent(Elem{v}, u) ? 1 : 0;
    if (nexus < 0) nexus = cnt;
    verify(cnt == nexus, "clique is not regular: outside vertex " + std::to_string(v) + " has " + std::to_string(cnt) +
                             " neighbours in it, another has " + std::to_string(nexus));
  }
  return {nexus, nexus > 0};
}

int intersection_profile(const PeisertGraph& g, const Clique& c1, const Clique& c2) {
  require(c1.kind == CliqueKind::canonical, "first clique must be canonical");
  require(c2.kind == CliqueKind::noncanonical_maximum, "second clique must be non-canonical maximum");
  std::vector<Elem> common;
  std::set_intersection(c1.vertices.begin(), c1.vertices.end(), c2.vertices.begin(), c2.vertices.end(),
                        std::back_inserter(common));
  const int k = static_cast<int>(common.size());
  if (k == 0) return 0;
  const auto r = exact_sqrt(g.q());
  require(r.has_value(), "intersection sizes are only pinned down for square q");
  verify(k == static_cast<int>(*r), "canonical and non-canonical cliques meet in " + std::to_string(k) +
                                        " points, expected " + std::to_string(*r));
  return k;
}

bool baer_subarray_check(const PeisertGraph& g, const Clique& c) {
  const auto r = exact_sqrt(g.q());
  require(r.has_value(), "Baer structure needs square q");
  if (c.vertices.size() != g.q()) return false;
  const FieldTower& t = g.tower();
  for (int d : g.directions()) {
    const auto dir = pg_point(t, d);
    std::map<std::uint32_t, std::uint32_t> per_line;
    for (Elem v : c.vertices) {
      const auto pt = g.basis().pi(v);
      // b*u1 - a*u2 is constant along lines with direction (u1, u2).
      ++per_line[t.sub(t.mul(pt.b, dir.a), t.mul(pt.a, dir.b)).code];
    }
    if (per_line.size() != *r) return false;
    for (const auto& [key, count] : per_line) {
      if (count != *r) return false;
    }
  }
  return true;
}

}  // namespace peisert
