#include "peisert/canon.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <numeric>

#include "peisert/error.hpp"

namespace peisert {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL + h;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Ordered partition: cells are contiguous position ranges of `elems`.
struct Partition {
  std::vector<int> elems;  // position -> vertex
  std::vector<int> pos;    // vertex -> position
  std::vector<int> cell;   // position -> start of its cell
  std::vector<int> size;   // cell start -> cell size
  int cells = 0;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

class Canonizer {
 public:
  Canonizer(const BitGraph& g, const CanonOptions& opt) : g_(g), opt_(opt), n_(static_cast<int>(g.size())) {
    adj_.resize(static_cast<std::size_t>(n_));
    for (int u = 0; u < n_; ++u) {
      const auto r = g.row(static_cast<std::size_t>(u));
      for (std::size_t k = 0; k < r.size(); ++k) {
        std::uint64_t w = r[k];
        while (w != 0) {
          adj_[static_cast<std::size_t>(u)].push_back(static_cast<int>(k * 64 + static_cast<std::size_t>(std::countr_zero(w))));
          w &= w - 1;
        }
      }
      max_deg_ = std::max(max_deg_, adj_[static_cast<std::size_t>(u)].size());
    }
    cnt_.assign(static_cast<std::size_t>(n_), 0);
    inq_.assign(static_cast<std::size_t>(n_), 0);
    mask_.assign(g.words(), 0);
  }

  CanonicalForm run() {
    CanonicalForm out;
    if (n_ == 0) {
      out.certificate.assign(4, 0);
      return out;
    }
    Partition root = initial_partition();
    std::vector<int> queue;
    for (int c = 0; c < n_; c += root.size[static_cast<std::size_t>(c)]) queue.push_back(c);
    cur_inv_.assign(1, refine(root, queue));
    cur_vertices_.clear();
    eq_first_.assign(1, 1);
    cmp_best_.assign(1, 0);
    search(0, root);

    out.labeling.assign(best_lab_.begin(), best_lab_.end());
    out.certificate.reserve(4 + best_rows_.size() * 8);
    for (int b = 0; b < 4; ++b) out.certificate.push_back(static_cast<std::uint8_t>((static_cast<std::uint32_t>(n_) >> (8 * b)) & 0xff));
    for (std::uint64_t w : best_rows_) {
      for (int b = 0; b < 8; ++b) out.certificate.push_back(static_cast<std::uint8_t>((w >> (8 * b)) & 0xff));
    }
    out.automorphisms = std::move(gens_);
    out.stats = stats_;
    out.stats.generators = out.automorphisms.size();
    return out;
  }

 private:
  Partition initial_partition() const {
    Partition p;
    const auto n = static_cast<std::size_t>(n_);
    p.elems.resize(n);
    std::iota(p.elems.begin(), p.elems.end(), 0);
    if (!opt_.colors.empty()) {
      require(opt_.colors.size() == n, "colour vector has the wrong length");
      std::stable_sort(p.elems.begin(), p.elems.end(), [&](int a, int b) {
        return opt_.colors[static_cast<std::size_t>(a)] < opt_.colors[static_cast<std::size_t>(b)];
      });
    }
    p.pos.resize(n);
    p.cell.resize(n);
    p.size.assign(n, 0);
    int start = 0;
    for (int i = 0; i < n_; ++i) {
      p.pos[static_cast<std::size_t>(p.elems[static_cast<std::size_t>(i)])] = i;
      if (i > 0 && !opt_.colors.empty() &&
          opt_.colors[static_cast<std::size_t>(p.elems[static_cast<std::size_t>(i)])] !=
              opt_.colors[static_cast<std::size_t>(p.elems[static_cast<std::size_t>(i - 1)])]) {
        start = i;
      }
      p.cell[static_cast<std::size_t>(i)] = start;
      ++p.size[static_cast<std::size_t>(start)];
    }
    for (int i = 0; i < n_; ++i) p.cells += (p.cell[static_cast<std::size_t>(i)] == i) ? 1 : 0;
    return p;
  }

  // Equitable refinement; returns a hash of everything that happened, which
  // is an isomorphism invariant of the node.
  std::uint64_t refine(Partition& p, std::vector<int>& queue) {
    std::uint64_t h = 0x51ed27u;
    std::size_t head = 0;
    for (int s : queue) inq_[static_cast<std::size_t>(s)] = 1;
    std::vector<int> members;
    while (head < queue.size() && p.cells < n_) {
      const int s = queue[head++];
      inq_[static_cast<std::size_t>(s)] = 0;
      const int ws = p.size[static_cast<std::size_t>(s)];
      members.assign(p.elems.begin() + s, p.elems.begin() + s + ws);

      const std::size_t open = static_cast<std::size_t>(n_ - p.cells + 1);  // rough count of unsettled positions
      const bool accumulate = static_cast<std::size_t>(ws) * max_deg_ < open * g_.words() * 4;
      if (accumulate) {
        for (int w : members) {
          for (int u : adj_[static_cast<std::size_t>(w)]) ++cnt_[static_cast<std::size_t>(u)];
        }
      } else {
        std::fill(mask_.begin(), mask_.end(), 0);
        for (int w : members) mask_[static_cast<std::size_t>(w) / 64] |= std::uint64_t{1} << (w % 64);
        for (int c = 0; c < n_; c += p.size[static_cast<std::size_t>(c)]) {
          if (p.size[static_cast<std::size_t>(c)] == 1) continue;
          for (int i = c; i < c + p.size[static_cast<std::size_t>(c)]; ++i) {
            const int v = p.elems[static_cast<std::size_t>(i)];
            const auto r = g_.row(static_cast<std::size_t>(v));
            int k = 0;
            for (std::size_t j = 0; j < r.size(); ++j) k += std::popcount(r[j] & mask_[j]);
            cnt_[static_cast<std::size_t>(v)] = k;
          }
        }
      }

      h = mix(h, static_cast<std::uint64_t>(s));
      for (int c = 0; c < n_;) {
        const int sz = p.size[static_cast<std::size_t>(c)];
        if (sz > 1) h = split(p, c, sz, queue, h);
        c += sz;
      }

      if (accumulate) {
        for (int w : members) {
          for (int u : adj_[static_cast<std::size_t>(w)]) cnt_[static_cast<std::size_t>(u)] = 0;
        }
      } else {
        for (int i = 0; i < n_; ++i) cnt_[static_cast<std::size_t>(i)] = 0;
      }
    }
    for (std::size_t i = head; i < queue.size(); ++i) inq_[static_cast<std::size_t>(queue[i])] = 0;
    queue.clear();
    return mix(h, static_cast<std::uint64_t>(p.cells));
  }

  std::uint64_t split(Partition& p, int c, int sz, std::vector<int>& queue, std::uint64_t h) {
    const int c0 = cnt_[static_cast<std::size_t>(p.elems[static_cast<std::size_t>(c)])];
    bool same = true;
    for (int i = c + 1; i < c + sz && same; ++i) same = cnt_[static_cast<std::size_t>(p.elems[static_cast<std::size_t>(i)])] == c0;
    if (same) return h;

    auto first = p.elems.begin() + c;
    std::stable_sort(first, first + sz, [&](int a, int b) {
      return cnt_[static_cast<std::size_t>(a)] < cnt_[static_cast<std::size_t>(b)];
    });
    const bool was_queued = inq_[static_cast<std::size_t>(c)] != 0;
    std::vector<std::pair<int, int>> frags;  // (start, size)
    int start = c;
    for (int i = c; i < c + sz; ++i) {
      const int v = p.elems[static_cast<std::size_t>(i)];
      p.pos[static_cast<std::size_t>(v)] = i;
      if (i > c && cnt_[static_cast<std::size_t>(v)] != cnt_[static_cast<std::size_t>(p.elems[static_cast<std::size_t>(i - 1)])]) {
        frags.emplace_back(start, i - start);
        start = i;
      }
      p.cell[static_cast<std::size_t>(i)] = start;
    }
    frags.emplace_back(start, c + sz - start);

    h = mix(h, static_cast<std::uint64_t>(c));
    h = mix(h, frags.size());
    std::size_t largest = 0;
    for (std::size_t f = 0; f < frags.size(); ++f) {
      const auto [fs, fsz] = frags[f];
      p.size[static_cast<std::size_t>(fs)] = fsz;
      h = mix(h, static_cast<std::uint64_t>(cnt_[static_cast<std::size_t>(p.elems[static_cast<std::size_t>(fs)])]));
      h = mix(h, static_cast<std::uint64_t>(fsz));
      if (fsz > frags[largest].second) largest = f;
    }
    p.cells += static_cast<int>(frags.size()) - 1;
    for (std::size_t f = 0; f < frags.size(); ++f) {
      const int fs = frags[f].first;
      if (was_queued ? fs != c : f != largest) {
        if (!inq_[static_cast<std::size_t>(fs)]) {
          inq_[static_cast<std::size_t>(fs)] = 1;
          queue.push_back(fs);
        }
      }
    }
    return h;
  }

  int target_cell(const Partition& p) const {
    int best = -1, best_size = 1;
    for (int c = 0; c < n_; c += p.size[static_cast<std::size_t>(c)]) {
      if (p.size[static_cast<std::size_t>(c)] > best_size) {
        best = c;
        best_size = p.size[static_cast<std::size_t>(c)];
      }
    }
    return best;
  }

  static int individualize(Partition& p, int v) {
    const int s = p.cell[static_cast<std::size_t>(p.pos[static_cast<std::size_t>(v)])];
    const int k = p.size[static_cast<std::size_t>(s)];
    const int pv = p.pos[static_cast<std::size_t>(v)];
    const int u = p.elems[static_cast<std::size_t>(s)];
    std::swap(p.elems[static_cast<std::size_t>(s)], p.elems[static_cast<std::size_t>(pv)]);
    p.pos[static_cast<std::size_t>(v)] = s;
    p.pos[static_cast<std::size_t>(u)] = pv;
    p.size[static_cast<std::size_t>(s)] = 1;
    p.size[static_cast<std::size_t>(s + 1)] = k - 1;
    for (int i = s + 1; i < s + k; ++i) p.cell[static_cast<std::size_t>(i)] = s + 1;
    ++p.cells;
    return s;
  }

  std::vector<std::uint64_t> permuted_rows(const Partition& p) const {
    const std::size_t w = g_.words();
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(n_) * w, 0);
    for (int i = 0; i < n_; ++i) {
      for (int u : adj_[static_cast<std::size_t>(p.elems[static_cast<std::size_t>(i)])]) {
        const auto j = static_cast<std::size_t>(p.pos[static_cast<std::size_t>(u)]);
        rows[static_cast<std::size_t>(i) * w + j / 64] |= std::uint64_t{1} << (j % 64);
      }
    }
    return rows;
  }

  static int common_prefix(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t k = 0;
    while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
    return static_cast<int>(k);
  }

  void record_automorphism(const std::vector<int>& from_lab, const Partition& p) {
    std::vector<std::uint32_t> gamma(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
      gamma[static_cast<std::size_t>(from_lab[static_cast<std::size_t>(i)])] =
          static_cast<std::uint32_t>(p.elems[static_cast<std::size_t>(i)]);
    }
    gens_.push_back(std::move(gamma));
  }

  void set_best(const Partition& p, std::vector<std::uint64_t> rows, int depth) {
    best_rows_ = std::move(rows);
    best_lab_ = p.elems;
    best_vertices_ = cur_vertices_;
    best_inv_.assign(cur_inv_.begin(), cur_inv_.begin() + depth + 1);
    for (int d = 0; d <= depth; ++d) cmp_best_[static_cast<std::size_t>(d)] = 0;
  }

  int leaf(const Partition& p, int depth) {
    ++stats_.leaves;
    auto rows = permuted_rows(p);
    if (!have_first_) {
      have_first_ = true;
      first_rows_ = rows;
      first_lab_ = p.elems;
      first_vertices_ = cur_vertices_;
      first_inv_ = cur_inv_;
      set_best(p, std::move(rows), depth);
      return -1;
    }
    if (eq_first_[static_cast<std::size_t>(depth)] && rows == first_rows_) {
      record_automorphism(first_lab_, p);
      return common_prefix(cur_vertices_, first_vertices_);
    }
    const int cmp = cmp_best_[static_cast<std::size_t>(depth)];
    if (cmp == 0) {
      if (rows == best_rows_) {
        record_automorphism(best_lab_, p);
        return common_prefix(cur_vertices_, best_vertices_);
      }
      if (best_rows_ < rows) set_best(p, std::move(rows), depth);
    } else if (cmp > 0) {
      set_best(p, std::move(rows), depth);
    }
    return -1;
  }

  // Orbits of the automorphisms found so far that fix the first path's
  // first `depth` vertices pointwise.
  UnionFind& stabilizer_orbits(int depth) {
    if (orbit_cache_.size() <= static_cast<std::size_t>(depth)) orbit_cache_.resize(static_cast<std::size_t>(depth) + 1);
    auto& entry = orbit_cache_[static_cast<std::size_t>(depth)];
    if (entry.first != gens_.size()) {
      entry.second = UnionFind(static_cast<std::size_t>(n_));
      for (const auto& g : gens_) {
        bool fixes = true;
        for (int d = 0; d < depth && fixes; ++d) {
          const int v = first_vertices_[static_cast<std::size_t>(d)];
          fixes = static_cast<int>(g[static_cast<std::size_t>(v)]) == v;
        }
        if (!fixes) continue;
        for (int u = 0; u < n_; ++u) entry.second.unite(u, static_cast<int>(g[static_cast<std::size_t>(u)]));
      }
      entry.first = gens_.size();
    }
    return entry.second;
  }

  int search(int depth, const Partition& p) {
    ++stats_.nodes;
    if (opt_.node_budget != 0 && stats_.nodes > opt_.node_budget) {
      throw BudgetExceeded("canonical labeling exceeded its node budget", stats_.nodes, stats_.leaves);
    }
    if (p.cells == n_) return leaf(p, depth);

    const int s = target_cell(p);
    const std::vector<int> children(p.elems.begin() + s, p.elems.begin() + s + p.size[static_cast<std::size_t>(s)]);
    const bool on_first = !have_first_ || common_prefix(cur_vertices_, first_vertices_) >= depth;
    std::vector<int> explored;

    const auto d1 = static_cast<std::size_t>(depth) + 1;
    if (cur_inv_.size() <= d1) cur_inv_.resize(d1 + 1);
    if (eq_first_.size() <= d1) eq_first_.resize(d1 + 1);
    if (cmp_best_.size() <= d1) cmp_best_.resize(d1 + 1);
    cur_vertices_.resize(static_cast<std::size_t>(depth));

    for (int v : children) {
      if (on_first && !gens_.empty() && !explored.empty()) {
        auto& uf = stabilizer_orbits(depth);
        const int rv = uf.find(v);
        if (std::any_of(explored.begin(), explored.end(), [&](int w) { return uf.find(w) == rv; })) continue;
      }
      Partition c = p;
      std::vector<int> queue{individualize(c, v)};
      const std::uint64_t inv = refine(c, queue);
      cur_vertices_.resize(static_cast<std::size_t>(depth));
      cur_vertices_.push_back(v);
      cur_inv_[d1] = inv;
      if (!have_first_) {
        eq_first_[d1] = 1;
        cmp_best_[d1] = 0;
      } else {
        eq_first_[d1] = eq_first_[d1 - 1] && first_inv_.size() > d1 && first_inv_[d1] == inv;
        int cmp = cmp_best_[d1 - 1];
        if (cmp == 0) {
          if (best_inv_.size() > d1) {
            cmp = inv < best_inv_[d1] ? -1 : (inv > best_inv_[d1] ? 1 : 0);
          } else {
            cmp = 1;
          }
        }
        cmp_best_[d1] = cmp;
        if (!eq_first_[d1] && cmp < 0) continue;
      }
      const int jump = search(depth + 1, c);
      if (on_first) explored.push_back(v);
      if (jump >= 0 && jump < depth) return jump;
    }
    return -1;
  }

  const BitGraph& g_;
  const CanonOptions& opt_;
  int n_;
  std::vector<std::vector<int>> adj_;
  std::size_t max_deg_ = 0;
  std::vector<int> cnt_;
  std::vector<char> inq_;
  std::vector<std::uint64_t> mask_;

  bool have_first_ = false;
  std::vector<std::uint64_t> first_rows_, best_rows_;
  std::vector<int> first_lab_, best_lab_;
  std::vector<int> first_vertices_, best_vertices_, cur_vertices_;
  std::vector<std::uint64_t> first_inv_, best_inv_, cur_inv_;
  std::vector<char> eq_first_;
  std::vector<int> cmp_best_;
  std::vector<std::vector<std::uint32_t>> gens_;
  std::vector<std::pair<std::size_t, UnionFind>> orbit_cache_;
  CanonStats stats_;
};

}  // namespace

std::string CanonicalForm::digest() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint8_t b : certificate) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CanonicalForm canonical_form(const BitGraph& g, const CanonOptions& options) {
  Canonizer c(g, options);
  return c.run();
}

bool is_isomorphism(const BitGraph& g1, const BitGraph& g2, const std::vector<std::uint32_t>& map) {
  const std::size_t n = g1.size();
  if (g2.size() != n || map.size() != n) return false;
  std::vector<char> hit(n, 0);
  for (auto v : map) {
    if (v >= n || hit[v]) return false;
    hit[v] = 1;
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (g1.test(u, v) != g2.test(map[u], map[v])) return false;
    }
  }
  return true;
}

std::optional<std::vector<std::uint32_t>> find_isomorphism(const BitGraph& g1, const BitGraph& g2,
                                                           const CanonOptions& options) {
  if (g1.size() != g2.size()) return std::nullopt;
  const auto c1 = canonical_form(g1, options);
  const auto c2 = canonical_form(g2, options);
  if (c1.certificate != c2.certificate) return std::nullopt;
  std::vector<std::uint32_t> map(g1.size());
  for (std::size_t i = 0; i < g1.size(); ++i) map[c1.labeling[i]] = c2.labeling[i];
  verify(is_isomorphism(g1, g2, map), "equal certificates but the induced map is not an isomorphism");
  return map;
}

}  // namespace peisert
