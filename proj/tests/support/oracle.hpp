#pragma once

// Slow reference implementations used to cross-check the library. They share
// no search code with it: adjacency comes from directions of differences,
// cliques from plain backtracking, field products from polynomial arithmetic.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "peisert/fields.hpp"
#include "peisert/graph.hpp"
#include "peisert/plane.hpp"

namespace oracle {

using peisert::Elem;

/// Dense adjacency rebuilt from scratch: u ~ v iff the direction of u - v is in the set.
inline std::vector<std::vector<char>> adjacency(const peisert::PeisertGraph& g) {
  const auto& t = g.tower();
  const auto& basis = g.basis();
  const std::uint32_t n = t.order();
  std::vector<char> in_dirs(g.q() + 1, 0);
  for (int d : g.directions()) in_dirs[static_cast<std::size_t>(d)] = 1;
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) {
      const Elem diff = t.sub(Elem{u}, Elem{v});
      if (in_dirs[static_cast<std::size_t>(basis.direction(diff))]) adj[u][v] = adj[v][u] = 1;
    }
  }
  return adj;
}

namespace detail {

template <class Visit>
void extend(const std::vector<std::vector<char>>& adj, std::size_t target, std::vector<std::uint32_t>& chosen,
            const std::vector<std::uint32_t>& candidates, Visit& visit) {
  if (chosen.size() == target) {
    visit(static_cast<const std::vector<std::uint32_t>&>(chosen));
    return;
  }
  if (chosen.size() + candidates.size() < target) return;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const std::uint32_t v = candidates[i];
    std::vector<std::uint32_t> next;
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      if (adj[v][candidates[j]]) next.push_back(candidates[j]);
    }
    chosen.push_back(v);
    extend(adj, target, chosen, next, visit);
    chosen.pop_back();
  }
}

}  // namespace detail

/// Calls visit(sorted codes) for every clique of size `size` containing vertex 0.
template <class Visit>
void for_each_clique_through_zero(const std::vector<std::vector<char>>& adj, std::size_t size, Visit visit) {
  std::vector<std::uint32_t> nbrs;
  for (std::uint32_t v = 1; v < adj.size(); ++v) {
    if (adj[0][v]) nbrs.push_back(v);
  }
  std::vector<std::uint32_t> chosen{0};
  detail::extend(adj, size, chosen, nbrs, visit);
}

/// Every clique of size `size` containing vertex 0, as sorted code lists in
/// lexicographic order.
inline std::vector<std::vector<std::uint32_t>> cliques_through_zero(const std::vector<std::vector<char>>& adj,
                                                                     std::size_t size) {
  std::vector<std::vector<std::uint32_t>> out;
  for_each_clique_through_zero(adj, size, [&](const std::vector<std::uint32_t>& c) { out.push_back(c); });
  std::sort(out.begin(), out.end());
  return out;
}

/// Order-independent fingerprint of a family of vertex sets: count plus a sum
/// of per-set hashes.
struct Fingerprint {
  std::uint64_t count = 0;
  std::uint64_t canonical = 0;
  std::uint64_t hash_sum = 0;

  template <class Codes>
  void add(const Codes& sorted_codes, bool is_canonical) {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (auto c : sorted_codes) {
      h ^= static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdull;
    }
    ++count;
    canonical += is_canonical ? 1 : 0;
    hash_sum += h ^ (h >> 33);
  }
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

/// True if the clique lies on one line through 0, i.e. all its nonzero points share a direction.
inline bool on_one_line(const peisert::TowerBasis& basis, const std::vector<std::uint32_t>& clique) {
  int dir = -1;
  for (std::uint32_t v : clique) {
    if (v == 0) continue;
    const int d = basis.direction(Elem{v});
    if (dir >= 0 && d != dir) return false;
    dir = d;
  }
  return true;
}

/// Product of two elements of F_p[t]/(f) given as base-p digit codes.
inline std::uint32_t poly_mul(int p, const peisert::Poly& f, std::uint32_t a, std::uint32_t b) {
  const std::size_t d = f.size() - 1;
  std::vector<long long> x(d), y(d), z(2 * d, 0);
  for (std::size_t i = 0; i < d; ++i, a /= static_cast<std::uint32_t>(p), b /= static_cast<std::uint32_t>(p)) {
    x[i] = a % static_cast<std::uint32_t>(p);
    y[i] = b % static_cast<std::uint32_t>(p);
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) z[i + j] = (z[i + j] + x[i] * y[j]) % p;
  }
  // f is monic; reduce from the top.
  for (std::size_t k = 2 * d - 1; k >= d; --k) {
    const long long c = z[k];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= d; ++i) z[k - d + i] = ((z[k - d + i] - c * f[i]) % p + p) % p;
  }
  std::uint32_t code = 0;
  for (std::size_t i = d; i-- > 0;) code = code * static_cast<std::uint32_t>(p) + static_cast<std::uint32_t>(z[i]);
  return code;
}

inline std::uint32_t poly_add(int p, std::size_t d, std::uint32_t a, std::uint32_t b) {
  std::uint32_t code = 0, scale = 1;
  for (std::size_t i = 0; i < d; ++i) {
    const std::uint32_t s = (a % static_cast<std::uint32_t>(p) + b % static_cast<std::uint32_t>(p)) % static_cast<std::uint32_t>(p);
    code += s * scale;
    scale *= static_cast<std::uint32_t>(p);
    a /= static_cast<std::uint32_t>(p);
    b /= static_cast<std::uint32_t>(p);
  }
  return code;
}

/// Irreducibility by trial division against every monic polynomial of degree <= deg/2.
inline bool irreducible(int p, const peisert::Poly& f) {
  const int deg = static_cast<int>(f.size()) - 1;
  for (int dg = 1; dg <= deg / 2; ++dg) {
    std::uint64_t count = 1;
    for (int i = 0; i < dg; ++i) count *= static_cast<std::uint64_t>(p);
    for (std::uint64_t c = 0; c < count; ++c) {
      std::vector<long long> g(static_cast<std::size_t>(dg) + 1, 0);
      std::uint64_t x = c;
      for (int i = 0; i < dg; ++i, x /= static_cast<std::uint64_t>(p)) g[static_cast<std::size_t>(i)] = static_cast<long long>(x % static_cast<std::uint64_t>(p));
      g[static_cast<std::size_t>(dg)] = 1;
      std::vector<long long> r(f.begin(), f.end());
      for (int k = deg; k >= dg; --k) {
        const long long c2 = r[static_cast<std::size_t>(k)] % p;
        if (c2 == 0) continue;
        for (int i = 0; i <= dg; ++i) {
          auto& t = r[static_cast<std::size_t>(k - dg + i)];
          t = ((t - c2 * g[static_cast<std::size_t>(i)]) % p + p) % p;
        }
      }
      if (std::all_of(r.begin(), r.end(), [p](long long v) { return v % p == 0; })) return false;
    }
  }
  return true;
}

}  // namespace oracle
