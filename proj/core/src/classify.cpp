#include "peisert/classify.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_set>

#include "peisert/cliques.hpp"
#include "peisert/error.hpp"

namespace peisert {

std::vector<DirectionSet> enumerate_types(const ProjectiveLine& line, int m) {
  const int size = line.size();
  require(m >= 1 && m <= size - 1, "need 1 <= m <= q");
  require(size <= 64, "type enumeration needs q <= 63");
  if (m <= 3) {
    // PGammaL(2,q) is 3-transitive on PG(1,q).
    DirectionSet d;
    for (int i = 0; i < m; ++i) d.push_back(i);
    return {d};
  }

  // Walk (m-3)-subsets T of {3, ..., q}; each unseen {0,1,2} ∪ T starts an
  // orbit, and every orbit member containing {0,1,2} is marked seen.
  const int k = m - 3;
  const int pool = size - 3;
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::uint64_t> reps;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  const std::uint64_t base = 0b111;
  while (true) {
    std::uint64_t mask = base;
    for (int i : idx) mask |= std::uint64_t{1} << (3 + i);
    if (!seen.contains(mask)) {
      std::uint64_t best = mask;
      for (std::uint64_t x : line.orbit(mask)) {
        if ((x & base) == base) seen.insert(x);
        if (mask_less(x, best)) best = x;
      }
      reps.push_back(best);
    }
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == pool - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  std::vector<DirectionSet> out;
  for (std::uint64_t r : reps) out.push_back(directions_from_mask(r));
  std::sort(out.begin(), out.end());
  return out;
}

CanonicalForm certificate(const PeisertGraph& g, const CanonOptions& options) {
  return canonical_form(g.bits(), options);
}

bool isomorphic(const PeisertGraph& g1, const PeisertGraph& g2, const CanonOptions& options) {
  if (g1.q() != g2.q() || g1.m() != g2.m()) return false;
  if (g1.basis().tower_ptr() == g2.basis().tower_ptr() && g1.q() <= 63) {
    ProjectiveLine line(g1.basis().tower_ptr());
    if (line.equivalent(g1.directions(), g2.directions())) return true;
  }
  return certificate(g1, options).certificate == certificate(g2, options).certificate;
}

namespace {

enum class Ekr { strict, without, undecided };

struct RepInfo {
  Ekr ekr = Ekr::undecided;
  std::optional<std::uint64_t> clique_count;
  std::vector<std::uint8_t> cert;
};

template <class Fn>
void parallel_for(std::size_t n, int workers, Fn fn) {
  const std::size_t w = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), 1, std::max<std::size_t>(n, 1));
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < w; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<CensusRow> census(const BasisPtr& basis, int m_lo, int m_hi, const CensusOptions& options) {
  require(basis != nullptr, "null basis");
  const std::uint32_t q = basis->q();
  require(m_lo >= 1 && m_lo <= m_hi && m_hi <= static_cast<int>(q), "census needs 1 <= m_lo <= m_hi <= q");
  require(q <= 32, "census is limited to q <= 32");
  const ProjectiveLine line(basis->tower_ptr());
  const SearchOptions search{options.clique_budget};
  CanonOptions canon;
  canon.node_budget = options.canon_budget;

  std::vector<CensusRow> rows;
  for (int m = m_lo; m <= m_hi; ++m) {
    const auto reps = enumerate_types(line, m);
    std::vector<RepInfo> info(reps.size());
    const bool several = reps.size() > 1;

    parallel_for(reps.size(), options.workers, [&](std::size_t i) {
      const PeisertGraph g(basis, reps[i]);
      try {
        info[i].ekr = strict_ekr(g, search).strict ? Ekr::strict : Ekr::without;
      } catch (const BudgetExceeded&) {
        info[i].ekr = Ekr::undecided;
      }
      if (several) {
        // Complements have the same isomorphism classes and far fewer q-cliques
        // once m passes (q + 1) / 2.
        const bool flip = 2 * m > static_cast<int>(q) + 1;
        try {
          const auto c = count_max_cliques(flip ? complement(g) : g, SearchOptions{options.invariant_budget});
          info[i].clique_count = c.canonical + c.noncanonical;
        } catch (const BudgetExceeded&) {
        }
      }
    });

    // Cheap invariant first: the number of q-cliques through 0. Certificates
    // are only needed where it fails to separate representatives.
    const bool all_counted = std::all_of(info.begin(), info.end(), [](const RepInfo& r) { return r.clique_count.has_value(); });
    std::map<std::uint64_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < reps.size(); ++i) groups[all_counted ? *info[i].clique_count : 0].push_back(i);
    std::vector<std::size_t> need_cert;
    for (const auto& [key, members] : groups) {
      if (members.size() > 1) need_cert.insert(need_cert.end(), members.begin(), members.end());
    }
    parallel_for(need_cert.size(), options.workers, [&](std::size_t j) {
      const std::size_t i = need_cert[j];
      info[i].cert = certificate(PeisertGraph(basis, reps[i]), canon).certificate;
    });

    CensusRow row;
    row.q = q;
    row.m = m;
    row.orbits = reps.size();
    for (const auto& [key, members] : groups) {
      std::map<std::vector<std::uint8_t>, Ekr> classes;
      for (std::size_t i : members) {
        auto [it, fresh] = classes.try_emplace(info[i].cert, info[i].ekr);
        if (fresh) continue;
        if (it->second == Ekr::undecided) {
          it->second = info[i].ekr;
        } else if (info[i].ekr != Ekr::undecided) {
          verify(it->second == info[i].ekr, "isomorphic graphs disagree on strict-EKR");
        }
      }
      for (const auto& [cert, ekr] : classes) {
        ++row.n_graphs;
        if (ekr == Ekr::strict) ++row.n_strict_ekr;
        if (ekr == Ekr::without) ++row.n_without;
        if (ekr == Ekr::undecided) ++row.n_undecided;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::uint64_t type_walk_size(std::uint32_t q, int m) {
  if (m <= 3) return 1;
  const std::uint64_t n = q - 2;
  const std::uint64_t k = static_cast<std::uint64_t>(m - 3);
  if (k > n) return 0;
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

EkrSweep ekr_sweep(const BasisPtr& basis, int m, const CensusOptions& options) {
  require(basis != nullptr, "null basis");
  const auto reps = enumerate_types(ProjectiveLine(basis->tower_ptr()), m);
  std::vector<Ekr> ekr(reps.size(), Ekr::undecided);
  parallel_for(reps.size(), options.workers, [&](std::size_t i) {
    try {
      ekr[i] = strict_ekr(PeisertGraph(basis, reps[i]), SearchOptions{options.clique_budget}).strict ? Ekr::strict : Ekr::without;
    } catch (const BudgetExceeded&) {
    }
  });
  EkrSweep out;
  out.orbits = reps.size();
  for (Ekr e : ekr) {
    if (e == Ekr::strict) ++out.strict;
    if (e == Ekr::without) ++out.without;
    if (e == Ekr::undecided) ++out.undecided;
  }
  return out;
}

ExtremalValues extremal_values(const std::vector<CensusRow>& rows) {
  ExtremalValues out;
  for (const auto& r : rows) {
    if (r.n_without > 0) {
      out.e_q = r.m;
      break;
    }
    if (!r.complete()) out.exact = false;
  }
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    if (it->n_strict_ekr > 0) {
      out.big_e_q = it->m;
      break;
    }
    if (!it->complete()) out.exact = false;
  }
  return out;
}

}  // namespace peisert
