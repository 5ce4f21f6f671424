#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "peisert/canon.hpp"
#include "peisert/graph.hpp"

namespace peisert {

/// One representative per PGammaL(2,q)-orbit of m-subsets of PG(1,q), each
/// the lexicographically least set of its orbit, sorted. For m >= 3 every
/// representative contains the directions 0, 1 and 2.
std::vector<DirectionSet> enumerate_types(const ProjectiveLine& line, int m);

/// Canonical labeling of the dense adjacency matrix. Needs q <= 32.
CanonicalForm certificate(const PeisertGraph& g, const CanonOptions& options = {});

/// PGammaL-equivalent direction sets are accepted without search; otherwise
/// certificates decide. Different (m, q) answer false immediately.
bool isomorphic(const PeisertGraph& g1, const PeisertGraph& g2, const CanonOptions& options = {});

struct CensusOptions {
  /// Node budget for each strict-EKR search; 0 = unlimited.
  std::uint64_t clique_budget = 0;
  /// Node budget for the clique count used to pre-screen representatives
  /// before certificates; running out only means more certificates.
  std::uint64_t invariant_budget = 200000;
  /// Node budget for each canonical labeling; 0 = unlimited.
  std::uint64_t canon_budget = 0;
  /// Worker threads for the per-representative analysis. Output does not depend on it.
  int workers = 1;
};

struct CensusRow {
  std::uint32_t q = 0;
  int m = 0;
  std::uint64_t orbits = 0;    // PGammaL orbits before certificate merging
  std::uint64_t n_graphs = 0;  // pairwise non-isomorphic
  std::uint64_t n_strict_ekr = 0;
  std::uint64_t n_without = 0;
  /// Classes whose strict-EKR search ran out of budget. The two counts above
  /// are then lower bounds.
  std::uint64_t n_undecided = 0;

  bool complete() const { return n_undecided == 0; }
};

/// Rows for m_lo..m_hi over the given basis, 1 <= m_lo <= m_hi <= q.
std::vector<CensusRow> census(const BasisPtr& basis, int m_lo, int m_hi, const CensusOptions& options = {});

/// Strict-EKR over one representative per PGammaL orbit, without merging
/// isomorphic orbits. Enough to decide whether every graph of type (m, q) is
/// strict-EKR, and much cheaper than a census row for q > 16.
struct EkrSweep {
  std::uint64_t orbits = 0;
  std::uint64_t strict = 0;
  std::uint64_t without = 0;
  std::uint64_t undecided = 0;
};

/// Number of (m - 3)-subsets the orbit walk of enumerate_types visits.
std::uint64_t type_walk_size(std::uint32_t q, int m);

EkrSweep ekr_sweep(const BasisPtr& basis, int m, const CensusOptions& options = {});

struct ExtremalValues {
  /// Smallest m with a graph failing strict-EKR.
  std::optional<int> e_q;
  /// Largest m with a strict-EKR graph.
  std::optional<int> big_e_q;
  /// False when an undecided cell could change either value.
  bool exact = true;
};

ExtremalValues extremal_values(const std::vector<CensusRow>& rows);

}  // namespace peisert
