#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "peisert/bitgraph.hpp"

namespace peisert {

struct CanonOptions {
  std::uint64_t node_budget = 0;  // 0 = unlimited
  /// Optional initial vertex colours; vertices of different colour are never
  /// mapped onto each other. Empty means all vertices start equal.
  std::vector<int> colors;
};

struct CanonStats {
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
  std::uint64_t generators = 0;
};

/// Result of canonical labeling.
struct CanonicalForm {
  /// labeling[i] is the vertex placed at canonical position i.
  std::vector<std::uint32_t> labeling;
  /// Vertex count followed by the packed rows of the relabeled adjacency
  /// matrix. Equal certificates mean isomorphic graphs and vice versa.
  std::vector<std::uint8_t> certificate;
  /// Automorphism group generators found during the search (vertex maps).
  std::vector<std::vector<std::uint32_t>> automorphisms;
  CanonStats stats;

  /// Short hex fingerprint of the certificate, for display only.
  std::string digest() const;
};

/// Individualization-refinement canonical labeling with equitable partition
/// refinement, automorphism pruning and trace comparison. Throws
/// BudgetExceeded if the search tree exceeds options.node_budget.
CanonicalForm canonical_form(const BitGraph& g, const CanonOptions& options = {});

/// A vertex map u -> map[u] that carries g1 onto g2, if one exists.
std::optional<std::vector<std::uint32_t>> find_isomorphism(const BitGraph& g1, const BitGraph& g2,
                                                           const CanonOptions& options = {});

/// True iff map is a bijection with g1(u, v) == g2(map[u], map[v]) for all pairs.
bool is_isomorphism(const BitGraph& g1, const BitGraph& g2, const std::vector<std::uint32_t>& map);

}  // namespace peisert
