#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "peisert/graph.hpp"

namespace peisert {

enum class CliqueKind { canonical, noncanonical_maximum, maximal_submaximum };

std::string to_string(CliqueKind k);

struct Clique {
  std::vector<Elem> vertices;  // sorted by code, contains 0
  CliqueKind kind = CliqueKind::canonical;
  DirectionSet directions;     // directions determined by the vertex set
};

/// Sort, determine directions and classify a vertex set that is already known
/// to be a clique of g. Size q means maximum; anything smaller is reported as
/// maximal_submaximum.
Clique make_clique(const PeisertGraph& g, std::vector<Elem> vertices);

/// The line through 0 with the given direction, which must belong to g.
Clique canonical_clique(const PeisertGraph& g, int direction);

/// Every pairwise difference lies in the connection set.
bool is_clique(const PeisertGraph& g, std::span<const Elem> vertices);

struct SearchOptions {
  std::uint64_t node_budget = 0;  // 0 = unlimited
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t found = 0;
  std::uint64_t canonical = 0;
  bool stopped_early = false;
};

/// Called with each q-clique through 0; return false to stop the search.
using CliqueVisitor = std::function<bool(std::span<const Elem> vertices, bool canonical)>;

/// Exhaustive search for the q-cliques through 0, reported in search order.
/// Needs q <= 64. Throws BudgetExceeded when options.node_budget runs out.
SearchStats visit_max_cliques(const PeisertGraph& g, const CliqueVisitor& visit, const SearchOptions& options = {});

/// All q-cliques through 0, sorted by their vertex-code sequences.
std::vector<Clique> max_cliques_through_zero(const PeisertGraph& g, const SearchOptions& options = {});

struct CliqueCounts {
  std::uint64_t canonical = 0;
  std::uint64_t noncanonical = 0;
};

CliqueCounts count_max_cliques(const PeisertGraph& g, const SearchOptions& options = {});

struct EkrResult {
  bool strict = true;
  std::optional<Clique> witness;  // a non-canonical q-clique when strict is false
  std::uint64_t nodes = 0;
};

EkrResult strict_ekr(const PeisertGraph& g, const SearchOptions& options = {});

/// Every maximal clique of g containing 0, sorted by vertex-code sequence.
/// Throws BudgetExceeded with the partial count when the budget runs out.
std::vector<Clique> maximal_cliques_through_zero(const PeisertGraph& g, const SearchOptions& options = {});

/// Every maximal clique of an arbitrary graph that contains v, each sorted,
/// the list sorted lexicographically.
std::vector<std::vector<std::uint32_t>> maximal_cliques_containing(const BitGraph& g, std::uint32_t v,
                                                                   const SearchOptions& options = {});

struct NexusResult {
  int nexus = 0;
  bool delsarte = false;  // nexus > 0
};

/// Neighbour count in c of every vertex outside c; throws InternalInconsistency
/// if it is not constant.
NexusResult nexus_check(const PeisertGraph& g, const Clique& c);

/// |c1 ∩ c2| for a canonical c1 and a non-canonical maximum c2. A nonzero
/// value must be sqrt(q), otherwise InternalInconsistency is thrown.
int intersection_profile(const PeisertGraph& g, const Clique& c1, const Clique& c2);

/// For each direction of g, exactly sqrt(q) of its lines meet c, each in
/// exactly sqrt(q) points.
bool baer_subarray_check(const PeisertGraph& g, const Clique& c);

/// sqrt(q) if q is a perfect square, otherwise nullopt.
std::optional<std::uint32_t> exact_sqrt(std::uint32_t q);

}  // namespace peisert
