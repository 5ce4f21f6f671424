#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "peisert/cliques.hpp"
#include "peisert/graph.hpp"

namespace peisert {

/// Minimum support sizes of eigenfunctions for the two non-principal eigenvalues.
struct WdbBounds {
  long long positive = 0;  // 2 (theta_1 + 1)
  long long negative = 0;  // -2 theta_2
};

/// Needs a primitive type, 2 <= m <= q - 1.
WdbBounds wdb_bounds(int m, std::uint32_t q);

/// Function on the vertices with values in {-1, 0, 1}, indexed by element code.
struct Eigenfunction {
  long long eigenvalue = 0;
  std::vector<int> values;

  std::uint64_t support_size() const;
  long long sum() const;
};

/// theta with theta f(x) = sum of f over the neighbours of x, checked at
/// every vertex in integer arithmetic. nullopt if f is zero or no such theta exists.
std::optional<long long> eigenvalue_of(const PeisertGraph& g, const std::vector<int>& values);

enum class WitnessKind { isolated_clique_pair, complete_bipartite };

std::string to_string(WitnessKind k);

struct WitnessSubgraph {
  std::vector<Elem> t0;
  std::vector<Elem> t1;
  WitnessKind kind = WitnessKind::complete_bipartite;
};

/// Value +1 on t0 and -1 on t1.
std::vector<int> indicator(const PeisertGraph& g, const WitnessSubgraph& w);

/// Checks the induced shape named by w.kind and that the +1/-1 indicator is
/// an eigenfunction. Parts must be disjoint.
bool verify_witness(const PeisertGraph& g, const WitnessSubgraph& w);

/// eps^i C_q with C_q = {g^r + g beta : g in F_q}, r = sqrt(q). Throws
/// InvalidArgument if it is not a non-canonical q-clique of g.
Clique clique_cq(const PeisertGraph& xq, int i = 0);

/// +1 on C \ D, -1 on eps^i C_q \ D with D = C ∩ eps^i C_q. C must be a
/// canonical clique through 0. The eigenvalue is the one observed by substitution.
Eigenfunction build_f1(const PeisertGraph& xq, const Clique& canonical, int i = 0);

/// +1 on Q = {g in F_q : g^(r+1) = 1}, -1 on Q beta.
Eigenfunction build_f2(const PeisertGraph& xq);

/// Support shapes used by build_f1 and build_f2.
WitnessSubgraph f1_witness(const PeisertGraph& xq, const Clique& canonical, int i = 0);
WitnessSubgraph f2_witness(const PeisertGraph& xq);

struct EigenReport {
  long long eigenvalue = 0;
  std::uint64_t support_size = 0;
  long long bound = 0;
  bool tight = false;
  WitnessKind witness_kind = WitnessKind::complete_bipartite;
};

}  // namespace peisert
