#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <vector>

#include "peisert/bitgraph.hpp"
#include "peisert/plane.hpp"

namespace peisert {

/// Strongly regular parameters with the restricted eigenvalues.
struct SrgParams {
  std::uint64_t v = 0;
  std::uint64_t k = 0;
  std::uint64_t lambda = 0;
  std::uint64_t mu = 0;
  long long r1 = 0;  // positive non-principal eigenvalue q - m
  std::uint64_t mult1 = 0;
  long long r2 = 0;  // negative eigenvalue -m
  std::uint64_t mult2 = 0;
  bool primitive = false;  // connected with connected complement, i.e. 1 < m < q

  friend bool operator==(const SrgParams&, const SrgParams&) = default;
};

/// Closed-form parameters of any Peisert-type graph of type (m, q).
SrgParams srg_params_of_type(int m, std::uint32_t q);

/// Cayley graph on (F_{q^2}, +) whose connection set is the union of the
/// F_q^* cosets named by a direction set. Vertex i is the element with code i.
class PeisertGraph {
 public:
  PeisertGraph(BasisPtr basis, DirectionSet directions);

  const TowerBasis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  const FieldTower& tower() const { return basis_->tower(); }
  const DirectionSet& directions() const { return dirs_; }
  int m() const { return static_cast<int>(dirs_.size()); }
  std::uint32_t q() const { return basis_->q(); }
  std::uint32_t num_vertices() const { return tower().order(); }

  bool has_direction(int d) const { return dir_present_[static_cast<std::size_t>(d)] != 0; }
  bool in_connection_set(Elem x) const { return in_s_[x.code] != 0; }
  bool adjacent(Elem u, Elem v) const { return in_s_[tower().sub(u, v).code] != 0; }
  /// Connection set sorted by element code.
  const std::vector<Elem>& connection_set() const { return s_; }

  /// Full adjacency bit matrix, built once on first use. Needs q <= 32.
  const BitGraph& bits() const;

 private:
  struct Lazy {
    std::once_flag once;
    BitGraph bits;
  };

  BasisPtr basis_;
  DirectionSet dirs_;
  std::vector<char> dir_present_;
  std::vector<char> in_s_;
  std::vector<Elem> s_;
  std::shared_ptr<Lazy> lazy_;
};

/// Counts common neighbours over every vertex pair and checks them against
/// srg_params_of_type. Throws InternalInconsistency on any mismatch.
SrgParams srg_verify(const PeisertGraph& g);

/// Exact spectrum from additive character sums, eigenvalue -> multiplicity.
std::map<long long, std::uint64_t> character_spectrum(const PeisertGraph& g);

/// Throws InternalInconsistency unless character_spectrum matches the closed form.
void verify_spectrum(const PeisertGraph& g);

/// The type (q + 1 - m, q) graph on the complementary directions.
PeisertGraph complement(const PeisertGraph& g);

/// One "u v" line per edge with u < v.
void write_edge_list(const PeisertGraph& g, std::ostream& os);

}  // namespace peisert
