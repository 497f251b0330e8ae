#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "bsmsim/bool_matrix.hpp"
#include "bsmsim/bsm_data.hpp"
#include "bsmsim/geodesy.hpp"

namespace bsmsim {

/// DSRC range used when none is given.
inline constexpr double kDefaultRangeM = 1000.0;

inline constexpr int kPartitionColors = 10;
inline constexpr int kPartitionCharacters = 26;

/// Single-hop links: bits(i,j) = 1 iff i == j or distance(i,j) <= range_m.
struct AdjacencyMatrix {
  BoolMatrix bits;
  double range_m{kDefaultRangeM};
};

/// Multi-hop reachability; the fixpoint of repeated boolean squaring.
struct ConnectivityMatrix {
  BoolMatrix bits;
  int squarings{0};  // boolean multiplications performed, including the one that confirmed the fixpoint
};

struct PartitionLabel {
  int color_index{0};   // 0..9
  char character{'A'};  // 'A'..'Z'

  auto operator<=>(const PartitionLabel&) const = default;
};

/// Label for the partition at `rank` in canonical order. Wraps after 260 partitions.
PartitionLabel label_for_rank(std::size_t rank) noexcept;

struct Partition {
  std::vector<std::size_t> members;     // ascending indices into the frame's vehicle order
  std::vector<std::string> vehicle_ids;  // filled when a Frame is supplied
  PartitionLabel label;
};

/// Disjoint cover of a frame's vehicles, ordered by each group's minimum vehicle
/// index (equivalently, its minimum vehicle_id).
struct PartitionSet {
  std::vector<Partition> partitions;
  std::vector<std::size_t> partition_of;  // vehicle index -> partition rank

  std::size_t size() const noexcept { return partitions.size(); }

  /// Member lists only; the comparison used for oracle equivalence.
  std::vector<std::vector<std::size_t>> groups() const;
};

/// Throws InputError if range_m is not a positive finite number.
AdjacencyMatrix threshold(const DistanceMatrix& distances, double range_m);

/// Squares C until C*C == C, starting from the adjacency bits.
/// When `trace` is non-null it receives C_0, C_1, ..., C_k (the fixpoint last).
ConnectivityMatrix compute_closure(const AdjacencyMatrix& adjacency,
                                   std::vector<BoolMatrix>* trace = nullptr);

/// Upper bound on squarings for a reflexive n-vertex matrix: ceil(log2(max(n-1,1))) + 1.
int closure_squaring_bound(std::size_t n) noexcept;

/// Groups vehicles by identical reachability rows and labels groups by rank.
PartitionSet extract_partitions(const ConnectivityMatrix& connectivity, std::size_t vehicle_count);
PartitionSet extract_partitions(const ConnectivityMatrix& connectivity, const Frame& frame);

/// Union-find components of the thresholded graph. Independent of the closure path.
PartitionSet partition_oracle(const AdjacencyMatrix& adjacency);
PartitionSet partition_oracle(const AdjacencyMatrix& adjacency, const Frame& frame);

}  // namespace bsmsim
