#include "bsmsim/connectivity.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

#include "bsmsim/error.hpp"

namespace bsmsim {
namespace {

void attach_ids(PartitionSet& set, const Frame& frame) {
  for (auto& p : set.partitions) {
    p.vehicle_ids.clear();
    p.vehicle_ids.reserve(p.members.size());
    for (auto idx : p.members) p.vehicle_ids.push_back(frame.vehicles[idx].vehicle_id);
  }
}

void check_dimension(std::size_t matrix_n, const Frame& frame) {
  if (matrix_n != frame.vehicles.size()) {
    throw std::invalid_argument("matrix dimension " + std::to_string(matrix_n) +
                                " does not match frame vehicle count " +
                                std::to_string(frame.vehicles.size()));
  }
}

// Builds a PartitionSet from a component id per vehicle; components are ranked
// by their smallest member index.
PartitionSet from_component_ids(const std::vector<std::size_t>& component_of) {
  PartitionSet set;
  set.partition_of.assign(component_of.size(), 0);
  std::unordered_map<std::size_t, std::size_t> rank_of;
  for (std::size_t i = 0; i < component_of.size(); ++i) {
    auto [it, inserted] = rank_of.try_emplace(component_of[i], set.partitions.size());
    if (inserted) {
      set.partitions.push_back({});
      set.partitions.back().label = label_for_rank(it->second);
    }
    set.partitions[it->second].members.push_back(i);
    set.partition_of[i] = it->second;
  }
  return set;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned> rank_;
};

}  // namespace

PartitionLabel label_for_rank(std::size_t rank) noexcept {
  return {static_cast<int>(rank % kPartitionColors),
          static_cast<char>('A' + (rank / kPartitionColors) % kPartitionCharacters)};
}

std::vector<std::vector<std::size_t>> PartitionSet::groups() const {
  std::vector<std::vector<std::size_t>> out;
  out.reserve(partitions.size());
  for (const auto& p : partitions) out.push_back(p.members);
  return out;
}

AdjacencyMatrix threshold(const DistanceMatrix& distances, double range_m) {
  if (!std::isfinite(range_m) || range_m <= 0.0) {
    throw InputError("range_m must be a positive number, got " + std::to_string(range_m));
  }
  const std::size_t n = distances.size();
  AdjacencyMatrix adj{BoolMatrix(n), range_m};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      adj.bits.set(i, j, i == j || distances.at(i, j) <= range_m);
    }
  }
  return adj;
}

ConnectivityMatrix compute_closure(const AdjacencyMatrix& adjacency, std::vector<BoolMatrix>* trace) {
  // Without a full diagonal, successive squares of a directed cycle can oscillate forever.
  if (!adjacency.bits.is_reflexive()) {
    throw std::invalid_argument("compute_closure: adjacency matrix must be reflexive");
  }
  ConnectivityMatrix result{adjacency.bits, 0};
  if (trace) trace->push_back(result.bits);
  while (true) {
    BoolMatrix next = boolean_multiply(result.bits, result.bits);
    ++result.squarings;
    if (next == result.bits) break;
    result.bits = std::move(next);
    if (trace) trace->push_back(result.bits);
  }
  return result;
}

int closure_squaring_bound(std::size_t n) noexcept {
  const std::size_t longest_path = n > 1 ? n - 1 : 1;
  // ceil(log2(x)) for x >= 1
  const int ceil_log2 = static_cast<int>(std::bit_width(longest_path - 1));
  return ceil_log2 + 1;
}

PartitionSet extract_partitions(const ConnectivityMatrix& connectivity, std::size_t vehicle_count) {
  const std::size_t n = connectivity.bits.size();
  if (n != vehicle_count) {
    throw std::invalid_argument("connectivity dimension " + std::to_string(n) +
                                " does not match vehicle count " + std::to_string(vehicle_count));
  }
  // Vehicles with identical reachability rows share a partition; the id of a
  // row class is the first vehicle index that exhibits it.
  std::unordered_map<std::string_view, std::size_t> class_of_row;
  std::vector<std::size_t> component_of(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = connectivity.bits.row(i);
    std::string_view key(reinterpret_cast<const char*>(row.data()), row.size());
    component_of[i] = class_of_row.try_emplace(key, i).first->second;
  }
  return from_component_ids(component_of);
}

PartitionSet extract_partitions(const ConnectivityMatrix& connectivity, const Frame& frame) {
  check_dimension(connectivity.bits.size(), frame);
  auto set = extract_partitions(connectivity, frame.vehicles.size());
  attach_ids(set, frame);
  return set;
}

PartitionSet partition_oracle(const AdjacencyMatrix& adjacency) {
  const std::size_t n = adjacency.bits.size();
  DisjointSets sets(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (adjacency.bits.get(i, j) || adjacency.bits.get(j, i)) sets.unite(i, j);

  std::vector<std::size_t> component_of(n);
  for (std::size_t i = 0; i < n; ++i) component_of[i] = sets.find(i);
  return from_component_ids(component_of);
}

PartitionSet partition_oracle(const AdjacencyMatrix& adjacency, const Frame& frame) {
  check_dimension(adjacency.bits.size(), frame);
  auto set = partition_oracle(adjacency);
  attach_ids(set, frame);
  return set;
}

}  // namespace bsmsim
