#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "radial/network.hpp"

namespace radial {

struct PreProcessResult {
  // Pendant edges directed by the sign of the peeled value, with their flows.
  RadialSolution sampled;
  std::vector<bool> in_core;
  std::vector<int> core_edges;
  // Values after folding peeled nodes into their parents; zero off the core.
  NodalValues values;
  std::vector<int> sources;
};

// Peel pendant nodes (ascending id) down to the 2-core. With strict_capacity a
// peeled flow above its edge capacity raises InfeasibleError.
PreProcessResult pre_process(const DistributionNetwork& net, const NodalValues& p,
                             bool strict_capacity = false);

struct Partition {
  // Local network; node order follows ascending global id.
  DistributionNetwork network;
  std::vector<int> global_node;
  std::vector<int> global_edge;
  NodalValues values;
  std::vector<int> sources;
  // Local ids of replicated articulation nodes.
  std::vector<int> separation_nodes;
};

struct PartitionSet {
  RadialSolution pre_sampled;
  std::vector<bool> core_mask;
  std::vector<int> core_edges;
  std::vector<Partition> partitions;
  // Original value of every split node, keyed by global id.
  std::map<int, double> split_values;
  // Replica value per (partition index, global node id).
  std::map<std::pair<int, int>, double> separation_adjustments;
  bool fallback_used = false;
};

struct Biconnected {
  std::vector<int> articulation;
  // Block index per network edge id; -1 for edges outside the subgraph.
  std::vector<int> block_of_edge;
  int blocks = 0;
};

// Blocks and articulation nodes of the subgraph given by edge ids (DFS low-link).
Biconnected biconnected_components(const DistributionNetwork& net, const std::vector<int>& edge_ids);
std::vector<int> articulation_points(const DistributionNetwork& net, const std::vector<int>& edge_ids);

PartitionSet islander_partition(const DistributionNetwork& net, const PreProcessResult& pre);

// Replica balancing: single-separation components first, proportional split
// when no such component exists. Rebuilds each partition's local network.
void balance_separation_values(PartitionSet& set);

using Balancer = std::function<void(PartitionSet&)>;
PartitionSet islander_partition(const DistributionNetwork& net, const PreProcessResult& pre,
                                const Balancer& balancer);

}  // namespace radial
