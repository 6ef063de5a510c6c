#pragma once

#include <optional>
#include <vector>

#include "radial/network.hpp"

namespace radial {

// Working state of one partition during sampling.
struct PartitionState {
  const DistributionNetwork* net = nullptr;
  NodalValues p;
  // Original demand per node, used by the path estimator of the power weight.
  std::vector<double> demand;
  // Tentative flow per edge along its sampled orientation.
  std::vector<double> x;
  // Per edge: 0 unsampled, +1 sampled a->b, -1 sampled b->a.
  std::vector<int> dir;
  PolytreeSet trees;
  std::vector<DirectedEdge> sampled;

  double residual_capacity(int e) const;
  bool sampled_edge(int e) const { return dir[e] != 0; }
};

// Trees start as singletons at the given sources (FORWARD's initialization).
PartitionState init_state(const DistributionNetwork& net, const NodalValues& p,
                          const std::vector<int>& sources);

// Append i->j to i's tree, merging with j's tree when j is already covered.
// Throws StructureError when i is uncovered or both ends share a tree.
void tree_update(PolytreeSet& trees, DirectedEdge e);

// DFS components of the nodes with keep[v] set; ordered by smallest member.
std::vector<std::vector<int>> connected_components(const DistributionNetwork& g,
                                                   const std::vector<bool>& keep);
std::vector<std::vector<int>> connected_components(const DistributionNetwork& g);

// Apply the optional new edge (tree update plus value update), then condense
// the partition into its dual graph.
DualGraph net_concad(PartitionState& state, std::optional<DirectedEdge> new_edge = std::nullopt);

// Largest amount deliverable to each covered node from surplus upstream of it
// along sampled edges with residual capacity. Zero for uncovered nodes.
std::vector<double> accessible_surplus(const PartitionState& state);

// Value update for a freshly sampled edge i->j: route surplus upstream of i to
// deficits downstream of j through residual capacity. Returns the amount moved.
double settle_edge(PartitionState& state, DirectedEdge e);

}  // namespace radial
