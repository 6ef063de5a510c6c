#pragma once

#include <optional>
#include <span>
#include <vector>

#include "radial/network.hpp"

namespace radial {

struct TreeFlowResult {
  bool feasible = false;
  RadialSolution solution;
  // Network edge id whose capacity was exceeded, when infeasible.
  std::optional<int> blocking_edge;
};

// Pendant-peeling flow assignment on a tree given by edge ids. Pendants are
// processed in ascending node id; zero-value pendants emit no edge.
// Throws StructureError when the edges do not form a tree, InputError when
// the values on the tree do not sum to zero.
TreeFlowResult solve_tree_flow(const DistributionNetwork& net, std::span<const int> edge_ids,
                               const NodalValues& p);
// Whole network must itself be a tree.
TreeFlowResult solve_tree_flow(const DistributionNetwork& net, const NodalValues& p);

struct ForestFlow {
  // Signed flow per listed edge, positive in the network edge's a->b direction.
  std::vector<double> flow;
  // Per node: component imbalance parked at the component root, zero elsewhere.
  std::vector<double> residual;
  double max_imbalance = 0.0;
};

// Unique conservation solve on an undirected forest (edge ids must be acyclic).
ForestFlow forest_flow(const DistributionNetwork& net, std::span<const int> edge_ids,
                       const NodalValues& p);

// Flows for a given orientation. Zero flows are kept. Throws InfeasibleError when
// a component is unbalanced or the orientation contradicts the unique flow.
RadialSolution flows_on_polyforest(const DistributionNetwork& net,
                                   std::span<const DirectedEdge> edges, const NodalValues& p);

// Union-find helper shared by several modules.
class DisjointSets {
 public:
  explicit DisjointSets(int n);
  int find(int x);
  bool unite(int x, int y);

 private:
  std::vector<int> parent_;
  std::vector<int> rank_;
};

}  // namespace radial
