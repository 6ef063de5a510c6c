#pragma once

#include <functional>
#include <vector>

#include "radial/condensation.hpp"
#include "radial/decomposition.hpp"
#include "radial/network.hpp"

namespace radial {

enum class WeightMode { power, uniform };

struct WeightContext {
  double p_i = 0.0;    // surplus deliverable at the supplying node
  double cost = 0.0;   // R_ij, the edge cost coefficient
  double d_j = 0.0;    // current deficit of the receiving node
  double f_hat = 0.0;  // rolling-demand estimate along the supplying path
};

using WeightFunction = std::function<double(const WeightContext&)>;

// p_i / (R_ij d_j^2 + f_hat); +inf when the denominator vanishes.
double power_weight(const WeightContext& c);
// p_i.
double uniform_weight(const WeightContext& c);
WeightFunction make_weight(WeightMode mode);

// Infinite entries take the largest finite weight, then everything is scaled to sum 1.
std::vector<double> normalize_weights(std::vector<double> raw);

enum class QueueKind { pendant, sufficient, fallback };

struct WeightedCandidate {
  DualEdge dual;
  DirectedEdge edge;  // supply side -> demand side
  int edge_id = -1;
  double weight = 0.0;
  QueueKind queue = QueueKind::fallback;
};

// Per covered node, the cheapest rolling-demand sum from a root down to it.
std::vector<double> path_estimates(const PartitionState& state);

// Every dual edge passing the positivity gate with positive weight, sorted by
// weight (descending) then (s, t). Weights are normalized.
std::vector<WeightedCandidate> weigh_candidates(const PartitionState& state, const DualGraph& dual,
                                                const WeightFunction& weight);

// Pendant targets first, then the capacity-sufficient queue, then the fallback.
// Throws StructureError when there is no candidate.
WeightedCandidate sampler_select(const PartitionState& state, const DualGraph& dual,
                                 const WeightFunction& weight);

struct SourceToLeafPath {
  int tree = -1;
  std::vector<int> nodes;
  double bottleneck = kInf;
  double leaf_surplus = 0.0;
};

std::vector<SourceToLeafPath> source_to_leaf_paths(const PartitionState& state);

struct PartitionRun {
  PartitionState state;
  DualGraph dual;
  int iterations = 0;
  bool balanced = false;
  std::vector<QueueKind> queues;
};

// Net-Concad + Sampler loop until no candidate remains. The network must
// outlive the returned state.
PartitionRun run_partition(const DistributionNetwork& net, const NodalValues& p,
                           const std::vector<int>& sources, const WeightFunction& weight);
PartitionRun run_partition(const Partition& part, const WeightFunction& weight);

struct RewireOptions {
  // Swap budget; 0 means the default derived from the partition size.
  int max_swaps = 0;
};

struct RewireResult {
  RadialSolution solution;
  int swaps = 0;
  bool resolved = false;
  double violation = 0.0;
  // Applied swaps as (inserted edge id, deleted edge id); deleted is -1 for pure insertions.
  std::vector<std::pair<int, int>> moves;
};

// Repair a sampled state whose residual values are not all zero. With zero
// residuals it returns the sampled configuration unchanged.
RewireResult rewire(const PartitionState& state, const RewireOptions& opts = {});

}  // namespace radial
