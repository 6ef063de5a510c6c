#pragma once

#include <optional>
#include <vector>

#include "radial/network.hpp"
#include "radial/sampler.hpp"
#include "radial/verifier.hpp"

namespace radial {

struct ForwardOptions {
  WeightMode weight = WeightMode::power;
  bool strict_capacity = false;
  bool parallel = false;
  // Worker cap for parallel mode; 0 uses the hardware concurrency.
  int jobs = 0;
  // Known optimum, used only to report the gap.
  std::optional<double> oracle_cost;
};

struct ForwardStats {
  double cost = 0.0;
  double time_ms = 0.0;
  double preprocess_ms = 0.0;
  double partition_ms = 0.0;
  double sampling_ms = 0.0;
  double merge_ms = 0.0;
  int partitions = 0;
  int pre_sampled = 0;
  int sampled_edges = 0;
  int rewires = 0;
  bool resolved = true;
  std::optional<double> gap;
};

struct ForwardResult {
  RadialSolution solution;
  VerificationReport report;
  ForwardStats stats;
};

// Union of the pre-sampled edges and the partition solutions. Throws
// StructureError on overlap or when the union is not a polyforest.
RadialSolution merge_solutions(const DistributionNetwork& net, const RadialSolution& pre_sampled,
                               const std::vector<RadialSolution>& parts);

ForwardResult forward_solve(const DistributionNetwork& net, const ForwardOptions& opts = {});

}  // namespace radial
