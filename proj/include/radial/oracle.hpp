#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "radial/network.hpp"

namespace radial {

inline constexpr int kOracleMaxNodes = 12;

// Calls visit once per spanning tree (edge ids, ascending). Returning false
// stops the enumeration. Throws InputError past max_n or on a disconnected graph.
void enumerate_spanning_trees(const DistributionNetwork& net,
                              const std::function<bool(const std::vector<int>&)>& visit,
                              int max_n = kOracleMaxNodes);
std::uint64_t count_enumerated_trees(const DistributionNetwork& net, int max_n = kOracleMaxNodes);

enum class CountMode { exact, floating };

// Matrix-tree count from a Laplacian cofactor; 0 for disconnected graphs.
std::uint64_t count_spanning_trees(const DistributionNetwork& net, CountMode mode = CountMode::exact);

struct OracleResult {
  bool feasible = false;
  double cost = kInf;
  RadialSolution solution;
  std::uint64_t trees = 0;
  std::uint64_t feasible_trees = 0;
};

// Exhaustive optimum over spanning forests (one spanning tree per component).
OracleResult brute_force_optimal(const DistributionNetwork& net, int max_n = kOracleMaxNodes);
// Same, with explicit nodal values in place of the network's supply/demand.
OracleResult brute_force_optimal(const DistributionNetwork& net, const NodalValues& p,
                                 int max_n = kOracleMaxNodes);

// Two sources joined to sinks v0..vn: capacities a0/2 towards v0 and a_i
// towards v_i, each source supplying sum(A)/2 + a0/2.
DistributionNetwork partition_reduction_instance(const std::vector<int>& A, int a0);

}  // namespace radial
