#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "radial/network.hpp"

namespace radial {

struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
};

// Ring lattice of n nodes with k nearest neighbours, each lattice edge rewired
// with probability beta. Retries with seed+1, seed+2, ... until connected.
Graph watts_strogatz(int n, int k, double beta, std::uint64_t seed, int max_retries = 100);

struct ValueOptions {
  int sources = 1;
  double demand_min = 1.0;
  double demand_max = 1.0;
  // Capacity multiplier on the largest source supply; infinite means uncapacitated.
  double slack = kInf;
  double cost_min = 1.0;
  double cost_max = 1.0;
  std::uint64_t seed = 0;
  std::string name;
};

// Integer demands drawn uniformly from [demand_min, demand_max] (rounded),
// supplies split across randomly chosen sources, costs uniform in [cost_min, cost_max].
DistributionNetwork assign_balanced_values(const Graph& g, const ValueOptions& opts);

namespace fixtures {

DistributionNetwork fig2(double d = 1.0);
// Edges of the two configurations drawn for the 6-cycle (label pairs).
RadialSolution fig2_mst(const DistributionNetwork& net);
RadialSolution fig2_optimal(const DistributionNetwork& net);

DistributionNetwork fig3();
RadialSolution fig3_msf(const DistributionNetwork& net);
RadialSolution fig3_mst(const DistributionNetwork& net);

DistributionNetwork fig5();
RadialSolution fig5_radial(const DistributionNetwork& net);
RadialSolution fig5_non_radial(const DistributionNetwork& net);

DistributionNetwork fig6();
DistributionNetwork fig7();
DistributionNetwork fig8();

DistributionNetwork ieee33(std::uint64_t seed = 0);
RadialSolution ieee33_radial(const DistributionNetwork& net);

// Names accepted by by_name: fig2 fig3 fig5 fig6 fig7 fig8 ieee33.
std::vector<std::string> names();
DistributionNetwork by_name(const std::string& name);

}  // namespace fixtures
}  // namespace radial
