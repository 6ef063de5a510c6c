#pragma once

#include <string>
#include <vector>

#include "radial/network.hpp"

namespace radial {

struct CapacityCheck {
  bool ok = true;
  double max_violation = 0.0;
  std::vector<DirectedEdge> offending;
};

struct ConservationCheck {
  bool ok = true;
  double max_residual = 0.0;
  // Signed residual per node: inflow - outflow - (d_i - g_i).
  std::vector<double> residual;
  std::vector<int> offending;
};

struct VerificationReport {
  bool capacity_ok = true;
  bool conservation_ok = true;
  bool radial_ok = true;
  double max_capacity_violation = 0.0;
  double max_conservation_residual = 0.0;
  std::vector<std::string> offending_items;

  bool feasible() const { return capacity_ok && conservation_ok && radial_ok; }
};

CapacityCheck check_capacity(const DistributionNetwork& net, const RadialSolution& sol);
ConservationCheck check_conservation(const DistributionNetwork& net, const RadialSolution& sol);
bool check_radiality(const DistributionNetwork& net, const RadialSolution& sol);
VerificationReport verify_solution(const DistributionNetwork& net, const RadialSolution& sol);

}  // namespace radial
