#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "radial/forward.hpp"
#include "radial/network.hpp"
#include "radial/verifier.hpp"

namespace radial {

using Json = nlohmann::ordered_json;

// Network documents: {"meta":{name,seed},"nodes":[{id,supply,demand}],
// "edges":[{a,b,capacity,cost}]}; infinite capacity is the string "inf".
// Schema violations raise InputError naming the offending field.
Json network_to_json(const DistributionNetwork& net);
RawNetwork raw_from_json(const Json& doc);
DistributionNetwork network_from_json(const Json& doc, BuildOptions opts = {});

std::string dump_network(const DistributionNetwork& net);
DistributionNetwork parse_network(const std::string& text, BuildOptions opts = {});
DistributionNetwork load_network(const std::string& path, BuildOptions opts = {});
void save_network(const DistributionNetwork& net, const std::string& path);

struct SolutionDocument {
  DistributionNetwork network;
  RadialSolution solution;
  double cost = 0.0;
  bool feasible = false;
};

// Solution documents embed the network so that they verify standalone.
Json solution_to_json(const DistributionNetwork& net, const RadialSolution& sol, const VerificationReport& report,
                      const ForwardStats* stats = nullptr);
SolutionDocument solution_from_json(const Json& doc);

std::string dump_solution(const DistributionNetwork& net, const RadialSolution& sol,
                          const VerificationReport& report, const ForwardStats* stats = nullptr);
void save_solution(const DistributionNetwork& net, const RadialSolution& sol, const VerificationReport& report,
                   const std::string& path, const ForwardStats* stats = nullptr);
SolutionDocument load_solution(const std::string& path);

// Reads a whole file; throws InputError when unreadable.
std::string read_file(const std::string& path);
// Writes through a temporary file and a rename.
void write_file_atomic(const std::string& path, const std::string& text);

}  // namespace radial
