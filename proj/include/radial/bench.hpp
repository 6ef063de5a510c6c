#pragma once

#include <optional>
#include <string>
#include <vector>

#include "radial/io.hpp"
#include "radial/sampler.hpp"

namespace radial {

// Suite document: {"sizes":[...],"seeds":N or [...],"k":4,"beta":0.1,
// "sources":S (default n/12 clamped to [1,20]),"weight":"power"|"uniform",
// "slack":"inf" or number,"demand":[lo,hi],"cost":[lo,hi],"oracle":bool}.
struct BenchSpec {
  std::vector<int> sizes;
  std::vector<std::uint64_t> seeds;
  int k = 4;
  double beta = 0.1;
  std::optional<int> sources;
  WeightMode weight = WeightMode::power;
  double slack = kInf;
  double demand_min = 1.0;
  double demand_max = 10.0;
  double cost_min = 0.5;
  double cost_max = 2.0;
  // Oracle gaps are computed only where n is within the oracle guard.
  bool oracle = true;
};

BenchSpec parse_bench_spec(const Json& doc);

struct BenchRow {
  int size = 0;
  int instances = 0;
  int feasible = 0;
  double mean_time_ms = 0.0;
  double mean_cost = 0.0;
  std::optional<double> mean_gap;
};

int default_sources(int n);
WeightMode parse_weight(const std::string& name);
std::vector<BenchRow> run_bench(const BenchSpec& spec, int jobs = 1);
std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace radial
