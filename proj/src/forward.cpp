#include "radial/forward.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include "radial/decomposition.hpp"
#include "radial/error.hpp"
#include "radial/tree_flow.hpp"

namespace radial {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

struct PartResult {
  RadialSolution solution;  // global ids
  int sampled = 0;
  int swaps = 0;
  bool resolved = false;
};

PartResult solve_partition(const Partition& part, const WeightFunction& weight) {
  PartitionRun run = run_partition(part, weight);
  RewireResult rw = rewire(run.state);
  PartResult out;
  out.sampled = run.iterations;
  out.swaps = rw.swaps;
  out.resolved = rw.resolved;
  for (std::size_t k = 0; k < rw.solution.size(); ++k) {
    const DirectedEdge d = rw.solution.edges[k];
    out.solution.add({part.global_node[d.from], part.global_node[d.to]}, rw.solution.flows[k]);
  }
  return out;
}

}  // namespace

RadialSolution merge_solutions(const DistributionNetwork& net, const RadialSolution& pre_sampled,
                               const std::vector<RadialSolution>& parts) {
  RadialSolution out = pre_sampled;
  for (const RadialSolution& s : parts)
    for (std::size_t k = 0; k < s.size(); ++k) out.add(s.edges[k], s.flows[k]);
  std::vector<bool> used(net.edge_count(), false);
  DisjointSets ds(net.node_count());
  for (const DirectedEdge& d : out.edges) {
    auto e = net.find_edge(d.from, d.to);
    if (!e) throw StructureError("merge: edge is not in the network");
    if (used[*e]) throw StructureError("merge: partitions overlap on an edge");
    used[*e] = true;
    if (!ds.unite(d.from, d.to)) throw StructureError("merge: union is not a polyforest");
  }
  out.canonicalize();
  return out;
}

ForwardResult forward_solve(const DistributionNetwork& net, const ForwardOptions& opts) {
  const auto start = Clock::now();
  ForwardResult res;
  const NodalValues p = net.values();

  auto t = Clock::now();
  const PreProcessResult pre = pre_process(net, p, opts.strict_capacity);
  res.stats.preprocess_ms = ms_since(t);

  t = Clock::now();
  const PartitionSet set = islander_partition(net, pre);
  res.stats.partition_ms = ms_since(t);
  res.stats.partitions = static_cast<int>(set.partitions.size());
  res.stats.pre_sampled = static_cast<int>(set.pre_sampled.size());

  t = Clock::now();
  const WeightFunction weight = make_weight(opts.weight);
  std::vector<PartResult> parts(set.partitions.size());
  if (opts.parallel && parts.size() > 1) {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned jobs = opts.jobs > 0 ? static_cast<unsigned>(opts.jobs) : hw;
    const unsigned workers = std::min<unsigned>(jobs, static_cast<unsigned>(parts.size()));
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(parts.size());
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < parts.size(); k = next++) {
          try {
            parts[k] = solve_partition(set.partitions[k], weight);
          } catch (...) {
            errors[k] = std::current_exception();
          }
        }
      });
    for (std::thread& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  } else {
    for (std::size_t k = 0; k < parts.size(); ++k) parts[k] = solve_partition(set.partitions[k], weight);
  }
  res.stats.sampling_ms = ms_since(t);

  t = Clock::now();
  std::vector<RadialSolution> sols;
  for (const PartResult& pr : parts) {
    sols.push_back(pr.solution);
    res.stats.sampled_edges += pr.sampled;
    res.stats.rewires += pr.swaps;
    res.stats.resolved = res.stats.resolved && pr.resolved;
  }
  RadialSolution merged = merge_solutions(net, set.pre_sampled, sols);
  if (res.stats.resolved) {
    try {
      res.solution = flows_on_polyforest(net, merged.edges, p);
    } catch (const InfeasibleError&) {
      res.stats.resolved = false;
      res.solution = merged;
    }
  } else {
    res.solution = merged;
  }
  res.stats.merge_ms = ms_since(t);

  res.report = verify_solution(net, res.solution);
  res.stats.resolved = res.stats.resolved && res.report.feasible();
  res.stats.cost = evaluate_cost(net, res.solution);
  if (opts.oracle_cost) {
    const double o = *opts.oracle_cost;
    res.stats.gap = o > 0 ? (res.stats.cost - o) / o : res.stats.cost - o;
  }
  res.stats.time_ms = ms_since(start);
  return res;
}

}  // namespace radial
