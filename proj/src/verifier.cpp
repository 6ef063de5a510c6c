#include "radial/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <utility>

namespace radial {
namespace {

bool edge_known(const DistributionNetwork& net, const DirectedEdge& d) {
  if (d.from < 0 || d.to < 0 || d.from >= net.node_count() || d.to >= net.node_count()) return false;
  return net.find_edge(d.from, d.to).has_value();
}

std::string edge_name(const DistributionNetwork& net, const DirectedEdge& d) {
  auto lab = [&](int v) {
    return (v >= 0 && v < net.node_count()) ? net.label(v) : std::to_string(v);
  };
  return "edge " + lab(d.from) + "->" + lab(d.to);
}

}  // namespace

CapacityCheck check_capacity(const DistributionNetwork& net, const RadialSolution& sol) {
  CapacityCheck out;
  for (std::size_t k = 0; k < sol.edges.size(); ++k) {
    const DirectedEdge& d = sol.edges[k];
    const double x = sol.flows[k];
    double violation = 0.0;
    if (!edge_known(net, d)) {
      violation = std::abs(x);
      out.ok = false;
      out.offending.push_back(d);
      out.max_violation = std::max(out.max_violation, violation);
      continue;
    }
    const double cap = net.edge(*net.find_edge(d.from, d.to)).capacity;
    if (x < 0) violation = -x;
    else if (x > cap) violation = x - cap;
    if (violation > kEps || std::isnan(x)) {
      out.ok = false;
      out.offending.push_back(d);
    }
    out.max_violation = std::max(out.max_violation, violation);
  }
  return out;
}

ConservationCheck check_conservation(const DistributionNetwork& net, const RadialSolution& sol) {
  ConservationCheck out;
  const int n = net.node_count();
  std::vector<double> net_in(n, 0.0);
  for (std::size_t k = 0; k < sol.edges.size(); ++k) {
    const DirectedEdge& d = sol.edges[k];
    if (d.from < 0 || d.to < 0 || d.from >= n || d.to >= n) continue;
    net_in[d.to] += sol.flows[k];
    net_in[d.from] -= sol.flows[k];
  }
  out.residual.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const double r = net_in[i] - (net.demand(i) - net.supply(i));
    out.residual[i] = r;
    out.max_residual = std::max(out.max_residual, std::abs(r));
    if (std::abs(r) > kEps) {
      out.ok = false;
      out.offending.push_back(i);
    }
  }
  return out;
}

bool check_radiality(const DistributionNetwork& net, const RadialSolution& sol) {
  const int n = net.node_count();
  const std::size_t m = sol.edges.size();
  std::vector<std::vector<std::size_t>> inc(n);
  std::set<std::pair<int, int>> seen;
  for (std::size_t k = 0; k < m; ++k) {
    const DirectedEdge& d = sol.edges[k];
    if (!edge_known(net, d)) return false;
    auto key = std::minmax(d.from, d.to);
    // Both orientations of one edge form a 2-cycle in the underlying multigraph.
    if (!seen.insert({key.first, key.second}).second) return false;
    inc[d.from].push_back(k);
    inc[d.to].push_back(k);
  }
  std::vector<int> degree(n);
  std::deque<int> queue;
  for (int v = 0; v < n; ++v) {
    degree[v] = static_cast<int>(inc[v].size());
    if (degree[v] == 1) queue.push_back(v);
  }
  std::vector<bool> removed(m, false);
  std::size_t removals = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (degree[v] != 1) continue;
    for (std::size_t k : inc[v]) {
      if (removed[k]) continue;
      removed[k] = true;
      ++removals;
      degree[v] = 0;
      const int w = sol.edges[k].from == v ? sol.edges[k].to : sol.edges[k].from;
      if (--degree[w] == 1) queue.push_back(w);
      break;
    }
  }
  return removals == m;
}

VerificationReport verify_solution(const DistributionNetwork& net, const RadialSolution& sol) {
  VerificationReport rep;
  const CapacityCheck cap = check_capacity(net, sol);
  rep.capacity_ok = cap.ok;
  rep.max_capacity_violation = cap.max_violation;
  for (const DirectedEdge& d : cap.offending) rep.offending_items.push_back(edge_name(net, d));
  const ConservationCheck cons = check_conservation(net, sol);
  rep.conservation_ok = cons.ok;
  rep.max_conservation_residual = cons.max_residual;
  for (int v : cons.offending) rep.offending_items.push_back("node " + net.label(v));
  rep.radial_ok = check_radiality(net, sol);
  if (!rep.radial_ok) rep.offending_items.push_back("cycle");
  return rep;
}

}  // namespace radial
