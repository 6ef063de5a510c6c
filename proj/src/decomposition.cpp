#include "radial/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "radial/error.hpp"
#include "radial/tree_flow.hpp"

namespace radial {

PreProcessResult pre_process(const DistributionNetwork& net, const NodalValues& p, bool strict_capacity) {
  const int n = net.node_count();
  PreProcessResult out;
  out.values.assign(p.begin(), p.end());
  std::vector<int> degree(n);
  std::vector<bool> alive_edge(net.edge_count(), true);
  std::set<int> pendants;
  for (int v = 0; v < n; ++v) {
    degree[v] = net.degree(v);
    if (degree[v] == 1) pendants.insert(v);
  }
  while (!pendants.empty()) {
    const int i = *pendants.begin();
    pendants.erase(pendants.begin());
    if (degree[i] != 1) continue;
    int e = -1;
    for (int c : net.incident(i))
      if (alive_edge[c]) e = c;
    const int j = net.other(e, i);
    const double pi = out.values[i];
    if (strict_capacity && std::abs(pi) > net.edge(e).capacity + kEps)
      throw InfeasibleError("pendant edge (" + net.label(i) + "," + net.label(j) +
                            ") cannot carry the peeled value");
    if (pi > kEps) out.sampled.add({i, j}, pi);
    else if (pi < -kEps) out.sampled.add({j, i}, -pi);
    out.values[j] += pi;
    out.values[i] = 0.0;
    alive_edge[e] = false;
    degree[i] = 0;
    if (--degree[j] == 1) pendants.insert(j);
  }
  out.in_core.assign(n, false);
  for (int v = 0; v < n; ++v) out.in_core[v] = degree[v] >= 2;
  for (int e = 0; e < net.edge_count(); ++e)
    if (alive_edge[e]) out.core_edges.push_back(e);
  for (int v = 0; v < n; ++v)
    if (out.in_core[v] && out.values[v] > kEps) out.sources.push_back(v);
  return out;
}

Biconnected biconnected_components(const DistributionNetwork& net, const std::vector<int>& edge_ids) {
  const int n = net.node_count();
  std::vector<std::vector<int>> inc(n);
  for (int e : edge_ids) {
    inc[net.edge(e).a].push_back(e);
    inc[net.edge(e).b].push_back(e);
  }
  Biconnected out;
  out.block_of_edge.assign(net.edge_count(), -1);
  std::vector<int> disc(n, -1), low(n, 0), parent_edge(n, -1);
  std::vector<bool> is_art(n, false);
  std::vector<int> edge_stack;
  int timer = 0;
  struct Frame {
    int v;
    std::size_t next;
  };
  for (int r = 0; r < n; ++r) {
    if (disc[r] >= 0 || inc[r].empty()) continue;
    int root_children = 0;
    std::vector<Frame> stack{{r, 0}};
    disc[r] = low[r] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const int v = f.v;
      if (f.next < inc[v].size()) {
        const int e = inc[v][f.next++];
        if (e == parent_edge[v]) continue;
        const int w = net.other(e, v);
        if (disc[w] < 0) {
          parent_edge[w] = e;
          disc[w] = low[w] = timer++;
          if (v == r) ++root_children;
          edge_stack.push_back(e);
          stack.push_back({w, 0});
        } else if (disc[w] < disc[v]) {
          low[v] = std::min(low[v], disc[w]);
          edge_stack.push_back(e);
        }
        continue;
      }
      stack.pop_back();
      if (stack.empty()) break;
      const int u = stack.back().v;
      low[u] = std::min(low[u], low[v]);
      if (low[v] >= disc[u]) {
        if (u != r) is_art[u] = true;
        // Everything above the tree edge into v forms one block.
        for (;;) {
          const int e = edge_stack.back();
          edge_stack.pop_back();
          out.block_of_edge[e] = out.blocks;
          if (e == parent_edge[v]) break;
        }
        ++out.blocks;
      }
    }
    if (root_children > 1) is_art[r] = true;
  }
  for (int v = 0; v < n; ++v)
    if (is_art[v]) out.articulation.push_back(v);
  return out;
}

std::vector<int> articulation_points(const DistributionNetwork& net, const std::vector<int>& edge_ids) {
  return biconnected_components(net, edge_ids).articulation;
}

namespace {

// Partition-local sums excluding split nodes.
double interior_sum(const Partition& part, const std::vector<bool>& split) {
  double s = 0.0;
  for (std::size_t k = 0; k < part.global_node.size(); ++k)
    if (!split[part.global_node[k]]) s += part.values[k];
  return s;
}

int local_index(const Partition& part, int global) {
  auto it = std::lower_bound(part.global_node.begin(), part.global_node.end(), global);
  return static_cast<int>(it - part.global_node.begin());
}

}  // namespace

void balance_separation_values(PartitionSet& set) {
  const int L = static_cast<int>(set.partitions.size());
  if (L == 0) return;
  int n = 0;
  for (const Partition& part : set.partitions)
    for (int g : part.global_node) n = std::max(n, g + 1);
  std::vector<bool> split(n, false);
  for (const auto& [g, _] : set.split_values) split[g] = true;

  // Bipartite incidence between partitions and split nodes.
  std::vector<double> interior(L);
  std::vector<std::vector<int>> part_splits(L);
  std::map<int, std::vector<int>> split_parts;
  for (int l = 0; l < L; ++l) {
    interior[l] = interior_sum(set.partitions[l], split);
    for (int g : set.partitions[l].global_node)
      if (split[g]) {
        part_splits[l].push_back(g);
        split_parts[g].push_back(l);
      }
  }
  std::map<std::pair<int, int>, double> r;
  auto resolved = [&](int l, int g) { return r.count({l, g}) > 0; };
  auto part_balance = [&](int l) {
    double s = interior[l];
    for (int g : part_splits[l])
      if (resolved(l, g)) s += r[{l, g}];
    return s;
  };
  auto split_remaining = [&](int g) {
    double s = set.split_values.at(g);
    for (int l : split_parts[g])
      if (resolved(l, g)) s -= r[{l, g}];
    return s;
  };

  bool progress = true;
  while (progress) {
    progress = false;
    for (int l = 0; l < L; ++l) {
      int open = -1, count = 0;
      for (int g : part_splits[l])
        if (!resolved(l, g)) {
          open = g;
          ++count;
        }
      if (count != 1) continue;
      r[{l, open}] = -part_balance(l);
      progress = true;
    }
    for (auto& [g, parts] : split_parts) {
      int open = -1, count = 0;
      for (int l : parts)
        if (!resolved(l, g)) {
          open = l;
          ++count;
        }
      if (count != 1) continue;
      r[{open, g}] = split_remaining(g);
      progress = true;
    }
  }

  bool cyclic = false;
  for (auto& [g, parts] : split_parts)
    for (int l : parts)
      if (!resolved(l, g)) cyclic = true;
  set.fallback_used = cyclic;
  if (cyclic) {
    std::vector<std::pair<int, int>> open_pairs;
    for (auto& [g, parts] : split_parts) {
      std::vector<int> open;
      for (int l : parts)
        if (!resolved(l, g)) open.push_back(l);
      if (open.empty()) continue;
      const double remaining = split_remaining(g);
      double total_deficit = 0.0;
      for (int l : open) total_deficit += std::max(0.0, -part_balance(l));
      for (int l : open) {
        const double share = total_deficit > kEps ? std::max(0.0, -part_balance(l)) / total_deficit
                                                  : 1.0 / static_cast<double>(open.size());
        open_pairs.push_back({l, g});
        r[{l, g}] = remaining * share;
      }
    }
    // Re-balance: equalize partition imbalances across each split node,
    // which keeps every split node's replica sum fixed.
    for (int sweep = 0; sweep < 1000; ++sweep) {
      double worst = 0.0;
      for (auto& [g, parts] : split_parts) {
        double total = 0.0;
        for (int l : parts) total += part_balance(l);
        const double target = total / static_cast<double>(parts.size());
        for (int l : parts) {
          const double b = part_balance(l);
          r[{l, g}] -= b - target;
          worst = std::max(worst, std::abs(b - target));
        }
      }
      double max_imbalance = 0.0;
      for (int l = 0; l < L; ++l) max_imbalance = std::max(max_imbalance, std::abs(part_balance(l)));
      if (max_imbalance < kEps * 1e-3 && worst < kEps * 1e-3) break;
    }
  }

  set.separation_adjustments.clear();
  for (int l = 0; l < L; ++l) {
    Partition& part = set.partitions[l];
    for (int g : part_splits[l]) {
      const double v = r[{l, g}];
      part.values[local_index(part, g)] = v;
      set.separation_adjustments[{l, g}] = v;
    }
    double total = 0.0;
    for (double v : part.values) total += v;
    // Remove round-off so the local network passes its balance check.
    if (std::abs(total) <= 1e3 * kEps && !part_splits[l].empty()) {
      const int k = local_index(part, part_splits[l].front());
      part.values[k] -= total;
      set.separation_adjustments[{l, part_splits[l].front()}] = part.values[k];
    }
    part.network = part.network.with_values(part.values, BuildOptions{.require_balance = false});
    part.sources.clear();
    for (int k = 0; k < static_cast<int>(part.values.size()); ++k)
      if (part.values[k] > kEps) part.sources.push_back(k);
  }
}

PartitionSet islander_partition(const DistributionNetwork& net, const PreProcessResult& pre) {
  return islander_partition(net, pre, balance_separation_values);
}

PartitionSet islander_partition(const DistributionNetwork& net, const PreProcessResult& pre,
                                const Balancer& balancer) {
  const int n = net.node_count();
  PartitionSet set;
  set.pre_sampled = pre.sampled;
  set.core_mask = pre.in_core;
  set.core_edges = pre.core_edges;
  if (pre.core_edges.empty()) return set;

  const Biconnected bc = biconnected_components(net, pre.core_edges);
  std::vector<bool> split(n, false);
  for (int v : bc.articulation)
    if (pre.values[v] > kEps) split[v] = true;

  // Edges of one block, or sharing a non-split endpoint, belong to the same partition.
  const int m = static_cast<int>(pre.core_edges.size());
  DisjointSets ds(m);
  std::vector<int> first_edge(n, -1);
  std::vector<int> block_first(bc.blocks, -1);
  for (int k = 0; k < m; ++k) {
    const Edge& ed = net.edge(pre.core_edges[k]);
    int& bf = block_first[bc.block_of_edge[pre.core_edges[k]]];
    if (bf < 0) bf = k;
    else ds.unite(bf, k);
    for (int v : {ed.a, ed.b}) {
      if (split[v]) continue;
      if (first_edge[v] < 0) first_edge[v] = k;
      else ds.unite(first_edge[v], k);
    }
  }
  std::map<int, std::vector<int>> classes;
  for (int k = 0; k < m; ++k) classes[ds.find(k)].push_back(pre.core_edges[k]);

  struct Piece {
    std::vector<int> nodes;
    std::vector<int> edges;
  };
  std::vector<Piece> pieces;
  for (auto& [_, edges] : classes) {
    Piece pc;
    pc.edges = edges;
    std::sort(pc.edges.begin(), pc.edges.end());
    for (int e : pc.edges) {
      pc.nodes.push_back(net.edge(e).a);
      pc.nodes.push_back(net.edge(e).b);
    }
    std::sort(pc.nodes.begin(), pc.nodes.end());
    pc.nodes.erase(std::unique(pc.nodes.begin(), pc.nodes.end()), pc.nodes.end());
    pieces.push_back(std::move(pc));
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) {
    if (x.nodes.front() != y.nodes.front()) return x.nodes.front() < y.nodes.front();
    return x.edges.front() < y.edges.front();
  });

  for (int v = 0; v < n; ++v)
    if (split[v]) set.split_values[v] = pre.values[v];
  for (Piece& pc : pieces) {
    Partition part;
    part.global_node = pc.nodes;
    part.global_edge = pc.edges;
    for (std::size_t k = 0; k < pc.nodes.size(); ++k) {
      const int g = pc.nodes[k];
      part.values.push_back(split[g] ? 0.0 : pre.values[g]);
      if (split[g]) part.separation_nodes.push_back(static_cast<int>(k));
    }
    NodalValues scratch(n, 0.0);
    for (std::size_t k = 0; k < pc.nodes.size(); ++k) scratch[pc.nodes[k]] = part.values[k];
    part.network = net.subnetwork(pc.nodes, pc.edges, scratch, BuildOptions{.require_balance = false});
    set.partitions.push_back(std::move(part));
  }
  if (set.split_values.empty()) {
    for (Partition& part : set.partitions) {
      part.network = part.network.with_values(part.values, BuildOptions{.require_balance = false});
      for (int k = 0; k < static_cast<int>(part.values.size()); ++k)
        if (part.values[k] > kEps) part.sources.push_back(k);
    }
    return set;
  }
  balancer(set);
  return set;
}

}  // namespace radial
