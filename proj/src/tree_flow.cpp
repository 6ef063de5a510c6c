#include "radial/tree_flow.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "radial/error.hpp"

namespace radial {

DisjointSets::DisjointSets(int n) : parent_(n), rank_(n, 0) {
  std::iota(parent_.begin(), parent_.end(), 0);
}

int DisjointSets::find(int x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSets::unite(int x, int y) {
  x = find(x);
  y = find(y);
  if (x == y) return false;
  if (rank_[x] < rank_[y]) std::swap(x, y);
  parent_[y] = x;
  if (rank_[x] == rank_[y]) ++rank_[x];
  return true;
}

TreeFlowResult solve_tree_flow(const DistributionNetwork& net, std::span<const int> edge_ids,
                               const NodalValues& p) {
  const int n = net.node_count();
  std::vector<std::vector<int>> inc(n);
  std::vector<bool> member(n, false);
  DisjointSets ds(n);
  for (int e : edge_ids) {
    const Edge& ed = net.edge(e);
    if (!ds.unite(ed.a, ed.b)) throw StructureError("tree_flow: edge set contains a cycle");
    inc[ed.a].push_back(e);
    inc[ed.b].push_back(e);
    member[ed.a] = member[ed.b] = true;
  }
  int members = 0;
  int root = -1;
  double total = 0.0;
  for (int v = 0; v < n; ++v) {
    if (!member[v]) continue;
    ++members;
    total += p[v];
    if (root < 0) root = ds.find(v);
    else if (ds.find(v) != root) throw StructureError("tree_flow: edge set is not connected");
  }
  if (edge_ids.empty()) {
    // A bare network with one node is the only edgeless tree.
    if (n != 1) throw StructureError("tree_flow: empty edge set on a multi-node network");
    total = p[0];
  }
  if (std::abs(total) > kEps) throw InputError("tree_flow: values on the tree are unbalanced");

  TreeFlowResult out;
  out.feasible = true;
  NodalValues val(p.begin(), p.end());
  std::vector<int> degree(n, 0);
  std::vector<bool> edge_done(net.edge_count(), false);
  std::set<int> pendants;
  for (int v = 0; v < n; ++v) {
    degree[v] = static_cast<int>(inc[v].size());
    if (degree[v] == 1) pendants.insert(v);
  }
  while (!pendants.empty()) {
    const int i = *pendants.begin();
    pendants.erase(pendants.begin());
    if (degree[i] != 1) continue;
    int e = -1;
    for (int c : inc[i])
      if (!edge_done[c]) e = c;
    const int j = net.other(e, i);
    const double pi = val[i];
    const double cap = net.edge(e).capacity;
    if (std::abs(pi) > cap + kEps) {
      out.feasible = false;
      out.blocking_edge = e;
      return out;
    }
    if (pi > kEps) out.solution.add({i, j}, pi);
    else if (pi < -kEps) out.solution.add({j, i}, -pi);
    val[j] += pi;
    val[i] = 0.0;
    edge_done[e] = true;
    degree[i] = 0;
    if (--degree[j] == 1) pendants.insert(j);
  }
  return out;
}

TreeFlowResult solve_tree_flow(const DistributionNetwork& net, const NodalValues& p) {
  if (net.edge_count() != net.node_count() - 1) throw StructureError("tree_flow: network is not a tree");
  std::vector<int> ids(net.edge_count());
  std::iota(ids.begin(), ids.end(), 0);
  return solve_tree_flow(net, ids, p);
}

ForestFlow forest_flow(const DistributionNetwork& net, std::span<const int> edge_ids,
                       const NodalValues& p) {
  const int n = net.node_count();
  const int k = static_cast<int>(edge_ids.size());
  std::vector<std::vector<int>> inc(n);  // local edge indices
  DisjointSets ds(n);
  for (int li = 0; li < k; ++li) {
    const Edge& ed = net.edge(edge_ids[li]);
    if (!ds.unite(ed.a, ed.b)) throw StructureError("forest_flow: edge set contains a cycle");
    inc[ed.a].push_back(li);
    inc[ed.b].push_back(li);
  }
  ForestFlow out;
  out.flow.assign(k, 0.0);
  out.residual.assign(n, 0.0);
  std::vector<int> parent_edge(n, -1);
  std::vector<bool> seen(n, false);
  std::vector<int> order;
  order.reserve(n);
  std::vector<double> sub(n, 0.0);
  for (int r = 0; r < n; ++r) {
    if (seen[r]) continue;
    const std::size_t start = order.size();
    seen[r] = true;
    order.push_back(r);
    for (std::size_t q = start; q < order.size(); ++q) {
      const int v = order[q];
      for (int li : inc[v]) {
        const int w = net.other(edge_ids[li], v);
        if (seen[w]) continue;
        seen[w] = true;
        parent_edge[w] = li;
        order.push_back(w);
      }
    }
    for (std::size_t q = order.size(); q-- > start;) {
      const int v = order[q];
      sub[v] += p[v];
      if (parent_edge[v] < 0) {
        out.residual[v] = sub[v];
        out.max_imbalance = std::max(out.max_imbalance, std::abs(sub[v]));
        continue;
      }
      const int li = parent_edge[v];
      const Edge& ed = net.edge(edge_ids[li]);
      const int parent = net.other(edge_ids[li], v);
      // Subtree surplus leaves v toward its parent.
      out.flow[li] = (ed.a == v) ? sub[v] : -sub[v];
      sub[parent] += sub[v];
    }
  }
  return out;
}

RadialSolution flows_on_polyforest(const DistributionNetwork& net,
                                   std::span<const DirectedEdge> edges, const NodalValues& p) {
  std::vector<int> ids;
  ids.reserve(edges.size());
  std::vector<bool> used(net.edge_count(), false);
  for (const DirectedEdge& d : edges) {
    if (d.from < 0 || d.to < 0 || d.from >= net.node_count() || d.to >= net.node_count())
      throw InputError("polyforest edge references an unknown node");
    auto e = net.find_edge(d.from, d.to);
    if (!e) throw InputError("polyforest edge is not a network edge");
    if (used[*e]) throw StructureError("edge appears twice in the polyforest");
    used[*e] = true;
    ids.push_back(*e);
  }
  const ForestFlow ff = forest_flow(net, ids, p);
  if (ff.max_imbalance > kEps) throw InfeasibleError("polyforest component is unbalanced");
  RadialSolution sol;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const Edge& ed = net.edge(ids[k]);
    double x = ff.flow[k];
    if (edges[k].from != ed.a) x = -x;
    if (x < -kEps) throw InfeasibleError("orientation contradicts the unique flow");
    sol.add(edges[k], x > 0.0 ? x : 0.0);
  }
  return sol;
}

}  // namespace radial
