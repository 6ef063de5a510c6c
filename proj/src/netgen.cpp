#include "radial/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <tuple>

#include "radial/error.hpp"
#include "radial/oracle.hpp"
#include "radial/tree_flow.hpp"

namespace radial {
namespace {

// Portable draws on top of mt19937_64 so fixtures do not depend on the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  // Integer in [lo, hi].
  long long integer(long long lo, long long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long long>(gen_() % span);
  }

 private:
  std::mt19937_64 gen_;
};

bool connected(const Graph& g) {
  DisjointSets ds(g.n);
  int comps = g.n;
  for (auto [a, b] : g.edges)
    if (ds.unite(a, b)) --comps;
  return comps == 1;
}

Graph ws_once(int n, int k, double beta, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::set<int>> adj(n);
  std::vector<std::pair<int, int>> edges;
  for (int j = 1; j <= k / 2; ++j)
    for (int i = 0; i < n; ++i) {
      const int w = (i + j) % n;
      edges.push_back({i, w});
      adj[i].insert(w);
      adj[w].insert(i);
    }
  // Rewire lattice edges ring by ring, keeping the near endpoint.
  for (auto& [u, v] : edges) {
    if (rng.uniform() >= beta) continue;
    if (static_cast<int>(adj[u].size()) >= n - 1) continue;
    int w;
    do {
      w = static_cast<int>(rng.integer(0, n - 1));
    } while (w == u || adj[u].count(w));
    adj[u].erase(v);
    adj[v].erase(u);
    adj[u].insert(w);
    adj[w].insert(u);
    v = w;
  }
  Graph g;
  g.n = n;
  for (auto [a, b] : edges) g.edges.push_back({std::min(a, b), std::max(a, b)});
  return g;
}

DistributionNetwork assign_values(const Graph& g, std::vector<int> sources, const ValueOptions& opts,
                                  Rng& rng, const std::vector<std::string>& labels) {
  const int n = g.n;
  std::vector<bool> is_source(n, false);
  for (int s : sources) is_source[s] = true;
  const long long dlo = std::llround(opts.demand_min);
  const long long dhi = std::llround(opts.demand_max);
  if (dlo < 0 || dhi < dlo) throw InputError("invalid demand range");
  std::vector<double> demand(n, 0.0), supply(n, 0.0);
  double total = 0.0;
  for (int v = 0; v < n; ++v) {
    if (is_source[v]) continue;
    demand[v] = static_cast<double>(rng.integer(dlo, dhi));
    total += demand[v];
  }
  // Integer split of the total demand with random proportions.
  std::vector<double> share(sources.size());
  double wsum = 0.0;
  for (double& w : share) {
    w = 0.5 + rng.uniform();
    wsum += w;
  }
  double given = 0.0;
  for (std::size_t k = 0; k < sources.size(); ++k) {
    supply[sources[k]] = std::floor(total * share[k] / wsum);
    given += supply[sources[k]];
  }
  for (std::size_t k = 0; given < total; k = (k + 1) % sources.size()) {
    supply[sources[k]] += 1.0;
    given += 1.0;
  }
  const double max_supply = *std::max_element(supply.begin(), supply.end());
  RawNetwork raw;
  raw.meta.name = opts.name;
  raw.meta.seed = opts.seed;
  for (int v = 0; v < n; ++v) raw.nodes.push_back({labels[v], supply[v], demand[v]});
  for (auto [a, b] : g.edges) {
    const double cost = opts.cost_min + (opts.cost_max - opts.cost_min) * rng.uniform();
    const double cap = std::isinf(opts.slack) ? kInf : opts.slack * max_supply;
    raw.edges.push_back({labels[a], labels[b], cap, cost});
  }
  return build_network(raw);
}

std::vector<std::string> index_labels(int n, int base) {
  std::vector<std::string> out;
  for (int v = 0; v < n; ++v) out.push_back(std::to_string(v + base));
  return out;
}

}  // namespace

Graph watts_strogatz(int n, int k, double beta, std::uint64_t seed, int max_retries) {
  if (k < 2 || k % 2 != 0) throw InputError("watts_strogatz: k must be even and at least 2");
  if (n <= k) throw InputError("watts_strogatz: n must exceed k");
  if (!(beta >= 0.0 && beta <= 1.0)) throw InputError("watts_strogatz: beta must lie in [0,1]");
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    Graph g = ws_once(n, k, beta, seed + static_cast<std::uint64_t>(attempt));
    if (connected(g)) return g;
  }
  throw InputError("watts_strogatz: no connected graph within the retry budget");
}

DistributionNetwork assign_balanced_values(const Graph& g, const ValueOptions& opts) {
  if (opts.sources < 1 || opts.sources >= g.n) throw InputError("source count must lie in [1, n)");
  Rng rng(opts.seed);
  std::vector<int> order(g.n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = 0; i < opts.sources; ++i) {
    const int j = static_cast<int>(rng.integer(i, g.n - 1));
    std::swap(order[i], order[j]);
  }
  std::vector<int> sources(order.begin(), order.begin() + opts.sources);
  std::sort(sources.begin(), sources.end());
  return assign_values(g, sources, opts, rng, index_labels(g.n, 0));
}

namespace fixtures {
namespace {

struct Spec {
  const char* a;
  const char* b;
  double cap;
  double cost;
};

DistributionNetwork make(const std::string& name, const std::vector<std::pair<std::string, double>>& values,
                         const std::vector<Spec>& edges) {
  RawNetwork raw;
  raw.meta.name = name;
  for (const auto& [id, p] : values) raw.nodes.push_back({id, p > 0 ? p : 0.0, p < 0 ? -p : 0.0});
  for (const Spec& s : edges) raw.edges.push_back({s.a, s.b, s.cap, s.cost});
  return build_network(raw);
}

RadialSolution solution(const DistributionNetwork& net,
                        const std::vector<std::tuple<std::string, std::string, double>>& arcs) {
  RadialSolution s;
  for (const auto& [a, b, x] : arcs) s.add({net.id(a), net.id(b)}, x);
  return s;
}

}  // namespace

DistributionNetwork fig2(double d) {
  return make("fig2", {{"1", 5 * d}, {"2", -d}, {"3", -d}, {"4", -d}, {"5", -d}, {"6", -d}},
              {{"1", "2", kInf, 1}, {"1", "3", kInf, 1}, {"2", "4", kInf, 1},
               {"4", "5", kInf, 1}, {"5", "6", kInf, 2}, {"3", "6", kInf, 4}});
}

RadialSolution fig2_mst(const DistributionNetwork& net) {
  return solution(net, {{"1", "2", 4}, {"2", "4", 3}, {"4", "5", 2}, {"5", "6", 1}, {"1", "3", 1}});
}

RadialSolution fig2_optimal(const DistributionNetwork& net) {
  return solution(net, {{"1", "2", 3}, {"2", "4", 2}, {"4", "5", 1}, {"1", "3", 2}, {"3", "6", 1}});
}

DistributionNetwork fig3() {
  return make("fig3", {{"1", 2}, {"3", -1}, {"4", -1}, {"6", 2}, {"7", -1}, {"8", -1}},
              {{"1", "3", kInf, 1}, {"3", "4", kInf, 1}, {"3", "7", kInf, 1},
               {"4", "6", kInf, 1}, {"7", "8", kInf, 1}, {"4", "8", kInf, 1.5}});
}

RadialSolution fig3_msf(const DistributionNetwork& net) {
  return solution(net, {{"1", "3", 2}, {"3", "7", 1}, {"6", "4", 2}, {"4", "8", 1}});
}

RadialSolution fig3_mst(const DistributionNetwork& net) {
  return solution(net, {{"1", "3", 2}, {"6", "4", 2}, {"4", "3", 1}, {"3", "7", 2}, {"7", "8", 1}});
}

DistributionNetwork fig5() { return partition_reduction_instance({3, 4, 5, 4}, 2); }

RadialSolution fig5_radial(const DistributionNetwork& net) {
  return solution(net, {{"s1", "v4", 4}, {"s1", "v2", 4}, {"s1", "v0", 1},
                        {"s2", "v3", 5}, {"s2", "v1", 3}, {"s2", "v0", 1}});
}

RadialSolution fig5_non_radial(const DistributionNetwork& net) {
  return solution(net, {{"s1", "v0", 1}, {"s2", "v0", 1}, {"s1", "v1", 1.5}, {"s2", "v1", 1.5},
                        {"s1", "v2", 2}, {"s2", "v2", 2}, {"s1", "v3", 2.5}, {"s2", "v3", 2.5},
                        {"s1", "v4", 2}, {"s2", "v4", 2}});
}

DistributionNetwork fig6() {
  return make("fig6",
              {{"1", 5}, {"2", 12}, {"3", 12}, {"4", -1}, {"5", -4}, {"6", -1}, {"7", -3}, {"8", -2},
               {"9", -3}, {"10", -1}, {"11", -3}, {"12", -2}, {"13", -1}, {"14", -2}, {"15", -3},
               {"16", -3}},
              {{"1", "4", kInf, 1}, {"1", "6", kInf, 1}, {"1", "7", kInf, 1}, {"1", "8", kInf, 1},
               {"4", "5", kInf, 1}, {"5", "6", kInf, 1}, {"7", "9", kInf, 1}, {"8", "11", kInf, 1},
               {"8", "10", kInf, 1}, {"9", "16", kInf, 1}, {"16", "10", kInf, 1}, {"2", "8", kInf, 1},
               {"2", "10", kInf, 1}, {"3", "9", kInf, 1}, {"3", "14", kInf, 1}, {"3", "15", kInf, 1},
               {"12", "13", kInf, 1}, {"9", "12", kInf, 1}});
}

DistributionNetwork fig7() {
  return make("fig7", {{"1", 3}, {"2", -15}, {"3", 10}, {"4", -11}, {"5", 20}, {"6", -7}},
              {{"1", "2", kInf, 1}, {"2", "3", kInf, 1}, {"1", "4", kInf, 1},
               {"4", "5", kInf, 1}, {"5", "6", kInf, 1}, {"6", "3", kInf, 1}});
}

DistributionNetwork fig8() {
  return make("fig8", {{"1", 20}, {"2", 30}, {"3", -20}, {"4", -10}, {"5", -10}, {"6", -10}},
              {{"1", "5", 20, 2}, {"1", "6", 12, 1}, {"5", "3", 20, 4}, {"5", "6", 10, 1},
               {"5", "4", 10, 1}, {"4", "3", 20, 1}, {"2", "5", 10, 2}, {"2", "6", 10, 2},
               {"2", "4", 20, 2}});
}

namespace {

const std::vector<std::pair<int, int>> kIeee33Edges = {
    {1, 4},   {3, 15},  {4, 5},   {5, 6},   {6, 7},   {7, 8},   {8, 9},   {9, 10},  {10, 11}, {11, 12},
    {12, 13}, {13, 14}, {14, 15}, {15, 16}, {16, 30}, {16, 17}, {2, 10},  {28, 2},  {27, 28}, {7, 27},
    {12, 26}, {26, 27}, {25, 26}, {24, 25}, {24, 29}, {23, 24}, {22, 23}, {21, 22}, {20, 21}, {20, 19},
    {20, 33}, {19, 18}, {18, 17}, {29, 30}, {1, 31}, {31, 32}, {32, 33}};

const std::vector<std::pair<int, int>> kIeee33Radial = {
    {1, 4},   {3, 15},  {4, 5},   {5, 6},   {6, 7},   {7, 8},   {8, 9},   {9, 10},  {11, 10}, {12, 11},
    {13, 12}, {14, 13}, {15, 14}, {15, 16}, {16, 30}, {16, 17}, {2, 28},  {28, 27}, {27, 26}, {26, 25},
    {25, 24}, {24, 29}, {24, 23}, {23, 22}, {22, 21}, {21, 20}, {20, 19}, {19, 18}, {1, 31}, {31, 32},
    {32, 33}};

}  // namespace

DistributionNetwork ieee33(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> demand(34, 0.0), supply(34, 0.0);
  for (int v = 4; v <= 33; ++v) demand[v] = static_cast<double>(rng.integer(1, 10));
  // Supplies follow the reference configuration so that it stays balanced:
  // node 2 feeds its own subtree, nodes 1 and 3 share node 10.
  std::vector<int> owner(34, 0);
  owner[1] = 1, owner[2] = 2, owner[3] = 3;
  for (bool changed = true; changed;) {
    changed = false;
    for (auto [a, b] : kIeee33Radial)
      if (owner[a] && !owner[b] && b != 10) {
        owner[b] = owner[a];
        changed = true;
      }
  }
  for (int v = 4; v <= 33; ++v)
    if (v != 10) supply[owner[v]] += demand[v];
  supply[1] += std::floor(demand[10] / 2);
  supply[3] += demand[10] - std::floor(demand[10] / 2);
  const double cap = std::max({supply[1], supply[2], supply[3]});
  RawNetwork raw;
  raw.meta.name = "ieee33";
  raw.meta.seed = seed;
  for (int v = 1; v <= 33; ++v) raw.nodes.push_back({std::to_string(v), supply[v], demand[v]});
  for (auto [a, b] : kIeee33Edges) {
    const double cost = 0.5 + 1.5 * rng.uniform();
    raw.edges.push_back({std::to_string(a), std::to_string(b), cap, cost});
  }
  return build_network(raw);
}

RadialSolution ieee33_radial(const DistributionNetwork& net) {
  std::vector<DirectedEdge> arcs;
  for (auto [a, b] : kIeee33Radial) arcs.push_back({net.id(std::to_string(a)), net.id(std::to_string(b))});
  return flows_on_polyforest(net, arcs, net.values());
}

std::vector<std::string> names() { return {"fig2", "fig3", "fig5", "fig6", "fig7", "fig8", "ieee33"}; }

DistributionNetwork by_name(const std::string& name) {
  if (name == "fig2") return fig2();
  if (name == "fig3") return fig3();
  if (name == "fig5") return fig5();
  if (name == "fig6") return fig6();
  if (name == "fig7") return fig7();
  if (name == "fig8") return fig8();
  if (name == "ieee33") return ieee33();
  throw InputError("unknown fixture: " + name);
}

}  // namespace fixtures
}  // namespace radial
