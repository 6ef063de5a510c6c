#include "radial/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "radial/error.hpp"
#include "radial/tree_flow.hpp"

namespace radial {
namespace {

int component_count(int n, const std::vector<Edge>& edges, const std::vector<int>& ids) {
  DisjointSets ds(n);
  int comps = n;
  for (int e : ids)
    if (ds.unite(edges[e].a, edges[e].b)) --comps;
  return comps;
}

// Maximal spanning forests by include/exclude backtracking. An edge may be
// excluded only if the rest of the graph keeps the same component count.
class ForestEnumerator {
 public:
  ForestEnumerator(const DistributionNetwork& net, const std::function<bool(const std::vector<int>&)>& visit)
      : net_(net), visit_(visit) {
    all_.resize(net.edge_count());
    std::iota(all_.begin(), all_.end(), 0);
    target_components_ = component_count(net.node_count(), net.edges(), all_);
    target_edges_ = net.node_count() - target_components_;
  }

  void run() {
    std::vector<int> label(net_.node_count());
    std::iota(label.begin(), label.end(), 0);
    recurse(0, label);
  }

 private:
  bool recurse(int k, std::vector<int>& label) {
    if (static_cast<int>(chosen_.size()) == target_edges_) return visit_(chosen_);
    if (k == net_.edge_count()) return true;
    const Edge& e = net_.edge(k);
    if (label[e.a] != label[e.b]) {
      std::vector<int> next = label;
      const int from = label[e.b], to = label[e.a];
      for (int& l : next)
        if (l == from) l = to;
      chosen_.push_back(k);
      const bool go = recurse(k + 1, next);
      chosen_.pop_back();
      if (!go) return false;
    }
    // Exclusion keeps the forest reachable only if e is not a bridge of the rest.
    std::vector<int> rest = chosen_;
    for (int j = k + 1; j < net_.edge_count(); ++j) rest.push_back(j);
    if (component_count(net_.node_count(), net_.edges(), rest) == target_components_)
      return recurse(k + 1, label);
    return true;
  }

  const DistributionNetwork& net_;
  const std::function<bool(const std::vector<int>&)>& visit_;
  std::vector<int> all_;
  std::vector<int> chosen_;
  int target_components_ = 0;
  int target_edges_ = 0;
};

void guard(const DistributionNetwork& net, int max_n) {
  if (net.node_count() > max_n)
    throw InputError("oracle size guard: " + std::to_string(net.node_count()) + " nodes exceeds " +
                     std::to_string(max_n));
}

}  // namespace

void enumerate_spanning_trees(const DistributionNetwork& net,
                              const std::function<bool(const std::vector<int>&)>& visit, int max_n) {
  guard(net, max_n);
  std::vector<int> all(net.edge_count());
  std::iota(all.begin(), all.end(), 0);
  if (component_count(net.node_count(), net.edges(), all) != 1)
    throw InputError("spanning tree enumeration needs a connected network");
  ForestEnumerator(net, visit).run();
}

std::uint64_t count_enumerated_trees(const DistributionNetwork& net, int max_n) {
  std::uint64_t count = 0;
  enumerate_spanning_trees(
      net,
      [&](const std::vector<int>&) {
        ++count;
        return true;
      },
      max_n);
  return count;
}

std::uint64_t count_spanning_trees(const DistributionNetwork& net, CountMode mode) {
  const int n = net.node_count();
  if (n <= 1) return 1;
  const int k = n - 1;
  if (mode == CountMode::exact) {
    using boost::multiprecision::cpp_int;
    std::vector<std::vector<cpp_int>> m(k, std::vector<cpp_int>(k, 0));
    for (const Edge& e : net.edges()) {
      const int a = e.a - 1, b = e.b - 1;
      if (a >= 0) m[a][a] += 1;
      if (b >= 0) m[b][b] += 1;
      if (a >= 0 && b >= 0) {
        m[a][b] -= 1;
        m[b][a] -= 1;
      }
    }
    // Fraction-free (Bareiss) elimination.
    cpp_int prev = 1;
    int sign = 1;
    for (int i = 0; i < k; ++i) {
      if (m[i][i] == 0) {
        int r = i + 1;
        while (r < k && m[r][i] == 0) ++r;
        if (r == k) return 0;
        std::swap(m[i], m[r]);
        sign = -sign;
      }
      for (int r = i + 1; r < k; ++r) {
        for (int c = i + 1; c < k; ++c) m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) / prev;
        m[r][i] = 0;
      }
      prev = m[i][i];
    }
    cpp_int det = m[k - 1][k - 1] * sign;
    if (det < 0) det = -det;
    if (det > cpp_int(std::numeric_limits<std::uint64_t>::max()))
      throw InputError("spanning tree count overflows 64 bits");
    return det.convert_to<std::uint64_t>();
  }
  std::vector<std::vector<long double>> m(k, std::vector<long double>(k, 0.0L));
  for (const Edge& e : net.edges()) {
    const int a = e.a - 1, b = e.b - 1;
    if (a >= 0) m[a][a] += 1;
    if (b >= 0) m[b][b] += 1;
    if (a >= 0 && b >= 0) {
      m[a][b] -= 1;
      m[b][a] -= 1;
    }
  }
  long double det = 1.0L;
  for (int i = 0; i < k; ++i) {
    int piv = i;
    for (int r = i + 1; r < k; ++r)
      if (std::fabs(m[r][i]) > std::fabs(m[piv][i])) piv = r;
    if (std::fabs(m[piv][i]) < 1e-12L) return 0;
    if (piv != i) {
      std::swap(m[i], m[piv]);
      det = -det;
    }
    det *= m[i][i];
    for (int r = i + 1; r < k; ++r) {
      const long double f = m[r][i] / m[i][i];
      for (int c = i; c < k; ++c) m[r][c] -= f * m[i][c];
    }
  }
  det = std::fabs(det);
  const long double rounded = std::round(det);
  if (std::fabs(det - rounded) >= 1e-6L)
    throw InputError("floating spanning tree count failed the rounding guard");
  return static_cast<std::uint64_t>(rounded);
}

OracleResult brute_force_optimal(const DistributionNetwork& net, int max_n) {
  return brute_force_optimal(net, net.values(), max_n);
}

OracleResult brute_force_optimal(const DistributionNetwork& net, const NodalValues& p, int max_n) {
  guard(net, max_n);
  OracleResult out;
  std::vector<int> best;
  std::vector<double> best_flow;
  bool unbalanced = false;
  ForestEnumerator(net, [&](const std::vector<int>& ids) {
    ++out.trees;
    const ForestFlow ff = forest_flow(net, ids, p);
    if (ff.max_imbalance > kEps) {
      // Every spanning forest shares the same components.
      unbalanced = true;
      return false;
    }
    double cost = 0.0;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      const Edge& e = net.edge(ids[k]);
      if (std::abs(ff.flow[k]) > e.capacity + kEps) return true;
      cost += e.cost * ff.flow[k] * ff.flow[k];
    }
    ++out.feasible_trees;
    if (!out.feasible || cost < out.cost - 1e-12 * std::max(1.0, out.cost)) {
      out.feasible = true;
      out.cost = cost;
      best = ids;
      best_flow = ff.flow;
    }
    return true;
  }).run();
  if (unbalanced) {
    out.feasible = false;
    out.cost = kInf;
    out.feasible_trees = 0;
    return out;
  }
  for (std::size_t k = 0; k < best.size(); ++k) {
    const Edge& e = net.edge(best[k]);
    const double x = best_flow[k];
    if (x > kEps) out.solution.add({e.a, e.b}, x);
    else if (x < -kEps) out.solution.add({e.b, e.a}, -x);
  }
  out.solution.canonicalize();
  return out;
}

DistributionNetwork partition_reduction_instance(const std::vector<int>& A, int a0) {
  if (A.empty()) throw InputError("reduction needs a nonempty multiset");
  if (a0 <= 0) throw InputError("reduction needs a positive a0");
  for (int a : A)
    if (a <= 0) throw InputError("reduction entries must be positive");
  const double total = std::accumulate(A.begin(), A.end(), 0.0);
  const double g = total / 2.0 + a0 / 2.0;
  RawNetwork raw;
  raw.meta.name = "partition-reduction";
  raw.nodes.push_back({"s1", g, 0.0});
  raw.nodes.push_back({"s2", g, 0.0});
  raw.nodes.push_back({"v0", 0.0, static_cast<double>(a0)});
  for (std::size_t i = 0; i < A.size(); ++i)
    raw.nodes.push_back({"v" + std::to_string(i + 1), 0.0, static_cast<double>(A[i])});
  for (const char* s : {"s1", "s2"}) {
    raw.edges.push_back({s, "v0", a0 / 2.0, 1.0});
    for (std::size_t i = 0; i < A.size(); ++i)
      raw.edges.push_back({s, "v" + std::to_string(i + 1), static_cast<double>(A[i]), 1.0});
  }
  return build_network(raw);
}

}  // namespace radial
