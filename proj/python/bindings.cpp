#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "radial/error.hpp"
#include "radial/forward.hpp"
#include "radial/io.hpp"
#include "radial/netgen.hpp"
#include "radial/oracle.hpp"
#include "radial/verifier.hpp"

namespace py = pybind11;
using namespace radial;

namespace {

using Arc = std::tuple<std::string, std::string, double>;

std::vector<Arc> arcs(const DistributionNetwork& net, const RadialSolution& sol) {
  std::vector<Arc> out;
  for (std::size_t k = 0; k < sol.size(); ++k)
    out.emplace_back(net.label(sol.edges[k].from), net.label(sol.edges[k].to), sol.flows[k]);
  return out;
}

RadialSolution from_arcs(const DistributionNetwork& net, const std::vector<Arc>& in) {
  RadialSolution sol;
  for (const auto& [a, b, x] : in) sol.add({net.id(a), net.id(b)}, x);
  return sol;
}

py::dict report_dict(const DistributionNetwork& net, const RadialSolution& sol, const VerificationReport& r) {
  py::dict d;
  d["feasible"] = r.feasible();
  d["capacity_ok"] = r.capacity_ok;
  d["conservation_ok"] = r.conservation_ok;
  d["radial_ok"] = r.radial_ok;
  d["cost"] = evaluate_cost(net, sol);
  d["offending"] = r.offending_items;
  return d;
}

}  // namespace

PYBIND11_MODULE(_radial, m) {
  m.doc() = "Radial configuration solver for distribution networks";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<StructureError>(m, "StructureError", base.ptr());
  py::register_exception<InfeasibleError>(m, "InfeasibleError", base.ptr());

  py::class_<DistributionNetwork>(m, "Network")
      .def_static("from_json", [](const std::string& text) { return parse_network(text); }, py::arg("text"))
      .def_static("load", [](const std::string& path) { return load_network(path); }, py::arg("path"))
      .def("to_json", [](const DistributionNetwork& n) { return dump_network(n); })
      .def("save", [](const DistributionNetwork& n, const std::string& path) { save_network(n, path); }, py::arg("path"))
      .def_property_readonly("node_count", &DistributionNetwork::node_count)
      .def_property_readonly("edge_count", &DistributionNetwork::edge_count)
      .def_property_readonly("name", [](const DistributionNetwork& n) { return n.meta().name; })
      .def_property_readonly("labels",
                             [](const DistributionNetwork& n) {
                               std::vector<std::string> out;
                               for (int v = 0; v < n.node_count(); ++v) out.push_back(n.label(v));
                               return out;
                             })
      .def_property_readonly("values", &DistributionNetwork::values)
      .def("__eq__", [](const DistributionNetwork& a, const DistributionNetwork& b) { return a == b; })
      .def("__repr__", [](const DistributionNetwork& n) {
        return "<Network '" + n.meta().name + "' nodes=" + std::to_string(n.node_count()) +
               " edges=" + std::to_string(n.edge_count()) + ">";
      });

  m.def("fixture", &fixtures::by_name, py::arg("name"));
  m.def("fixture_names", &fixtures::names);
  m.def(
      "generate_ws",
      [](int n, int k, double beta, std::uint64_t seed, int sources, double demand_min, double demand_max,
         double slack, double cost_min, double cost_max) {
        ValueOptions vo;
        vo.sources = sources;
        vo.demand_min = demand_min;
        vo.demand_max = demand_max;
        vo.slack = slack;
        vo.cost_min = cost_min;
        vo.cost_max = cost_max;
        vo.seed = seed;
        vo.name = "ws" + std::to_string(n) + "-" + std::to_string(seed);
        return assign_balanced_values(watts_strogatz(n, k, beta, seed), vo);
      },
      py::arg("n"), py::arg("k") = 4, py::arg("beta") = 0.1, py::arg("seed") = 0, py::arg("sources") = 1,
      py::arg("demand_min") = 1.0, py::arg("demand_max") = 10.0, py::arg("slack") = kInf, py::arg("cost_min") = 0.5,
      py::arg("cost_max") = 2.0);
  m.def("partition_reduction_instance", &partition_reduction_instance, py::arg("values"), py::arg("a0"));

  m.def(
      "solve",
      [](const DistributionNetwork& net, const std::string& weight, bool strict_capacity, int jobs) {
        ForwardOptions opts;
        if (weight == "power") opts.weight = WeightMode::power;
        else if (weight == "uniform") opts.weight = WeightMode::uniform;
        else throw InputError("unknown weight mode: " + weight);
        opts.strict_capacity = strict_capacity;
        opts.parallel = jobs != 0;
        opts.jobs = jobs;
        ForwardResult r;
        {
          py::gil_scoped_release release;
          r = forward_solve(net, opts);
        }
        py::dict d = report_dict(net, r.solution, r.report);
        d["edges"] = arcs(net, r.solution);
        d["time_ms"] = r.stats.time_ms;
        d["partitions"] = r.stats.partitions;
        d["rewires"] = r.stats.rewires;
        d["resolved"] = r.stats.resolved;
        return d;
      },
      py::arg("network"), py::arg("weight") = "power", py::arg("strict_capacity") = false, py::arg("jobs") = 0);

  m.def(
      "oracle",
      [](const DistributionNetwork& net, int max_n) -> py::object {
        const OracleResult r = brute_force_optimal(net, max_n);
        if (!r.feasible) return py::none();
        py::dict d;
        d["cost"] = r.cost;
        d["edges"] = arcs(net, r.solution);
        d["trees"] = r.trees;
        return d;
      },
      py::arg("network"), py::arg("max_n") = kOracleMaxNodes);

  m.def(
      "verify",
      [](const DistributionNetwork& net, const std::vector<Arc>& edges) {
        const RadialSolution sol = from_arcs(net, edges);
        return report_dict(net, sol, verify_solution(net, sol));
      },
      py::arg("network"), py::arg("edges"));

  m.def(
      "count_spanning_trees", [](const DistributionNetwork& net) { return count_spanning_trees(net); },
      py::arg("network"));
}
