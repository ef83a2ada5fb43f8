#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "caqr/cost.hpp"
#include "caqr/error.hpp"
#include "caqr/generators.hpp"
#include "caqr/hardware.hpp"
#include "caqr/io.hpp"
#include "caqr/qasm.hpp"
#include "caqr/qs_caqr.hpp"
#include "caqr/sr_caqr.hpp"

namespace py = pybind11;
using namespace caqr;

namespace {

// Structured results cross the boundary as JSON and come out as dicts.
py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Json to_cpp(const py::object& o) {
  return Json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

std::vector<ReusePair> pairs_from(const std::vector<std::pair<int, int>>& raw) {
  std::vector<ReusePair> out;
  for (auto [p, c] : raw) out.push_back({p, c});
  return out;
}

Json infeasible_json(const Infeasible& inf) {
  return {{"infeasible", true}, {"limit", inf.limit}, {"reached", inf.reached}, {"reason", inf.reason}};
}

QsOptions qs_for(const Architecture* arch, bool builtin_reset) {
  QsOptions o;
  if (arch) {
    o.durations = arch->calibration.durations();
  } else if (builtin_reset) {
    o.durations = DurationModel::with_builtin_reset();
  }
  return o;
}

}  // namespace

PYBIND11_MODULE(_caqr, m) {
  m.doc() = "Qubit reuse compiler core";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  py::class_<Circuit>(m, "Circuit")
      .def_readonly("name", &Circuit::name)
      .def_readonly("num_qubits", &Circuit::num_qubits)
      .def_readonly("num_clbits", &Circuit::num_clbits)
      .def_property_readonly("num_instructions",
                             [](const Circuit& c) { return c.instructions.size(); })
      .def_property_readonly("has_commuting_group", &Circuit::has_commuting_group)
      .def("qasm", [](const Circuit& c) { return emit_qasm(c); })
      .def("depth", [](const Circuit& c) { return circuit_depth(c); })
      .def("__repr__", [](const Circuit& c) {
        return "<Circuit " + c.name + ": " + std::to_string(c.num_qubits) + " qubits, " +
               std::to_string(c.instructions.size()) + " instructions>";
      });

  py::class_<Architecture>(m, "Architecture")
      .def_property_readonly("name", [](const Architecture& a) { return a.graph.name; })
      .def_property_readonly("num_qubits", [](const Architecture& a) { return a.graph.num_physical; })
      .def_property_readonly("edges", [](const Architecture& a) { return a.graph.edges; })
      .def("json", [](const Architecture& a) { return emit_architecture(a); });

  m.def("parse_qasm", [](const std::string& text) { return parse_qasm(text); }, py::arg("text"));
  m.def("read_qasm", &read_qasm_file, py::arg("path"));
  m.def("architecture", &resolve_architecture, py::arg("spec"), py::arg("builtin_reset") = false,
        "Built-in heavy-hex name or path to an architecture JSON file");

  m.def("gen_bv", &gen_bv, py::arg("n"), py::arg("secret"));
  m.def("gen_cc", &gen_cc, py::arg("n"), py::arg("counterfeit"));
  m.def("gen_xor", &gen_xor, py::arg("n"), py::arg("inputs"));
  m.def(
      "gen_problem_graph",
      [](int n, double density, const std::string& kind, std::uint64_t seed) {
        return to_py(to_json(gen_problem_graph(n, density, graph_kind_from_string(kind), seed)));
      },
      py::arg("n"), py::arg("density"), py::arg("kind") = "random", py::arg("seed") = 1);
  m.def(
      "gen_qaoa",
      [](const py::object& graph, double gamma, double beta) {
        return gen_qaoa_maxcut(problem_graph_from_json(to_cpp(graph)), gamma, beta);
      },
      py::arg("graph"), py::arg("gamma") = 0.4, py::arg("beta") = 0.3);

  m.def(
      "simulate",
      [](const Circuit& c) { return to_py(to_json(simulate_exact(c))); }, py::arg("circuit"));
  m.def(
      "tvd",
      [](const py::object& a, const py::object& b) {
        return total_variation_distance(distribution_from_json(to_cpp(a)),
                                        distribution_from_json(to_cpp(b)));
      },
      py::arg("p"), py::arg("q"));

  m.def(
      "min_qubits", [](const Circuit& c) { return min_qubits(c); }, py::arg("circuit"));
  m.def(
      "coloring",
      [](const Circuit& c) {
        auto col = color_interaction_graph(InteractionGraph::from_circuit(c));
        return py::make_tuple(col.num_colors, col.color);
      },
      py::arg("circuit"), "Number of colors and the color of each qubit");

  m.def(
      "reduce",
      [](const Circuit& c, int limit, bool builtin_reset) -> py::tuple {
        auto r = reduce_to_limit(c, limit, qs_for(nullptr, builtin_reset));
        if (auto* inf = std::get_if<Infeasible>(&r)) return py::make_tuple(py::none(), to_py(infeasible_json(*inf)));
        const auto& t = std::get<TransformResult>(r);
        return py::make_tuple(t.circuit, to_py(transform_report(c, t)));
      },
      py::arg("circuit"), py::arg("limit"), py::arg("builtin_reset") = false,
      "Returns (circuit, report); circuit is None when the limit is infeasible");

  m.def(
      "sweep_csv",
      [](const Circuit& c, const Architecture* arch, bool builtin_reset) {
        return tradeoff_csv(points_of(sweep(c, qs_for(arch, builtin_reset), arch)));
      },
      py::arg("circuit"), py::arg("arch") = nullptr, py::arg("builtin_reset") = false);

  m.def(
      "map_sr",
      [](const Circuit& c, const Architecture& arch, std::vector<std::pair<int, int>> pairs)
          -> py::tuple {
        auto r = c.has_commuting_group() ? map_commuting(c, arch, pairs_from(pairs))
                                         : map_regular(c, arch);
        if (auto* inf = std::get_if<Infeasible>(&r)) return py::make_tuple(py::none(), to_py(infeasible_json(*inf)));
        const auto& mr = std::get<MappedResult>(r);
        return py::make_tuple(mr.physical, to_py(mapping_report(c, pairs_from(pairs), mr)));
      },
      py::arg("circuit"), py::arg("arch"), py::arg("pairs") = std::vector<std::pair<int, int>>{});

  m.def(
      "map_min_swap",
      [](const Circuit& c, const Architecture& arch) -> py::tuple {
        auto choice = map_min_swap(c, arch, qs_for(&arch, false));
        if (!choice) return py::make_tuple(py::none(), py::none());
        return py::make_tuple(choice->mapped.physical,
                              to_py(mapping_report(c, choice->pairs, choice->mapped)));
      },
      py::arg("circuit"), py::arg("arch"));

  m.def(
      "route_without_reuse",
      [](const Circuit& c, const Architecture& arch) -> py::object {
        auto r = route_without_reuse(c, arch);
        if (auto* inf = std::get_if<Infeasible>(&r)) return to_py(infeasible_json(*inf));
        return to_py(to_json(std::get<MappedResult>(r)));
      },
      py::arg("circuit"), py::arg("arch"));
}
