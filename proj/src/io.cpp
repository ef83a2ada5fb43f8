#include "caqr/io.hpp"

#include <algorithm>

#include "caqr/error.hpp"
#include "caqr/qasm.hpp"

namespace caqr {

namespace {

// nlohmann reports type errors as its own exceptions; surface them as
// ParseError without a position.
template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what(), 0, 0);
  }
}

Json pairs_json(const std::vector<ReusePair>& pairs) {
  Json out = Json::array();
  for (const auto& p : pairs) out.push_back({p.producer, p.consumer});
  return out;
}

}  // namespace

Json to_json(const ProblemGraph& graph) {
  Json edges = Json::array();
  for (auto [u, v] : graph.edges) edges.push_back({u, v});
  return {{"n", graph.n},
          {"edges", edges},
          {"kind", to_string(graph.kind)},
          {"density", graph.density},
          {"seed", graph.seed}};
}

ProblemGraph problem_graph_from_json(const Json& j) {
  return guarded("problem graph", [&] {
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    auto g = make_problem_graph(j.at("n").get<int>(), std::move(edges));
    if (j.contains("kind")) g.kind = graph_kind_from_string(j["kind"].get<std::string>());
    g.density = j.value("density", 0.0);
    g.seed = j.value("seed", std::uint64_t{0});
    return g;
  });
}

Json to_json(const WireMap& map) {
  Json wires = Json::object();
  Json clbits = Json::object();
  for (std::size_t q = 0; q < map.wire.size(); ++q) {
    wires[std::to_string(q)] = map.wire[q];
    if (q < map.clbit.size() && map.clbit[q] >= 0) clbits[std::to_string(q)] = map.clbit[q];
  }
  return {{"pairs", pairs_json(map.pairs)},
          {"wires", wires},
          {"clbits", clbits},
          {"scratch", map.scratch},
          {"num_wires", map.num_wires}};
}

WireMap wiremap_from_json(const Json& j) {
  return guarded("wire map", [&] {
    WireMap m;
    for (const auto& p : j.at("pairs")) m.pairs.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
    const auto& wires = j.at("wires");
    const int n = static_cast<int>(wires.size());
    m.wire.assign(static_cast<std::size_t>(n), -1);
    m.epoch.assign(static_cast<std::size_t>(n), 0);
    m.clbit.assign(static_cast<std::size_t>(n), -1);
    for (auto it = wires.begin(); it != wires.end(); ++it) {
      const int q = std::stoi(it.key());
      if (q < 0 || q >= n) throw InvalidArgument("wire map key out of range: " + it.key());
      m.wire[q] = it.value().get<int>();
    }
    if (j.contains("clbits")) {
      for (auto it = j["clbits"].begin(); it != j["clbits"].end(); ++it) {
        const int q = std::stoi(it.key());
        if (q < 0 || q >= n) throw InvalidArgument("wire map key out of range: " + it.key());
        m.clbit[q] = it.value().get<int>();
      }
    }
    if (j.contains("scratch")) m.scratch = j["scratch"].get<std::vector<int>>();
    m.num_wires = j.value("num_wires", 0);
    if (m.num_wires == 0 && n > 0) m.num_wires = *std::max_element(m.wire.begin(), m.wire.end()) + 1;
    return m;
  });
}

Json to_json(const Distribution& dist) {
  Json probs = Json::object();
  for (const auto& [k, p] : dist.probs) probs[k] = p;
  return {{"bits", dist.bits}, {"probs", probs}};
}

Distribution distribution_from_json(const Json& j) {
  return guarded("distribution", [&] {
    Distribution d;
    d.bits = j.at("bits").get<int>();
    for (auto it = j.at("probs").begin(); it != j.at("probs").end(); ++it) {
      if (static_cast<int>(it.key().size()) != d.bits) {
        throw InvalidArgument("outcome '" + it.key() + "' does not have " +
                              std::to_string(d.bits) + " bits");
      }
      d.probs[it.key()] = it.value().get<double>();
    }
    return d;
  });
}

Json to_json(const MappedResult& mapped) {
  Json history = Json::array();
  for (const auto& e : mapped.history) {
    history.push_back({{"event", e.kind == PlacementEvent::Kind::place ? "place" : "retire"},
                       {"position", e.position},
                       {"logical", e.logical},
                       {"physical", e.physical}});
  }
  return {{"physical_circuit", emit_qasm(mapped.physical)},
          {"placement_history", history},
          {"swaps", mapped.swaps},
          {"depth", mapped.depth},
          {"duration_dt", mapped.duration},
          {"esp", mapped.esp},
          {"physical_qubits_used", mapped.physical_qubits_used}};
}

Json transform_report(const Circuit& original, const TransformResult& result,
                      const MappedResult* mapped) {
  Json j = {{"name", original.name},
            {"original_qubits", original.num_qubits},
            {"qubits", result.qubits},
            {"depth", result.depth},
            {"duration_dt", result.duration},
            {"pairs", pairs_json(result.pairs)},
            {"wiremap", to_json(result.wiremap)}};
  if (mapped) j["mapping"] = to_json(*mapped);
  return j;
}

Json mapping_report(const Circuit& original, const std::vector<ReusePair>& pairs,
                    const MappedResult& mapped) {
  return {{"name", original.name},
          {"original_qubits", original.num_qubits},
          {"pairs", pairs_json(pairs)},
          {"mapping", to_json(mapped)}};
}

}  // namespace caqr
