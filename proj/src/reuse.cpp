#include "caqr/reuse.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "caqr/error.hpp"

namespace caqr {

WireMap WireMap::identity(const Circuit& circuit) {
  WireMap m;
  m.num_wires = circuit.num_qubits;
  m.wire.resize(static_cast<std::size_t>(circuit.num_qubits));
  m.epoch.assign(static_cast<std::size_t>(circuit.num_qubits), 0);
  m.clbit.assign(static_cast<std::size_t>(circuit.num_qubits), -1);
  for (int q = 0; q < circuit.num_qubits; ++q) m.wire[q] = q;
  const auto per_qubit = instructions_per_qubit(circuit);
  for (int q = 0; q < circuit.num_qubits; ++q) {
    if (!per_qubit[q].empty()) {
      const auto& last = circuit.instructions[per_qubit[q].back()];
      if (last.kind == GateKind::MEASURE) m.clbit[q] = last.clbits[0];
    }
  }
  m.scratch = circuit.scratch_clbits;
  return m;
}

bool check_condition1(const Circuit& circuit, int producer, int consumer) {
  if (producer == consumer) return false;
  return std::none_of(circuit.instructions.begin(), circuit.instructions.end(),
                      [&](const Instruction& inst) {
                        return inst.touches_qubit(producer) &&
                               inst.touches_qubit(consumer);
                      });
}

int insert_reuse_node(DependencyDag& dag, ReusePair pair, double weight) {
  auto into_producer = dag.dummy_into(pair.producer);
  auto out_of_consumer = dag.dummy_out_of(pair.consumer);
  int d = dag.add_dummy({pair.producer, pair.consumer}, weight);
  for (int n : dag.nodes_on_qubit(pair.producer)) dag.add_edge(n, d);
  if (into_producer) dag.add_edge(*into_producer, d);
  for (int n : dag.nodes_on_qubit(pair.consumer)) dag.add_edge(d, n);
  if (out_of_consumer) dag.add_edge(d, *out_of_consumer);
  return d;
}

namespace {

bool endpoints_free(const DependencyDag& dag, int producer, int consumer) {
  return !dag.dummy_out_of(producer) && !dag.dummy_into(consumer);
}

}  // namespace

bool check_condition2(DependencyDag& dag, int producer, int consumer) {
  if (producer == consumer || !endpoints_free(dag, producer, consumer)) {
    return false;
  }
  insert_reuse_node(dag, {producer, consumer}, 0.0);
  const bool acyclic = !detect_cycle(dag);
  dag.pop_node();
  return acyclic;
}

std::vector<ReusePair> enumerate_candidates(const Circuit& circuit,
                                            DependencyDag& dag) {
  const int n = circuit.num_qubits;
  std::vector<std::vector<bool>> interacts(static_cast<std::size_t>(n),
                                           std::vector<bool>(static_cast<std::size_t>(n)));
  for (const auto& inst : circuit.instructions) {
    if (inst.qubits.size() == 2) {
      interacts[inst.qubits[0]][inst.qubits[1]] = true;
      interacts[inst.qubits[1]][inst.qubits[0]] = true;
    }
  }
  std::vector<ReusePair> out;
  for (int p = 0; p < n; ++p) {
    if (dag.dummy_out_of(p)) continue;
    for (int c = 0; c < n; ++c) {
      if (c == p || interacts[p][c] || dag.dummy_into(c)) continue;
      if (check_condition2(dag, p, c)) out.push_back({p, c});
    }
  }
  return out;
}

void apply_reuse_pair_in_place(DependencyDag& dag, const Circuit& circuit,
                               ReusePair pair, double mr_duration) {
  if (pair.producer < 0 || pair.consumer < 0 ||
      pair.producer >= circuit.num_qubits || pair.consumer >= circuit.num_qubits) {
    throw InvalidArgument("reuse pair qubit out of range");
  }
  if (!check_condition1(circuit, pair.producer, pair.consumer) ||
      !check_condition2(dag, pair.producer, pair.consumer)) {
    throw InvalidArgument("invalid reuse pair q" + std::to_string(pair.producer) +
                          " -> q" + std::to_string(pair.consumer));
  }
  insert_reuse_node(dag, pair, mr_duration);
}

DependencyDag apply_reuse_pair(const DependencyDag& dag, const Circuit& circuit,
                               ReusePair pair, double mr_duration) {
  DependencyDag out = dag;
  apply_reuse_pair_in_place(out, circuit, pair, mr_duration);
  return out;
}

namespace {

void check_chain_shape(const Circuit& circuit, const std::vector<ReusePair>& pairs) {
  std::vector<int> next(static_cast<std::size_t>(circuit.num_qubits), -1);
  std::vector<int> prev(static_cast<std::size_t>(circuit.num_qubits), -1);
  for (const auto& p : pairs) {
    if (p.producer < 0 || p.consumer < 0 || p.producer >= circuit.num_qubits ||
        p.consumer >= circuit.num_qubits || p.producer == p.consumer) {
      throw InvalidArgument("malformed reuse pair");
    }
    if (next[p.producer] >= 0) {
      throw InvalidArgument("inconsistent reuse chain: q" +
                            std::to_string(p.producer) + " is retired twice");
    }
    if (prev[p.consumer] >= 0) {
      throw InvalidArgument("inconsistent reuse chain: q" +
                            std::to_string(p.consumer) + " inherits two wires");
    }
    next[p.producer] = p.consumer;
    prev[p.consumer] = p.producer;
  }
  // A chain without a head is a loop.
  std::vector<bool> seen(static_cast<std::size_t>(circuit.num_qubits), false);
  for (int q = 0; q < circuit.num_qubits; ++q) {
    if (prev[q] >= 0) continue;
    for (int x = q; x >= 0; x = next[x]) seen[x] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw InvalidArgument("inconsistent reuse chain: pairs form a loop");
  }
}

}  // namespace

MaterializedCircuit materialize(const Circuit& circuit,
                                const std::vector<ReusePair>& pairs) {
  check_chain_shape(circuit, pairs);
  const int n = circuit.num_qubits;
  DependencyDag dag = build_dag(circuit);
  for (const auto& p : pairs) apply_reuse_pair_in_place(dag, circuit, p, 1.0);

  WireMap map = WireMap::identity(circuit);
  map.pairs = pairs;
  std::vector<int> next(static_cast<std::size_t>(n), -1);
  std::vector<bool> has_prev(static_cast<std::size_t>(n), false);
  for (const auto& p : pairs) {
    next[p.producer] = p.consumer;
    has_prev[p.consumer] = true;
  }
  int wires = 0;
  for (int q = 0; q < n; ++q) {
    if (has_prev[q]) continue;
    int epoch = 0;
    for (int x = q; x >= 0; x = next[x]) {
      map.wire[x] = wires;
      map.epoch[x] = epoch++;
    }
    ++wires;
  }
  map.num_wires = wires;

  // Boundary clbit per producer; absorbed final measurements are skipped.
  const auto per_qubit = instructions_per_qubit(circuit);
  std::vector<bool> skip(circuit.instructions.size(), false);
  std::map<int, int> boundary_clbit;
  int num_clbits = circuit.num_clbits;
  for (const auto& p : pairs) {
    const auto& on = per_qubit[p.producer];
    if (!on.empty() && circuit.instructions[on.back()].kind == GateKind::MEASURE) {
      skip[on.back()] = true;
      boundary_clbit[p.producer] = circuit.instructions[on.back()].clbits[0];
    } else {
      boundary_clbit[p.producer] = num_clbits;
      map.scratch.push_back(num_clbits);
      ++num_clbits;
    }
    map.clbit[p.producer] = boundary_clbit[p.producer];
  }

  // Kahn order preferring program order; a dummy sorts right after the latest
  // of its predecessors.
  std::vector<double> key(static_cast<std::size_t>(dag.size()), 0.0);
  std::vector<int> indeg(static_cast<std::size_t>(dag.size()));
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> ready;
  auto node_key = [&](int v) {
    if (!dag.node(v).dummy) return static_cast<double>(dag.node(v).instruction);
    double k = -1.0;
    for (int p : dag.predecessors(v)) k = std::max(k, key[p]);
    return k + 0.5;
  };
  for (int v = 0; v < dag.size(); ++v) {
    indeg[v] = static_cast<int>(dag.predecessors(v).size());
    if (indeg[v] == 0) {
      key[v] = node_key(v);
      ready.emplace(key[v], v);
    }
  }

  Circuit out(wires, num_clbits, circuit.name);
  out.scratch_clbits = map.scratch;
  while (!ready.empty()) {
    int v = ready.top().second;
    ready.pop();
    const auto& node = dag.node(v);
    if (node.dummy) {
      int w = map.wire[node.dummy->producer];
      int k = boundary_clbit.at(node.dummy->producer);
      out.append(GateKind::MEASURE, {w}, {k});
      out.append(GateKind::CX_CLASSICAL, {w}, {k});
    } else if (!skip[node.instruction]) {
      const auto& inst = circuit.instructions[node.instruction];
      std::vector<int> qs;
      for (int q : inst.qubits) qs.push_back(map.wire[q]);
      out.append(inst.kind, std::move(qs), inst.clbits, inst.theta,
                 inst.commuting_group);
    }
    for (int s : dag.successors(v)) {
      if (--indeg[s] == 0) {
        key[s] = node_key(s);
        ready.emplace(key[s], s);
      }
    }
  }
  if (static_cast<int>(out.instructions.size()) <
      static_cast<int>(circuit.instructions.size() - std::count(skip.begin(), skip.end(), true))) {
    throw CycleError("reuse pairs leave a dependency cycle");
  }
  return {std::move(out), std::move(map)};
}

}  // namespace caqr
