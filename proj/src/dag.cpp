#include "caqr/dag.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "caqr/error.hpp"

namespace caqr {

double instruction_weight(const Instruction& inst, bool reset_tail,
                          const DurationModel& model) {
  switch (inst.kind) {
    case GateKind::MEASURE:
    case GateKind::RESET:
      return model.reset;
    case GateKind::CX_CLASSICAL:
      return reset_tail ? 0.0 : model.single_qubit;
    case GateKind::SWAP:
      return model.swap_factor * model.two_qubit;
    default:
      return is_two_qubit(inst.kind) ? model.two_qubit : model.single_qubit;
  }
}

DependencyDag::DependencyDag(int num_qubits)
    : qubit_nodes_(static_cast<std::size_t>(num_qubits)),
      dummy_into_(static_cast<std::size_t>(num_qubits), -1),
      dummy_out_(static_cast<std::size_t>(num_qubits), -1) {}

std::size_t DependencyDag::edge_count() const {
  std::size_t e = 0;
  for (const auto& s : succ_) e += s.size();
  return e;
}

std::optional<int> DependencyDag::dummy_into(int q) const {
  if (dummy_into_[q] < 0) return std::nullopt;
  return dummy_into_[q];
}

std::optional<int> DependencyDag::dummy_out_of(int q) const {
  if (dummy_out_[q] < 0) return std::nullopt;
  return dummy_out_[q];
}

std::vector<DummyMR> DependencyDag::dummies() const {
  std::vector<DummyMR> out;
  for (const auto& n : nodes_) {
    if (n.dummy) out.push_back(*n.dummy);
  }
  return out;
}

int DependencyDag::add_instruction_node(int instruction, double weight,
                                        const std::vector<int>& qubits) {
  int id = size();
  nodes_.push_back(Node{instruction, std::nullopt, weight});
  succ_.emplace_back();
  pred_.emplace_back();
  for (int q : qubits) qubit_nodes_[q].push_back(id);
  ++num_instruction_nodes_;
  return id;
}

int DependencyDag::add_dummy(DummyMR dummy, double weight) {
  if (dummy_out_[dummy.producer] >= 0 || dummy_into_[dummy.consumer] >= 0) {
    throw InvalidArgument("qubit already has a reuse dummy in that direction");
  }
  int id = size();
  nodes_.push_back(Node{-1, dummy, weight});
  succ_.emplace_back();
  pred_.emplace_back();
  dummy_out_[dummy.producer] = id;
  dummy_into_[dummy.consumer] = id;
  return id;
}

void DependencyDag::add_edge(int from, int to) {
  succ_[from].push_back(to);
  pred_[to].push_back(from);
}

void DependencyDag::pop_node() {
  int id = size() - 1;
  for (int p : pred_[id]) {
    auto& s = succ_[p];
    s.erase(std::find(s.rbegin(), s.rend(), id).base() - 1);
  }
  for (int s : succ_[id]) {
    auto& p = pred_[s];
    p.erase(std::find(p.rbegin(), p.rend(), id).base() - 1);
  }
  const Node& n = nodes_.back();
  if (n.dummy) {
    dummy_out_[n.dummy->producer] = -1;
    dummy_into_[n.dummy->consumer] = -1;
  } else {
    for (auto& list : qubit_nodes_) {
      if (!list.empty() && list.back() == id) list.pop_back();
    }
    --num_instruction_nodes_;
  }
  nodes_.pop_back();
  succ_.pop_back();
  pred_.pop_back();
}

std::vector<double> DependencyDag::weights() const {
  std::vector<double> w;
  w.reserve(nodes_.size());
  for (const auto& n : nodes_) w.push_back(n.weight);
  return w;
}

DependencyDag build_dag(const Circuit& circuit, const DurationModel& durations) {
  DependencyDag dag(circuit.num_qubits);
  const auto weights_mask = reset_pair_tail_mask(circuit);

  struct QubitState {
    std::vector<int> last;  // nodes the next plain instruction depends on
    std::vector<int> base;  // nodes the current group's members depend on
    std::optional<int> group;
  };
  std::vector<QubitState> qs(static_cast<std::size_t>(circuit.num_qubits));
  std::vector<int> clbit_last(static_cast<std::size_t>(circuit.num_clbits), -1);

  for (std::size_t i = 0; i < circuit.instructions.size(); ++i) {
    const auto& inst = circuit.instructions[i];
    int node = dag.add_instruction_node(
        static_cast<int>(i), instruction_weight(inst, weights_mask[i], durations),
        inst.qubits);
    std::vector<int> preds;
    for (int q : inst.qubits) {
      auto& st = qs[q];
      if (inst.commuting_group) {
        if (st.group != inst.commuting_group) {
          st.base = st.last;
          st.last.clear();
          st.group = inst.commuting_group;
        }
        preds.insert(preds.end(), st.base.begin(), st.base.end());
        st.last.push_back(node);
      } else {
        preds.insert(preds.end(), st.last.begin(), st.last.end());
        st.last = {node};
        st.base.clear();
        st.group.reset();
      }
    }
    for (int c : inst.clbits) {
      if (clbit_last[c] >= 0) preds.push_back(clbit_last[c]);
      clbit_last[c] = node;
    }
    std::sort(preds.begin(), preds.end());
    preds.erase(std::unique(preds.begin(), preds.end()), preds.end());
    for (int p : preds) dag.add_edge(p, node);
  }
  return dag;
}

std::vector<double> node_weights(const DependencyDag& dag, const Circuit& circuit,
                                 const DurationModel& durations) {
  const auto mask = reset_pair_tail_mask(circuit);
  std::vector<double> w(static_cast<std::size_t>(dag.size()));
  for (int n = 0; n < dag.size(); ++n) {
    const auto& node = dag.node(n);
    w[n] = node.dummy ? durations.reset
                      : instruction_weight(circuit.instructions[node.instruction],
                                           mask[node.instruction], durations);
  }
  return w;
}

std::optional<std::vector<int>> topological_order(const DependencyDag& dag) {
  std::vector<int> indeg(static_cast<std::size_t>(dag.size()));
  for (int n = 0; n < dag.size(); ++n) {
    indeg[n] = static_cast<int>(dag.predecessors(n).size());
  }
  std::vector<int> order;
  order.reserve(indeg.size());
  for (int n = 0; n < dag.size(); ++n) {
    if (indeg[n] == 0) order.push_back(n);
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (int s : dag.successors(order[head])) {
      if (--indeg[s] == 0) order.push_back(s);
    }
  }
  if (static_cast<int>(order.size()) != dag.size()) return std::nullopt;
  return order;
}

bool detect_cycle(const DependencyDag& dag) {
  return !topological_order(dag).has_value();
}

std::vector<double> longest_path_to(const DependencyDag& dag,
                                    std::span<const double> weights) {
  auto order = topological_order(dag);
  if (!order) throw CycleError("dependency graph has a cycle");
  std::vector<double> finish(static_cast<std::size_t>(dag.size()), 0.0);
  for (int n : *order) {
    double start = 0.0;
    for (int p : dag.predecessors(n)) start = std::max(start, finish[p]);
    finish[n] = start + weights[n];
  }
  return finish;
}

std::vector<double> longest_path_from(const DependencyDag& dag,
                                      std::span<const double> weights) {
  auto order = topological_order(dag);
  if (!order) throw CycleError("dependency graph has a cycle");
  std::vector<double> tail(static_cast<std::size_t>(dag.size()), 0.0);
  for (auto it = order->rbegin(); it != order->rend(); ++it) {
    double rest = 0.0;
    for (int s : dag.successors(*it)) rest = std::max(rest, tail[s]);
    tail[*it] = rest + weights[*it];
  }
  return tail;
}

double critical_path_length(const DependencyDag& dag,
                            std::span<const double> weights) {
  auto finish = longest_path_to(dag, weights);
  return finish.empty() ? 0.0 : *std::max_element(finish.begin(), finish.end());
}

double critical_path_length(const DependencyDag& dag) {
  auto w = dag.weights();
  return critical_path_length(dag, w);
}

std::string to_dot(const DependencyDag& dag, const Circuit& circuit) {
  std::ostringstream out;
  out << "digraph dag {\n";
  for (int n = 0; n < dag.size(); ++n) {
    const auto& node = dag.node(n);
    out << "  n" << n << " [label=\"";
    if (node.dummy) {
      out << "MR q" << node.dummy->producer << "->q" << node.dummy->consumer
          << "\", shape=box";
    } else {
      const auto& inst = circuit.instructions[node.instruction];
      out << gate_name(inst.kind);
      for (int q : inst.qubits) out << " q" << q;
      out << "\"";
    }
    out << "];\n";
  }
  for (int n = 0; n < dag.size(); ++n) {
    for (int s : dag.successors(n)) out << "  n" << n << " -> n" << s << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace caqr
