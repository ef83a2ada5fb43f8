#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "caqr/circuit.hpp"
#include "caqr/timing.hpp"

namespace caqr {

/// Measure-and-reset placeholder between the gates of `producer` and the gates
/// of `consumer` (original logical qubits).
struct DummyMR {
  int producer = -1;
  int consumer = -1;
};

/// Gate-dependency graph. Node i < instruction count is instruction i of the
/// source circuit; nodes past that are DummyMR nodes added by qubit reuse.
/// Weights live on nodes.
class DependencyDag {
 public:
  struct Node {
    int instruction = -1;
    std::optional<DummyMR> dummy;
    double weight = 1.0;
  };

  DependencyDag() = default;
  explicit DependencyDag(int num_qubits);

  int size() const { return static_cast<int>(nodes_.size()); }
  int num_qubits() const { return static_cast<int>(qubit_nodes_.size()); }
  int num_instruction_nodes() const { return num_instruction_nodes_; }
  const Node& node(int n) const { return nodes_[n]; }
  const std::vector<int>& successors(int n) const { return succ_[n]; }
  const std::vector<int>& predecessors(int n) const { return pred_[n]; }
  std::size_t edge_count() const;

  /// Instruction nodes acting on logical qubit q, in program order.
  const std::vector<int>& nodes_on_qubit(int q) const { return qubit_nodes_[q]; }

  /// The dummy whose consumer is q (q's wire was inherited), if any.
  std::optional<int> dummy_into(int q) const;
  /// The dummy whose producer is q (q's wire was handed on), if any.
  std::optional<int> dummy_out_of(int q) const;
  std::vector<DummyMR> dummies() const;

  int add_instruction_node(int instruction, double weight,
                           const std::vector<int>& qubits);
  int add_dummy(DummyMR dummy, double weight);
  void add_edge(int from, int to);
  /// Removes the most recently added node and all of its edges.
  void pop_node();

  std::vector<double> weights() const;
  void set_weight(int n, double w) { nodes_[n].weight = w; }

 private:
  std::vector<Node> nodes_;
  std::vector<std::vector<int>> succ_;
  std::vector<std::vector<int>> pred_;
  std::vector<std::vector<int>> qubit_nodes_;
  std::vector<int> dummy_into_;
  std::vector<int> dummy_out_;
  int num_instruction_nodes_ = 0;
};

/// Builds the dependency DAG: each instruction depends on the previous
/// instruction on every shared qubit and clbit. Members of the same commuting
/// group get no mutual edges; they depend on whatever preceded the group on
/// their qubits and everything after the group depends on all of them.
DependencyDag build_dag(const Circuit& circuit,
                        const DurationModel& durations = DurationModel::unit());

/// Node weights for `circuit` under `durations`; dummies weigh `durations.reset`.
std::vector<double> node_weights(const DependencyDag& dag, const Circuit& circuit,
                                 const DurationModel& durations);

bool detect_cycle(const DependencyDag& dag);

/// Heaviest path, summing node weights. Throws CycleError on a cyclic graph.
double critical_path_length(const DependencyDag& dag);
double critical_path_length(const DependencyDag& dag,
                            std::span<const double> weights);

/// Longest weighted path ending at each node (inclusive) and starting at each
/// node (inclusive). Throws CycleError on a cyclic graph.
std::vector<double> longest_path_to(const DependencyDag& dag,
                                    std::span<const double> weights);
std::vector<double> longest_path_from(const DependencyDag& dag,
                                      std::span<const double> weights);

/// Kahn order; empty optional when the graph has a cycle.
std::optional<std::vector<int>> topological_order(const DependencyDag& dag);

std::string to_dot(const DependencyDag& dag, const Circuit& circuit);

}  // namespace caqr
