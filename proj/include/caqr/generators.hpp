#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "caqr/circuit.hpp"

namespace caqr {

enum class GraphKind { Random, PowerLaw };

std::string to_string(GraphKind kind);
GraphKind graph_kind_from_string(const std::string& s);

/// Undirected simple graph used as a max-cut problem instance.
struct ProblemGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // u < v, sorted
  GraphKind kind = GraphKind::Random;
  double density = 0.0;
  std::uint64_t seed = 0;

  std::vector<int> degrees() const;
};

/// Number of edges a graph of `n` vertices has at `density`.
int target_edge_count(int n, double density);

/// Bernstein-Vazirani over n-1 data qubits and one ancilla (the last qubit).
/// `secret[i]` is the hidden bit of data qubit i; data qubit i is measured
/// into clbit i.
Circuit gen_bv(int n, const std::string& secret);

/// Counterfeit-coin circuit over n-1 coin qubits and one ancilla: a parity
/// query, a mid-circuit measure + conditional-X reset of the ancilla, then a
/// phase oracle marking coin `counterfeit` and a final H + measure of the
/// coins.
Circuit gen_cc(int n, int counterfeit);

/// XOR of n input bits (prepared from `inputs`) into one extra target qubit.
/// All n+1 qubits are measured.
Circuit gen_xor(int n, const std::string& inputs);

ProblemGraph gen_problem_graph(int n, double density, GraphKind kind,
                               std::uint64_t seed);

/// Graph from an explicit edge list (used for hand-made instances).
ProblemGraph make_problem_graph(int n, std::vector<std::pair<int, int>> edges);

/// One fixed-parameter QAOA max-cut layer: H on all qubits, one CP(2*gamma)
/// per edge (all in commuting group 0), RX(2*beta) on all, measure all.
Circuit gen_qaoa_maxcut(const ProblemGraph& graph, double gamma = 0.4,
                        double beta = 0.3);

/// Random circuit over the unitary gate set followed by a final measurement of
/// every qubit whose bit in `measure_mask` is set (all qubits by default).
Circuit gen_random_circuit(int num_qubits, int num_gates, std::uint64_t seed,
                           double two_qubit_fraction = 0.4,
                           std::uint64_t measure_mask = ~std::uint64_t{0});

}  // namespace caqr
