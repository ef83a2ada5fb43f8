#pragma once

#include <algorithm>
#include <vector>

#include "caqr/circuit.hpp"
#include "caqr/generators.hpp"
#include "caqr/random.hpp"

namespace fixtures {

using caqr::Circuit;
using caqr::GateKind;

// Two layers over four qubits: CX(q0,q1) | H(q3), then CX(q0,q2) | X(q3).
// Reusing q1 for q2 gives depth 3, reusing q3 for q2 gives depth 4.
inline Circuit strategy_circuit() {
  Circuit c(4, 0, "strategy");
  c.append(GateKind::CX, {0, 1});
  c.append(GateKind::H, {3});
  c.append(GateKind::CX, {0, 2});
  c.append(GateKind::X, {3});
  return c;
}

// g(q4,q2), g(q2,q3), g(q3,q1): q1's last gate depends on q4's first, so
// reusing q1 for q4 is impossible although the two never interact.
inline Circuit indirect_dependency_circuit() {
  Circuit c(5, 5, "indirect");
  c.append(GateKind::CX, {4, 2});
  c.append(GateKind::CX, {2, 3});
  c.append(GateKind::CX, {3, 1});
  for (int q = 1; q < 5; ++q) c.append(GateKind::MEASURE, {q}, {q});
  return c;
}

// Five-vertex max-cut instance whose interaction graph needs three colors.
inline caqr::ProblemGraph five_vertex_graph() {
  return caqr::make_problem_graph(5, {{0, 1}, {1, 3}, {1, 2}, {3, 4}, {2, 3}});
}

// Random circuit with a random subset of qubits measured at the end.
inline Circuit random_small_circuit(int n, std::uint64_t seed) {
  caqr::Rng rng(seed * 7919 + 13);
  int gates = n + rng.below(3 * n);
  std::uint64_t mask = rng.below(std::uint64_t{1} << n);
  return caqr::gen_random_circuit(n, gates, seed, 0.35, mask);
}

// Independent depth oracle: the level of an instruction is one more than the
// highest level among all earlier instructions sharing a qubit or clbit with
// it. A conditional X right after a measurement into the same bit on the same
// qubit completes a reset and adds no level.
inline int layer_count(const Circuit& c) {
  const auto n = c.instructions.size();
  std::vector<int> level(n, 0);
  int depth = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = c.instructions[i];
    int base = 0;
    int prev_on_qubit = -1;
    for (std::size_t j = 0; j < i; ++j) {
      const auto& b = c.instructions[j];
      bool shares_q = std::any_of(a.qubits.begin(), a.qubits.end(),
                                  [&](int q) { return b.touches_qubit(q); });
      bool shares_c = std::any_of(a.clbits.begin(), a.clbits.end(), [&](int k) {
        return std::find(b.clbits.begin(), b.clbits.end(), k) != b.clbits.end();
      });
      if (shares_q || shares_c) base = std::max(base, level[j]);
      if (a.qubits.size() == 1 && b.touches_qubit(a.qubits[0])) prev_on_qubit = static_cast<int>(j);
    }
    bool tail = a.kind == GateKind::CX_CLASSICAL && prev_on_qubit >= 0 &&
                c.instructions[prev_on_qubit].kind == GateKind::MEASURE &&
                c.instructions[prev_on_qubit].clbits == a.clbits;
    level[i] = base + (tail ? 0 : 1);
    depth = std::max(depth, level[i]);
  }
  return depth;
}

}  // namespace fixtures
