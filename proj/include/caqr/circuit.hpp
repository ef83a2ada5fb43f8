#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace caqr {

/// Closed gate set of the IR. CX_CLASSICAL is the classically controlled X
/// (`if (c[k]==1) x q[j];`) that, paired with a MEASURE, forms a reset.
enum class GateKind : std::uint8_t {
  H,
  X,
  Z,
  SX,
  T,
  RZ,
  RX,
  CX,
  CZ,
  CP,
  SWAP,
  MEASURE,
  RESET,
  CX_CLASSICAL,
};

std::string_view gate_name(GateKind kind);
std::optional<GateKind> gate_from_name(std::string_view name);

int qubit_arity(GateKind kind);
int clbit_arity(GateKind kind);
bool is_parametric(GateKind kind);
bool is_two_qubit(GateKind kind);
/// Unitary single-qubit gates (H .. RX).
bool is_single_qubit_gate(GateKind kind);
/// Diagonal two-qubit gates; the only kinds allowed in a commuting group.
bool is_diagonal_two_qubit(GateKind kind);

struct Instruction {
  int id = 0;
  GateKind kind = GateKind::H;
  std::vector<int> qubits;
  std::vector<int> clbits;
  double theta = 0.0;
  std::optional<int> commuting_group;

  bool touches_qubit(int q) const;
};

/// Ordered instruction list over logical qubits and classical bits.
///
/// Scratch clbits hold measurement results that exist only to reset a qubit;
/// they are excluded from the program's output distribution.
struct Circuit {
  std::string name;
  int num_qubits = 0;
  int num_clbits = 0;
  std::vector<Instruction> instructions;
  std::vector<int> scratch_clbits;

  Circuit() = default;
  Circuit(int qubits, int clbits, std::string label = {})
      : name(std::move(label)), num_qubits(qubits), num_clbits(clbits) {}

  /// Appends an instruction with the next free id and returns a reference to it.
  Instruction& append(GateKind kind, std::vector<int> qubits,
                      std::vector<int> clbits = {}, double theta = 0.0,
                      std::optional<int> group = std::nullopt);

  int next_id() const;
  bool has_commuting_group() const;
  bool is_scratch(int clbit) const;

  /// Throws InvalidArgument when an invariant of the IR is violated.
  void validate() const;
};

/// Equality of everything except instruction ids.
bool structurally_equal(const Circuit& a, const Circuit& b);

/// Indices of instructions that touch each qubit, in program order.
std::vector<std::vector<int>> instructions_per_qubit(const Circuit& circuit);

/// `paired[i]` is true when instruction i is a CX_CLASSICAL completing a
/// measure + conditional-X reset (the previous instruction on its qubit is a
/// MEASURE into the same clbit).
std::vector<bool> reset_pair_tail_mask(const Circuit& circuit);

/// Clbits written by a MEASURE and not flagged scratch, ascending.
std::vector<int> output_clbits(const Circuit& circuit);

/// Number of distinct qubits touched by at least one instruction.
int active_qubit_count(const Circuit& circuit);

}  // namespace caqr
