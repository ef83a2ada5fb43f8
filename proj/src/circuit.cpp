#include "caqr/circuit.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "caqr/error.hpp"

namespace caqr {

namespace {

struct KindInfo {
  GateKind kind;
  std::string_view name;
  int qubits;
  int clbits;
  bool parametric;
};

constexpr std::array<KindInfo, 14> kKinds{{
    {GateKind::H, "h", 1, 0, false},
    {GateKind::X, "x", 1, 0, false},
    {GateKind::Z, "z", 1, 0, false},
    {GateKind::SX, "sx", 1, 0, false},
    {GateKind::T, "t", 1, 0, false},
    {GateKind::RZ, "rz", 1, 0, true},
    {GateKind::RX, "rx", 1, 0, true},
    {GateKind::CX, "cx", 2, 0, false},
    {GateKind::CZ, "cz", 2, 0, false},
    {GateKind::CP, "cp", 2, 0, true},
    {GateKind::SWAP, "swap", 2, 0, false},
    {GateKind::MEASURE, "measure", 1, 1, false},
    {GateKind::RESET, "reset", 1, 0, false},
    {GateKind::CX_CLASSICAL, "c_x", 1, 1, false},
}};

const KindInfo& info(GateKind kind) {
  return kKinds[static_cast<std::size_t>(kind)];
}

}  // namespace

std::string_view gate_name(GateKind kind) { return info(kind).name; }

std::optional<GateKind> gate_from_name(std::string_view name) {
  for (const auto& k : kKinds) {
    if (k.name == name && k.kind != GateKind::CX_CLASSICAL) return k.kind;
  }
  return std::nullopt;
}

int qubit_arity(GateKind kind) { return info(kind).qubits; }
int clbit_arity(GateKind kind) { return info(kind).clbits; }
bool is_parametric(GateKind kind) { return info(kind).parametric; }
bool is_two_qubit(GateKind kind) { return info(kind).qubits == 2; }

bool is_single_qubit_gate(GateKind kind) {
  return static_cast<int>(kind) <= static_cast<int>(GateKind::RX);
}

bool is_diagonal_two_qubit(GateKind kind) {
  return kind == GateKind::CZ || kind == GateKind::CP;
}

bool Instruction::touches_qubit(int q) const {
  return std::find(qubits.begin(), qubits.end(), q) != qubits.end();
}

Instruction& Circuit::append(GateKind kind, std::vector<int> qubits,
                             std::vector<int> clbits, double theta,
                             std::optional<int> group) {
  Instruction inst;
  inst.id = next_id();
  inst.kind = kind;
  inst.qubits = std::move(qubits);
  inst.clbits = std::move(clbits);
  inst.theta = theta;
  inst.commuting_group = group;
  instructions.push_back(std::move(inst));
  return instructions.back();
}

int Circuit::next_id() const {
  int next = 0;
  for (const auto& inst : instructions) next = std::max(next, inst.id + 1);
  return next;
}

bool Circuit::has_commuting_group() const {
  return std::any_of(instructions.begin(), instructions.end(),
                     [](const Instruction& i) {
                       return i.commuting_group.has_value();
                     });
}

bool Circuit::is_scratch(int clbit) const {
  return std::find(scratch_clbits.begin(), scratch_clbits.end(), clbit) !=
         scratch_clbits.end();
}

void Circuit::validate() const {
  auto fail = [&](const Instruction& inst, const std::string& what) {
    throw InvalidArgument("instruction " + std::to_string(inst.id) + " (" +
                          std::string(gate_name(inst.kind)) + "): " + what);
  };
  if (num_qubits < 0 || num_clbits < 0) {
    throw InvalidArgument("negative register size");
  }
  std::set<int> ids;
  std::vector<bool> measured(static_cast<std::size_t>(num_qubits), false);
  for (const auto& inst : instructions) {
    if (!ids.insert(inst.id).second) fail(inst, "duplicate id");
    if (static_cast<int>(inst.qubits.size()) != qubit_arity(inst.kind)) {
      fail(inst, "wrong number of qubit operands");
    }
    if (static_cast<int>(inst.clbits.size()) != clbit_arity(inst.kind)) {
      fail(inst, "wrong number of clbit operands");
    }
    for (int q : inst.qubits) {
      if (q < 0 || q >= num_qubits) fail(inst, "qubit index out of range");
    }
    for (int c : inst.clbits) {
      if (c < 0 || c >= num_clbits) fail(inst, "clbit index out of range");
    }
    if (inst.qubits.size() == 2 && inst.qubits[0] == inst.qubits[1]) {
      fail(inst, "identical qubit operands");
    }
    if (inst.commuting_group && !is_diagonal_two_qubit(inst.kind)) {
      fail(inst, "commuting groups may only hold CZ/CP gates");
    }
    switch (inst.kind) {
      case GateKind::MEASURE:
        measured[inst.qubits[0]] = true;
        break;
      case GateKind::RESET:
      case GateKind::CX_CLASSICAL:
        measured[inst.qubits[0]] = false;
        break;
      default:
        for (int q : inst.qubits) {
          if (measured[q]) fail(inst, "gate on a measured qubit before reset");
        }
    }
  }
  for (int c : scratch_clbits) {
    if (c < 0 || c >= num_clbits) {
      throw InvalidArgument("scratch clbit out of range");
    }
  }
}

bool structurally_equal(const Circuit& a, const Circuit& b) {
  if (a.num_qubits != b.num_qubits || a.num_clbits != b.num_clbits ||
      a.instructions.size() != b.instructions.size()) {
    return false;
  }
  auto sa = a.scratch_clbits;
  auto sb = b.scratch_clbits;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return false;
  for (std::size_t i = 0; i < a.instructions.size(); ++i) {
    const auto& x = a.instructions[i];
    const auto& y = b.instructions[i];
    if (x.kind != y.kind || x.qubits != y.qubits || x.clbits != y.clbits ||
        x.theta != y.theta ||
        x.commuting_group.has_value() != y.commuting_group.has_value()) {
      return false;
    }
  }
  // Group ids only need to partition the instructions the same way.
  for (std::size_t i = 0; i < a.instructions.size(); ++i) {
    for (std::size_t j = i + 1; j < a.instructions.size(); ++j) {
      const auto& gi = a.instructions[i].commuting_group;
      const auto& gj = a.instructions[j].commuting_group;
      const auto& hi = b.instructions[i].commuting_group;
      const auto& hj = b.instructions[j].commuting_group;
      if (gi && gj && ((*gi == *gj) != (*hi == *hj))) return false;
    }
  }
  return true;
}

std::vector<std::vector<int>> instructions_per_qubit(const Circuit& circuit) {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(circuit.num_qubits));
  for (std::size_t i = 0; i < circuit.instructions.size(); ++i) {
    for (int q : circuit.instructions[i].qubits) {
      out[q].push_back(static_cast<int>(i));
    }
  }
  return out;
}

std::vector<bool> reset_pair_tail_mask(const Circuit& circuit) {
  std::vector<bool> mask(circuit.instructions.size(), false);
  std::vector<int> last(static_cast<std::size_t>(circuit.num_qubits), -1);
  for (std::size_t i = 0; i < circuit.instructions.size(); ++i) {
    const auto& inst = circuit.instructions[i];
    if (inst.kind == GateKind::CX_CLASSICAL) {
      int prev = last[inst.qubits[0]];
      if (prev >= 0) {
        const auto& p = circuit.instructions[prev];
        mask[i] = p.kind == GateKind::MEASURE && p.clbits[0] == inst.clbits[0];
      }
    }
    for (int q : inst.qubits) last[q] = static_cast<int>(i);
  }
  return mask;
}

std::vector<int> output_clbits(const Circuit& circuit) {
  std::set<int> bits;
  for (const auto& inst : circuit.instructions) {
    if (inst.kind == GateKind::MEASURE && !circuit.is_scratch(inst.clbits[0])) {
      bits.insert(inst.clbits[0]);
    }
  }
  return {bits.begin(), bits.end()};
}

int active_qubit_count(const Circuit& circuit) {
  std::set<int> used;
  for (const auto& inst : circuit.instructions) {
    used.insert(inst.qubits.begin(), inst.qubits.end());
  }
  return static_cast<int>(used.size());
}

}  // namespace caqr
