#include "caqr/cost.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "caqr/error.hpp"
#include "caqr/random.hpp"

namespace caqr {

double Distribution::total() const {
  double s = 0.0;
  for (const auto& [k, p] : probs) s += p;
  return s;
}

namespace {

// ASAP finish times over qubit and clbit resources in list order.
template <typename WeightFn>
double asap_length(const Circuit& circuit, WeightFn weight) {
  std::vector<double> qready(static_cast<std::size_t>(circuit.num_qubits), 0.0);
  std::vector<double> cready(static_cast<std::size_t>(circuit.num_clbits), 0.0);
  const auto tail = reset_pair_tail_mask(circuit);
  double end = 0.0;
  for (std::size_t i = 0; i < circuit.instructions.size(); ++i) {
    const auto& inst = circuit.instructions[i];
    double start = 0.0;
    for (int q : inst.qubits) start = std::max(start, qready[q]);
    for (int c : inst.clbits) start = std::max(start, cready[c]);
    double finish = start + weight(inst, tail[i]);
    for (int q : inst.qubits) qready[q] = finish;
    for (int c : inst.clbits) cready[c] = finish;
    end = std::max(end, finish);
  }
  return end;
}

}  // namespace

int circuit_depth(const Circuit& circuit) {
  return static_cast<int>(asap_length(circuit, [](const Instruction& inst, bool tail) {
    return inst.kind == GateKind::CX_CLASSICAL && tail ? 0.0 : 1.0;
  }));
}

double circuit_duration(const Circuit& circuit, const DurationModel& model) {
  return asap_length(circuit, [&](const Instruction& inst, bool tail) {
    return instruction_weight(inst, tail, model);
  });
}

double circuit_duration(const Circuit& circuit, const Calibration& calibration) {
  return asap_length(circuit, [&](const Instruction& inst, bool tail) {
    switch (inst.kind) {
      case GateKind::MEASURE:
      case GateKind::RESET:
        return calibration.mr_duration;
      case GateKind::CX_CLASSICAL:
        return tail ? 0.0 : calibration.sq_duration;
      case GateKind::SWAP:
        return 3.0 * calibration.cx_duration_on(inst.qubits[0], inst.qubits[1]);
      default:
        if (is_two_qubit(inst.kind)) {
          return calibration.cx_duration_on(inst.qubits[0], inst.qubits[1]);
        }
        return calibration.sq_duration;
    }
  });
}

double estimated_success_probability(const Circuit& circuit,
                                     const Calibration& calibration) {
  double esp = 1.0;
  for (const auto& inst : circuit.instructions) {
    if (inst.kind == GateKind::MEASURE) {
      esp *= 1.0 - calibration.readout(inst.qubits[0]);
    } else if (inst.kind == GateKind::SWAP) {
      esp *= std::pow(1.0 - calibration.cx_error_on(inst.qubits[0], inst.qubits[1]), 3);
    } else if (is_two_qubit(inst.kind)) {
      esp *= 1.0 - calibration.cx_error_on(inst.qubits[0], inst.qubits[1]);
    }
  }
  return esp;
}

int count_swaps(const Circuit& circuit) {
  return static_cast<int>(std::count_if(
      circuit.instructions.begin(), circuit.instructions.end(),
      [](const Instruction& i) { return i.kind == GateKind::SWAP; }));
}

namespace {

using Amp = std::complex<double>;
using Mat2 = std::array<Amp, 4>;

struct Branch {
  std::vector<Amp> amp;
  std::vector<std::int8_t> bits;
};

void apply_1q(std::vector<Amp>& a, int w, const Mat2& m) {
  const std::size_t bit = std::size_t{1} << w;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i & bit) continue;
    Amp x = a[i];
    Amp y = a[i | bit];
    a[i] = m[0] * x + m[1] * y;
    a[i | bit] = m[2] * x + m[3] * y;
  }
}

Mat2 single_qubit_matrix(GateKind kind, double theta) {
  using std::numbers::pi;
  const double r = 1.0 / std::numbers::sqrt2;
  const Amp i{0.0, 1.0};
  switch (kind) {
    case GateKind::H:
      return {r, r, r, -r};
    case GateKind::X:
      return {0.0, 1.0, 1.0, 0.0};
    case GateKind::Z:
      return {1.0, 0.0, 0.0, -1.0};
    case GateKind::SX:
      return {Amp{0.5, 0.5}, Amp{0.5, -0.5}, Amp{0.5, -0.5}, Amp{0.5, 0.5}};
    case GateKind::T:
      return {1.0, 0.0, 0.0, std::polar(1.0, pi / 4)};
    case GateKind::RZ:
      return {std::polar(1.0, -theta / 2), 0.0, 0.0, std::polar(1.0, theta / 2)};
    case GateKind::RX:
      return {std::cos(theta / 2), -i * std::sin(theta / 2), -i * std::sin(theta / 2),
              std::cos(theta / 2)};
    default:
      throw InvalidArgument("not a single-qubit gate");
  }
}

void apply_2q(std::vector<Amp>& a, GateKind kind, int w0, int w1, double theta) {
  const std::size_t b0 = std::size_t{1} << w0;
  const std::size_t b1 = std::size_t{1} << w1;
  const Amp phase = std::polar(1.0, theta);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool x0 = i & b0;
    const bool x1 = i & b1;
    switch (kind) {
      case GateKind::CX:
        if (x0 && !x1) std::swap(a[i], a[i | b1]);
        break;
      case GateKind::CZ:
        if (x0 && x1) a[i] = -a[i];
        break;
      case GateKind::CP:
        if (x0 && x1) a[i] *= phase;
        break;
      case GateKind::SWAP:
        if (x0 && !x1) std::swap(a[i], a[(i & ~b0) | b1]);
        break;
      default:
        throw InvalidArgument("not a two-qubit gate");
    }
  }
}

double norm2(const std::vector<Amp>& a) {
  double s = 0.0;
  for (const auto& x : a) s += std::norm(x);
  return s;
}

constexpr double kPrune = 1e-30;

// Splits every branch on the value of wire w. Returns branches with the wire
// projected onto each outcome; `record` receives the outcome.
template <typename Record>
std::vector<Branch> split(std::vector<Branch>& branches, int w, Record record) {
  const std::size_t bit = std::size_t{1} << w;
  std::vector<Branch> out;
  out.reserve(branches.size() * 2);
  for (auto& b : branches) {
    for (int outcome = 0; outcome < 2; ++outcome) {
      Branch nb{b.amp, b.bits};
      for (std::size_t i = 0; i < nb.amp.size(); ++i) {
        if (static_cast<bool>(i & bit) != static_cast<bool>(outcome)) nb.amp[i] = 0.0;
      }
      if (norm2(nb.amp) < kPrune) continue;
      record(nb, outcome);
      out.push_back(std::move(nb));
    }
  }
  return out;
}

}  // namespace

Distribution simulate_exact(const Circuit& circuit) {
  std::vector<int> wire(static_cast<std::size_t>(circuit.num_qubits), -1);
  int nw = 0;
  for (const auto& inst : circuit.instructions) {
    for (int q : inst.qubits) {
      if (wire[q] < 0) wire[q] = nw++;
    }
  }
  if (nw > kMaxSimulatedWires) {
    throw InvalidArgument("circuit uses " + std::to_string(nw) +
                          " wires; the simulator handles at most " +
                          std::to_string(kMaxSimulatedWires));
  }

  // A measurement is terminal when nothing later touches its qubit or clbit.
  const std::size_t n = circuit.instructions.size();
  std::vector<bool> terminal(n, false);
  {
    std::vector<bool> qlater(static_cast<std::size_t>(circuit.num_qubits), false);
    std::vector<bool> clater(static_cast<std::size_t>(circuit.num_clbits), false);
    for (std::size_t k = n; k-- > 0;) {
      const auto& inst = circuit.instructions[k];
      if (inst.kind == GateKind::MEASURE) {
        terminal[k] = !qlater[inst.qubits[0]] && !clater[inst.clbits[0]];
      }
      for (int q : inst.qubits) qlater[q] = true;
      for (int c : inst.clbits) clater[c] = true;
    }
  }

  std::vector<Branch> branches(1);
  branches[0].amp.assign(std::size_t{1} << nw, 0.0);
  branches[0].amp[0] = 1.0;
  branches[0].bits.assign(static_cast<std::size_t>(circuit.num_clbits), 0);
  std::vector<int> deferred(static_cast<std::size_t>(circuit.num_clbits), -1);

  for (std::size_t k = 0; k < n; ++k) {
    const auto& inst = circuit.instructions[k];
    switch (inst.kind) {
      case GateKind::MEASURE: {
        int c = inst.clbits[0];
        if (terminal[k]) {
          deferred[c] = wire[inst.qubits[0]];
        } else {
          deferred[c] = -1;
          branches = split(branches, wire[inst.qubits[0]],
                           [c](Branch& b, int v) { b.bits[c] = static_cast<std::int8_t>(v); });
        }
        break;
      }
      case GateKind::RESET: {
        int w = wire[inst.qubits[0]];
        branches = split(branches, w, [w](Branch& b, int v) {
          if (v) apply_1q(b.amp, w, single_qubit_matrix(GateKind::X, 0.0));
        });
        break;
      }
      case GateKind::CX_CLASSICAL: {
        int w = wire[inst.qubits[0]];
        int c = inst.clbits[0];
        for (auto& b : branches) {
          if (b.bits[c]) apply_1q(b.amp, w, single_qubit_matrix(GateKind::X, 0.0));
        }
        break;
      }
      default:
        if (is_two_qubit(inst.kind)) {
          for (auto& b : branches) {
            apply_2q(b.amp, inst.kind, wire[inst.qubits[0]], wire[inst.qubits[1]],
                     inst.theta);
          }
        } else {
          const auto m = single_qubit_matrix(inst.kind, inst.theta);
          for (auto& b : branches) apply_1q(b.amp, wire[inst.qubits[0]], m);
        }
    }
  }

  const auto outs = output_clbits(circuit);
  Distribution dist;
  dist.bits = static_cast<int>(outs.size());
  std::string key(outs.size(), '0');
  for (const auto& b : branches) {
    for (std::size_t i = 0; i < b.amp.size(); ++i) {
      double p = std::norm(b.amp[i]);
      if (p < kPrune) continue;
      for (std::size_t j = 0; j < outs.size(); ++j) {
        int c = outs[j];
        int v = deferred[c] >= 0 ? static_cast<int>((i >> deferred[c]) & 1U) : b.bits[c];
        key[j] = v ? '1' : '0';
      }
      dist.probs[key] += p;
    }
  }
  return dist;
}

double total_variation_distance(const Distribution& p, const Distribution& q) {
  if (p.bits != q.bits) {
    throw InvalidArgument("distributions have different key lengths (" +
                          std::to_string(p.bits) + " vs " + std::to_string(q.bits) + ")");
  }
  double s = 0.0;
  auto a = p.probs.begin();
  auto b = q.probs.begin();
  while (a != p.probs.end() || b != q.probs.end()) {
    if (b == q.probs.end() || (a != p.probs.end() && a->first < b->first)) {
      s += std::abs(a->second);
      ++a;
    } else if (a == p.probs.end() || b->first < a->first) {
      s += std::abs(b->second);
      ++b;
    } else {
      s += std::abs(a->second - b->second);
      ++a;
      ++b;
    }
  }
  return 0.5 * s;
}

double maxcut_expectation(const Distribution& dist, const ProblemGraph& graph) {
  if (dist.bits != graph.n) {
    throw InvalidArgument("distribution has " + std::to_string(dist.bits) +
                          " bits but the graph has " + std::to_string(graph.n) +
                          " vertices");
  }
  double e = 0.0;
  for (const auto& [key, p] : dist.probs) {
    int cut = 0;
    for (auto [u, v] : graph.edges) cut += key[u] != key[v];
    e += p * cut;
  }
  return e;
}

std::map<std::string, int> sample_counts(const Distribution& dist, int shots,
                                         std::uint64_t seed) {
  if (shots < 0) throw InvalidArgument("shot count must be non-negative");
  std::map<std::string, int> counts;
  if (dist.probs.empty()) return counts;
  Rng rng(seed);
  const double total = dist.total();
  for (int s = 0; s < shots; ++s) {
    double r = rng.unit() * total;
    auto it = dist.probs.begin();
    for (; std::next(it) != dist.probs.end(); ++it) {
      if (r < it->second) break;
      r -= it->second;
    }
    ++counts[it->first];
  }
  return counts;
}

}  // namespace caqr
