#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "caqr/circuit.hpp"
#include "caqr/generators.hpp"
#include "caqr/hardware.hpp"
#include "caqr/timing.hpp"

namespace caqr {

/// Outcome probabilities keyed by bitstrings; character i is the value of the
/// i-th output clbit in ascending clbit order.
struct Distribution {
  int bits = 0;
  std::map<std::string, double> probs;

  double total() const;
};

struct Metrics {
  int depth = 0;
  double duration = 0.0;
  int swaps = 0;
  double esp = 1.0;
};

/// Number of ASAP layers. A measure + conditional-X reset occupies one layer.
int circuit_depth(const Circuit& circuit);

/// Weighted critical path of a logical circuit under a uniform model.
double circuit_duration(const Circuit& circuit, const DurationModel& model);

/// Weighted critical path of a physical circuit using per-link durations.
/// Throws InvalidArgument for a two-qubit gate off the coupling graph.
double circuit_duration(const Circuit& circuit, const Calibration& calibration);

/// Product of (1 - cx error) over two-qubit gates (a SWAP counts as three) and
/// of (1 - readout error) over measurements. Throws for unmapped circuits.
double estimated_success_probability(const Circuit& circuit,
                                     const Calibration& calibration);

int count_swaps(const Circuit& circuit);

inline constexpr int kMaxSimulatedWires = 14;

/// Exact outcome distribution over the output clbits. Each mid-circuit
/// measurement splits the state into weighted branches; measurements that are
/// never followed by anything on their qubit or clbit are read off the final
/// state instead. Throws InvalidArgument above kMaxSimulatedWires active wires.
Distribution simulate_exact(const Circuit& circuit);

/// Half the L1 distance. Throws InvalidArgument on differing key lengths.
double total_variation_distance(const Distribution& p, const Distribution& q);

/// Expected number of cut edges; key character v is the side of vertex v.
double maxcut_expectation(const Distribution& dist, const ProblemGraph& graph);

/// Draws `shots` samples from `dist`.
std::map<std::string, int> sample_counts(const Distribution& dist, int shots,
                                         std::uint64_t seed);

}  // namespace caqr
