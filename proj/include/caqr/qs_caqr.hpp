#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "caqr/circuit.hpp"
#include "caqr/dag.hpp"
#include "caqr/hardware.hpp"
#include "caqr/reuse.hpp"
#include "caqr/timing.hpp"

namespace caqr {

/// One vertex per logical qubit, one edge per two-qubit gate (parallel edges
/// kept).
struct InteractionGraph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<double> weights;

  static InteractionGraph from_circuit(const Circuit& circuit);
  /// Sorted neighbour lists of the underlying simple graph.
  std::vector<std::vector<int>> simple_adjacency() const;
  std::vector<int> degrees() const;
};

struct Coloring {
  std::vector<int> color;
  int num_colors = 0;

  std::vector<std::vector<int>> classes() const;
};

inline constexpr int kExactColoringLimit = 16;

/// Minimum coloring for up to kExactColoringLimit vertices (backtracking over
/// vertices in index order, lowest color first), DSATUR above.
Coloring color_interaction_graph(const InteractionGraph& graph);
bool is_proper_coloring(const InteractionGraph& graph, const Coloring& coloring);

/// Critical path of `dag` with `pair` added; `dag` is restored before return.
/// Node weights must already follow `durations`. Throws InvalidArgument for an
/// invalid pair.
double evaluate_pair(DependencyDag& dag, const Circuit& circuit, ReusePair pair,
                     const DurationModel& durations);

/// Reuse pairs that take the qubits already joined in `dag` down to `wires`
/// qubits. Built from one topological order that avoids starting new qubits
/// while others can finish, with each qubit's lifetime packed onto the first
/// free wire; every subset of the pairs is valid on top of `dag`.
struct Completion {
  int wires = 0;
  std::vector<ReusePair> pairs;
};
Completion low_liveness_completion(const Circuit& circuit, const DependencyDag& dag);

inline constexpr int kExactReuseLimit = 7;

/// Fewest-qubit completion found by depth-first search over pair sets on top
/// of `dag`. Exponential; meant for circuits up to kExactReuseLimit qubits.
Completion exact_completion(const Circuit& circuit, const DependencyDag& dag);

struct TransformResult {
  Circuit circuit;
  WireMap wiremap;
  std::vector<ReusePair> pairs;
  int qubits = 0;
  int depth = 0;
  double duration = 0.0;
  /// Commuting circuits: the scheduled gate order before reuse.
  std::optional<Circuit> ordered;
};

struct Infeasible {
  int limit = 0;
  int reached = 0;
  std::string reason;
};

using ReduceOutcome = std::variant<TransformResult, Infeasible>;

struct QsOptions {
  DurationModel durations;
  /// Commuting circuits: number of candidates (lowest consumer degree first)
  /// whose schedules are evaluated per step.
  int commuting_candidates = 12;
};

/// Greedy reduction, one pair at a time, to at most `limit` qubits. Circuits
/// with a commuting group go through the matching scheduler. While the count
/// is above what a completion reaches from the start (exact_completion up to
/// kExactReuseLimit qubits, low_liveness_completion above), a pair is only
/// taken if that count stays reachable. Throws InvalidArgument for a
/// limit outside [1, num_qubits].
ReduceOutcome reduce_to_limit(const Circuit& circuit, int limit,
                              const QsOptions& options = {});

struct CommutingSchedule {
  Circuit ordered;                       // commuting tags dropped
  std::vector<std::vector<int>> layers;  // instruction ids per matching round
  TransformResult result;                // `ordered` with the pairs applied
};

/// Orders the commuting gates round by round. Gates whose qubit still waits on
/// a producer are held back; gates on producers that still owe their wire
/// weigh the current number of available gates, the rest weigh 1, and each
/// round takes a maximum-weight matching (largest among equal weights).
/// Throws InvalidArgument when the pairs are invalid.
CommutingSchedule schedule_commuting(const Circuit& circuit,
                                     const std::vector<ReusePair>& pairs,
                                     const DurationModel& durations = {});

/// Fewest qubits the greedy reduction reaches. For commuting circuits this is
/// never below the coloring bound.
int min_qubits(const Circuit& circuit, const QsOptions& options = {});

struct TradeoffPoint {
  int qubits = 0;
  int depth = 0;
  double duration = 0.0;
  std::optional<int> swaps;
  std::optional<double> esp;
};

struct SweepPoint {
  TradeoffPoint point;
  TransformResult transform;
  std::optional<Circuit> physical;
};

/// Every qubit count from the original down to the greedy minimum, following
/// one greedy trajectory. With an architecture, each point is also routed.
std::vector<SweepPoint> sweep(const Circuit& circuit, const QsOptions& options = {},
                              const Architecture* arch = nullptr);

std::string tradeoff_csv(const std::vector<TradeoffPoint>& points);
std::vector<TradeoffPoint> points_of(const std::vector<SweepPoint>& sweep);

}  // namespace caqr
