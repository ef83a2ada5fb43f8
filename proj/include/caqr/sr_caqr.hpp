#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "caqr/circuit.hpp"
#include "caqr/hardware.hpp"
#include "caqr/qs_caqr.hpp"
#include "caqr/reuse.hpp"

namespace caqr {

struct MapOptions {
  /// Return physical qubits of retired logical qubits to the free list.
  bool reclaim = true;
  /// Hold back first placements of gates that are off the critical path.
  bool delay = true;
  /// Weight of the partner-distance term in the placement score.
  double alpha = 1.0;
  /// Upcoming two-qubit gates per qubit considered by the placement score.
  int lookahead = 2;
};

struct PlacementEvent {
  enum class Kind { place, retire };
  Kind kind = Kind::place;
  int position = 0;  // index in the physical circuit where the event happens
  int logical = -1;
  int physical = -1;
};

/// Live state of the mapping loop.
class MappingState {
 public:
  MappingState(int num_logical, int num_physical);

  /// Where the state of `logical` sits (also after retirement, until the
  /// physical qubit is reset), or -1.
  int physical_of(int logical) const { return phys_[logical]; }
  /// Logical qubit whose state sits on `physical`, live or retired, or -1.
  int content_of(int physical) const { return content_[physical]; }
  bool placed(int logical) const { return phys_[logical] >= 0 && !retired_[logical]; }
  bool retired(int logical) const { return retired_[logical]; }
  bool is_free(int physical) const { return free_[physical]; }
  bool ever_used(int physical) const { return used_[physical]; }
  std::vector<int> free_list() const;

  void place(int logical, int physical);
  void retire(int logical, bool release);
  void apply_swap(int a, int b);
  /// The retired occupant of `physical` has been reset.
  void clear(int physical);

  int num_logical() const { return static_cast<int>(phys_.size()); }
  int num_physical() const { return static_cast<int>(content_.size()); }

 private:
  std::vector<int> phys_;
  std::vector<int> content_;
  std::vector<bool> retired_;
  std::vector<bool> free_;
  std::vector<bool> used_;
};

struct MappedResult {
  Circuit physical;
  std::vector<PlacementEvent> history;
  /// inserted[i]: instruction i was added by the mapper (SWAP or reset).
  std::vector<bool> inserted;
  int swaps = 0;
  int depth = 0;
  double duration = 0.0;
  double esp = 1.0;
  int physical_qubits_used = 0;
};

using MapOutcome = std::variant<MappedResult, Infeasible>;

/// Maps a circuit without commuting groups onto the architecture with lazy
/// allocation, reclamation of retired qubits, and SWAP insertion.
MapOutcome map_regular(const Circuit& circuit, const Architecture& arch,
                       const MapOptions& options = {});

/// Same loop for a circuit with a commuting group; each pair's consumer is
/// placed on the physical qubit its producer leaves behind. Throws
/// InvalidArgument for invalid pairs.
MapOutcome map_commuting(const Circuit& circuit, const Architecture& arch,
                         const std::vector<ReusePair>& pairs,
                         const MapOptions& options = {});

/// Dispatches on the presence of a commuting group (no pairs for commuting
/// circuits).
MapOutcome map_circuit(const Circuit& circuit, const Architecture& arch,
                       const MapOptions& options = {});

/// Baseline without reuse or delays: every logical qubit keeps its physical
/// qubit for the whole run.
MapOutcome route_without_reuse(const Circuit& circuit, const Architecture& arch);

/// Among shortest paths between the operands, the one with the smallest summed
/// cx error (ties go to the lower-numbered predecessor).
std::vector<int> lowest_error_shortest_path(const Architecture& arch,
                                            const DistanceTable& dist, int from, int to);

/// Moves the operands of a two-qubit gate next to each other. `others` are
/// operand pairs (logical) of other pending gates, used to choose where the
/// two meet. Updates `state` and returns the SWAPs as physical pairs.
std::vector<std::pair<int, int>> insert_swaps_for_gate(
    MappingState& state, int logical_a, int logical_b, const Architecture& arch,
    const DistanceTable& dist, const std::vector<std::pair<int, int>>& others = {});

struct SrChoice {
  MappedResult mapped;
  std::vector<ReusePair> pairs;
  int logical_qubits = 0;
  /// The circuit that was mapped: the transformed circuit for regular
  /// circuits, the input itself for commuting ones.
  Circuit logical;
};

/// Fewest-SWAP mapping over the reuse configurations along one greedy
/// qubit-saving trajectory (the original circuit included): regular circuits
/// map each transformed circuit, commuting circuits map the original with
/// each pair set. Ties go to the shorter duration.
std::optional<SrChoice> map_min_swap(const Circuit& circuit, const Architecture& arch,
                                     const QsOptions& qs = {}, const MapOptions& options = {});

/// Standalone check of a mapping: coupling compliance, liveness and reset
/// before rehosting, and the logical gate multiset. Returns problems found.
std::vector<std::string> verify_mapping(const Circuit& logical, const Architecture& arch,
                                        const MappedResult& mapped);

}  // namespace caqr
