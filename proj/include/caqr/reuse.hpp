#pragma once

#include <compare>
#include <vector>

#include "caqr/circuit.hpp"
#include "caqr/dag.hpp"

namespace caqr {

/// Logical qubit `consumer` runs on `producer`'s wire once every gate on
/// `producer` has finished and the wire has been measured and reset.
struct ReusePair {
  int producer = -1;
  int consumer = -1;

  friend auto operator<=>(const ReusePair&, const ReusePair&) = default;
};

/// Where each original logical qubit ended up after materialization.
struct WireMap {
  std::vector<ReusePair> pairs;
  std::vector<int> wire;   // original qubit -> wire
  std::vector<int> epoch;  // original qubit -> ordinal of its tenancy on the wire
  std::vector<int> clbit;  // original qubit -> clbit with its measurement, or -1
  std::vector<int> scratch;
  int num_wires = 0;

  static WireMap identity(const Circuit& circuit);
};

/// No instruction acts on both qubits. False for q_i == q_j.
bool check_condition1(const Circuit& circuit, int producer, int consumer);

/// Inserting a measure-reset node between the gates of `producer` and those of
/// `consumer` keeps `dag` acyclic. The insertion is tentative: the node is
/// removed again before returning, so `dag` is unchanged. Also false when the
/// producer already hands its wire on or the consumer already inherits one.
bool check_condition2(DependencyDag& dag, int producer, int consumer);

/// All pairs passing both conditions against the current dag, ordered by
/// (producer, consumer).
std::vector<ReusePair> enumerate_candidates(const Circuit& circuit,
                                            DependencyDag& dag);

/// Adds the measure-reset node for `pair` without validating it. Edges run from
/// every node on the producer (and the dummy that handed the producer its wire)
/// to the new node, and from it to every node on the consumer (and the dummy
/// that hands the consumer's wire on). Returns the node id.
int insert_reuse_node(DependencyDag& dag, ReusePair pair, double weight);

/// Validated in-place application; throws InvalidArgument for an invalid pair.
void apply_reuse_pair_in_place(DependencyDag& dag, const Circuit& circuit,
                               ReusePair pair, double mr_duration);

DependencyDag apply_reuse_pair(const DependencyDag& dag, const Circuit& circuit,
                               ReusePair pair, double mr_duration);

struct MaterializedCircuit {
  Circuit circuit;
  WireMap wiremap;
};

/// Rewrites `circuit` so every pair shares one wire. Each pair becomes a
/// MEASURE of the producer's wire followed by CX_CLASSICAL on that bit; a
/// producer whose last instruction is a MEASURE has it absorbed into the
/// boundary measurement, otherwise a fresh scratch clbit is used.
MaterializedCircuit materialize(const Circuit& circuit,
                                const std::vector<ReusePair>& pairs);

}  // namespace caqr
