#pragma once

#include <string>

#include "caqr/cost.hpp"
#include "caqr/generators.hpp"
#include "caqr/qs_caqr.hpp"
#include "caqr/reuse.hpp"
#include "caqr/sr_caqr.hpp"
#include "json.hpp"

namespace caqr {

using Json = nlohmann::json;

/// {n, edges:[[u,v],...], kind, density, seed}
Json to_json(const ProblemGraph& graph);
/// Throws ParseError on a malformed document, InvalidArgument on bad edges.
ProblemGraph problem_graph_from_json(const Json& j);

/// {pairs:[[p,c],...], wires:{q:w}, clbits:{q:k}, scratch:[...], num_wires}
Json to_json(const WireMap& map);
WireMap wiremap_from_json(const Json& j);

/// {"bits": n, "probs": {bitstring: p}}
Json to_json(const Distribution& dist);
Distribution distribution_from_json(const Json& j);

/// {physical_circuit, placement_history, swaps, depth, duration_dt, esp,
/// physical_qubits_used}
Json to_json(const MappedResult& mapped);

/// Transform report: metrics, wire map and reuse pairs of a QS result, plus
/// the routed mapping when present.
Json transform_report(const Circuit& original, const TransformResult& result,
                      const MappedResult* mapped = nullptr);

/// Report for an SR run (no qubit-saving transform of the circuit itself).
Json mapping_report(const Circuit& original, const std::vector<ReusePair>& pairs,
                    const MappedResult& mapped);

}  // namespace caqr
