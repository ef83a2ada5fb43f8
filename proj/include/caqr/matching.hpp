#pragma once

#include <cstdint>
#include <vector>

namespace caqr {

struct WeightedEdge {
  int u = 0;
  int v = 0;
  std::int64_t weight = 0;
};

/// Maximum-weight matching on a general graph (Edmonds' blossom algorithm with
/// a primal-dual update, O(V^3)). With `max_cardinality` the result is a
/// maximum-weight matching among the maximum-cardinality ones. Returns mate[v],
/// or -1 for unmatched vertices. Self-loops are ignored.
std::vector<int> max_weight_matching(int num_vertices,
                                     const std::vector<WeightedEdge>& edges,
                                     bool max_cardinality = false);

/// Heaviest-edge-first greedy matching; ties go to the lower edge index.
std::vector<int> greedy_matching(int num_vertices, const std::vector<WeightedEdge>& edges);

/// Sum of the weights of matched edges (each counted once); parallel edges
/// contribute their heaviest copy.
std::int64_t matching_weight(const std::vector<int>& mate,
                             const std::vector<WeightedEdge>& edges);

}  // namespace caqr
