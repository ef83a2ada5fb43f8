#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "caqr/timing.hpp"

namespace caqr {

/// Undirected physical connectivity. Edges are stored with u < v.
struct CouplingGraph {
  std::string name;
  int num_physical = 0;
  std::vector<std::pair<int, int>> edges;

  std::vector<std::vector<int>> adjacency() const;
  bool adjacent(int a, int b) const;
  int max_degree() const;
  bool connected() const;
};

using EdgeKey = std::pair<int, int>;
inline EdgeKey edge_key(int a, int b) {
  return a < b ? EdgeKey{a, b} : EdgeKey{b, a};
}

inline constexpr double kDefaultCxError = 0.01;
inline constexpr double kDefaultReadoutError = 0.02;

/// Per-qubit and per-link error rates and durations (durations in dt).
struct Calibration {
  std::vector<double> readout_error;
  std::map<EdgeKey, double> cx_error;
  std::map<EdgeKey, double> cx_duration;
  double sq_duration = kDefaultSingleQubitDt;
  double mr_duration = kOptimizedResetDt;

  double readout(int q) const;
  /// Throw InvalidArgument when the link has no calibration entry.
  double cx_error_on(int a, int b) const;
  double cx_duration_on(int a, int b) const;

  /// Uniform logical model: the mean link duration stands in for 2q gates.
  DurationModel durations() const;

  static Calibration defaults(const CouplingGraph& graph,
                              double mr_duration = kOptimizedResetDt);
};

struct Architecture {
  CouplingGraph graph;
  Calibration calibration;
};

/// Heavy-hex lattices: the 27-qubit Falcon layout, and 65/127-qubit layouts
/// tiled from the same unit cell. Throws InvalidArgument for other sizes.
CouplingGraph build_heavy_hex(int size);

/// Parses the architecture JSON format
/// `{name, n, edges, readout_error, cx_error, cx_duration_dt, sq_duration_dt,
/// mr_duration_dt}`; absent calibration entries take default values.
Architecture load_architecture(std::string_view json_text);
std::string emit_architecture(const Architecture& arch);

/// Checks connectivity, simplicity, and calibration ranges.
void validate_architecture(const Architecture& arch);

/// `heavy-hex-27`, `heavy-hex-65`, `heavy-hex-127`, or a path to a JSON file.
/// `builtin_reset` swaps the reset duration for the unoptimized measure+reset.
Architecture resolve_architecture(const std::string& spec, bool builtin_reset);

using DistanceTable = std::vector<std::vector<int>>;

/// Hop distances by BFS from every vertex.
DistanceTable all_pairs_distance(const CouplingGraph& graph);

}  // namespace caqr
