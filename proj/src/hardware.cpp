#include "caqr/hardware.hpp"

#include <algorithm>
#include <filesystem>
#include <limits>
#include <queue>
#include <set>

#include "json.hpp"

#include "caqr/error.hpp"
#include "caqr/qasm.hpp"

namespace caqr {

using nlohmann::json;

std::vector<std::vector<int>> CouplingGraph::adjacency() const {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(num_physical));
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

bool CouplingGraph::adjacent(int a, int b) const {
  return std::find(edges.begin(), edges.end(), edge_key(a, b)) != edges.end();
}

int CouplingGraph::max_degree() const {
  int best = 0;
  for (const auto& a : adjacency()) best = std::max(best, static_cast<int>(a.size()));
  return best;
}

bool CouplingGraph::connected() const {
  if (num_physical <= 1) return true;
  auto dist = all_pairs_distance(*this);
  return std::none_of(dist[0].begin(), dist[0].end(), [](int d) { return d < 0; });
}

double Calibration::readout(int q) const {
  if (q < 0 || q >= static_cast<int>(readout_error.size())) {
    throw InvalidArgument("no readout calibration for qubit " + std::to_string(q));
  }
  return readout_error[q];
}

double Calibration::cx_error_on(int a, int b) const {
  auto it = cx_error.find(edge_key(a, b));
  if (it == cx_error.end()) {
    throw InvalidArgument("no cx calibration for link " + std::to_string(a) + "-" +
                          std::to_string(b));
  }
  return it->second;
}

double Calibration::cx_duration_on(int a, int b) const {
  auto it = cx_duration.find(edge_key(a, b));
  if (it == cx_duration.end()) {
    throw InvalidArgument("no cx duration for link " + std::to_string(a) + "-" +
                          std::to_string(b));
  }
  return it->second;
}

DurationModel Calibration::durations() const {
  DurationModel m;
  m.single_qubit = sq_duration;
  m.reset = mr_duration;
  if (!cx_duration.empty()) {
    double sum = 0.0;
    for (const auto& [k, d] : cx_duration) sum += d;
    m.two_qubit = sum / static_cast<double>(cx_duration.size());
  }
  return m;
}

Calibration Calibration::defaults(const CouplingGraph& graph, double mr_duration) {
  Calibration c;
  c.readout_error.assign(static_cast<std::size_t>(graph.num_physical),
                         kDefaultReadoutError);
  for (auto [u, v] : graph.edges) {
    c.cx_error[{u, v}] = kDefaultCxError;
    c.cx_duration[{u, v}] = kDefaultTwoQubitDt;
  }
  c.mr_duration = mr_duration;
  return c;
}

namespace {

CouplingGraph falcon27() {
  CouplingGraph g;
  g.name = "heavy-hex-27";
  g.num_physical = 27;
  g.edges = {{0, 1},   {1, 2},   {1, 4},   {2, 3},   {3, 5},   {4, 7},
             {5, 8},   {6, 7},   {7, 10},  {8, 9},   {8, 11},  {10, 12},
             {11, 14}, {12, 13}, {12, 15}, {13, 14}, {14, 16}, {15, 18},
             {16, 19}, {17, 18}, {18, 21}, {19, 20}, {19, 22}, {21, 23},
             {22, 25}, {23, 24}, {24, 25}, {25, 26}};
  return g;
}

// Rows of `width` columns joined by bridge qubits every fourth column, the
// bridge columns alternating between offsets 0 and 2. The first row lacks the
// last column and the last row lacks the first. Ids run row by row with each
// row's bridges numbered after it.
CouplingGraph tiled_heavy_hex(int rows, int width, const std::string& name) {
  CouplingGraph g;
  g.name = name;
  std::vector<std::vector<int>> row_ids(static_cast<std::size_t>(rows),
                                        std::vector<int>(static_cast<std::size_t>(width), -1));
  std::vector<std::vector<std::pair<int, int>>> bridges(static_cast<std::size_t>(rows));
  int next = 0;
  for (int r = 0; r < rows; ++r) {
    int first = r == rows - 1 ? 1 : 0;
    int last = r == 0 ? width - 2 : width - 1;
    for (int c = first; c <= last; ++c) row_ids[r][c] = next++;
    if (r + 1 == rows) break;
    for (int c = (r % 2 == 0) ? 0 : 2; c < width; c += 4) bridges[r].emplace_back(next++, c);
  }
  std::set<EdgeKey> edges;
  for (int r = 0; r < rows; ++r) {
    for (int c = 1; c < width; ++c) {
      if (row_ids[r][c - 1] >= 0 && row_ids[r][c] >= 0) {
        edges.insert(edge_key(row_ids[r][c - 1], row_ids[r][c]));
      }
    }
    for (auto [id, c] : bridges[r]) {
      edges.insert(edge_key(row_ids[r][c], id));
      edges.insert(edge_key(id, row_ids[r + 1][c]));
    }
  }
  g.num_physical = next;
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

}  // namespace

CouplingGraph build_heavy_hex(int size) {
  switch (size) {
    case 27:
      return falcon27();
    case 65:
      return tiled_heavy_hex(5, 11, "heavy-hex-65");
    case 127:
      return tiled_heavy_hex(7, 15, "heavy-hex-127");
    default:
      throw InvalidArgument("unsupported heavy-hex size " + std::to_string(size) +
                            " (use 27, 65 or 127)");
  }
}

DistanceTable all_pairs_distance(const CouplingGraph& graph) {
  const auto adj = graph.adjacency();
  DistanceTable dist(static_cast<std::size_t>(graph.num_physical),
                     std::vector<int>(static_cast<std::size_t>(graph.num_physical), -1));
  for (int s = 0; s < graph.num_physical; ++s) {
    auto& d = dist[s];
    std::queue<int> q;
    d[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : adj[u]) {
        if (d[v] < 0) {
          d[v] = d[u] + 1;
          q.push(v);
        }
      }
    }
  }
  return dist;
}

void validate_architecture(const Architecture& arch) {
  const auto& g = arch.graph;
  if (g.num_physical < 1) throw InvalidArgument("architecture has no qubits");
  std::set<EdgeKey> seen;
  for (auto [u, v] : g.edges) {
    if (u < 0 || v < 0 || u >= g.num_physical || v >= g.num_physical) {
      throw InvalidArgument("coupling edge out of range");
    }
    if (u == v) throw InvalidArgument("coupling graph has a self-loop");
    if (!seen.insert(edge_key(u, v)).second) {
      throw InvalidArgument("coupling graph has a duplicate edge");
    }
  }
  if (!g.connected()) throw InvalidArgument("coupling graph is disconnected");
  const auto& cal = arch.calibration;
  auto prob = [](double p, const std::string& what) {
    if (!(p >= 0.0 && p < 1.0)) {
      throw InvalidArgument(what + " must lie in [0, 1), got " + std::to_string(p));
    }
  };
  if (static_cast<int>(cal.readout_error.size()) != g.num_physical) {
    throw InvalidArgument("readout calibration size mismatch");
  }
  for (double p : cal.readout_error) prob(p, "readout error");
  for (const auto& [k, p] : cal.cx_error) {
    if (!g.adjacent(k.first, k.second)) {
      throw InvalidArgument("cx calibration for non-edge " + std::to_string(k.first) +
                            "-" + std::to_string(k.second));
    }
    prob(p, "cx error");
  }
  for (const auto& [k, d] : cal.cx_duration) {
    if (!g.adjacent(k.first, k.second)) {
      throw InvalidArgument("cx duration for non-edge " + std::to_string(k.first) +
                            "-" + std::to_string(k.second));
    }
    if (!(d > 0.0)) throw InvalidArgument("cx duration must be positive");
  }
  for (auto [u, v] : g.edges) {
    if (!cal.cx_error.count({u, v}) || !cal.cx_duration.count({u, v})) {
      throw InvalidArgument("coupling edge without cx calibration");
    }
  }
  if (!(cal.sq_duration > 0.0) || !(cal.mr_duration > 0.0)) {
    throw InvalidArgument("durations must be positive");
  }
}

namespace {

EdgeKey parse_edge_key(const std::string& key) {
  auto dash = key.find('-');
  if (dash == std::string::npos) throw InvalidArgument("bad link key '" + key + "'");
  try {
    return edge_key(std::stoi(key.substr(0, dash)), std::stoi(key.substr(dash + 1)));
  } catch (const std::logic_error&) {
    throw InvalidArgument("bad link key '" + key + "'");
  }
}

}  // namespace

Architecture load_architecture(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("architecture JSON: ") + e.what());
  }
  Architecture arch;
  try {
    arch.graph.name = j.value("name", std::string("custom"));
    arch.graph.num_physical = j.at("n").get<int>();
    std::set<EdgeKey> edges;
    for (const auto& e : j.at("edges")) {
      int u = e.at(0).get<int>();
      int v = e.at(1).get<int>();
      if (u == v) throw InvalidArgument("coupling graph has a self-loop");
      if (!edges.insert(edge_key(u, v)).second) {
        throw InvalidArgument("coupling graph has a duplicate edge");
      }
    }
    arch.graph.edges.assign(edges.begin(), edges.end());
    arch.calibration = Calibration::defaults(arch.graph);
    auto& cal = arch.calibration;
    if (j.contains("readout_error")) {
      for (const auto& [k, v] : j["readout_error"].items()) {
        int q = std::stoi(k);
        if (q < 0 || q >= arch.graph.num_physical) {
          throw InvalidArgument("readout error for unknown qubit " + k);
        }
        cal.readout_error[q] = v.get<double>();
      }
    }
    if (j.contains("cx_error")) {
      for (const auto& [k, v] : j["cx_error"].items()) {
        cal.cx_error[parse_edge_key(k)] = v.get<double>();
      }
    }
    if (j.contains("cx_duration_dt")) {
      for (const auto& [k, v] : j["cx_duration_dt"].items()) {
        cal.cx_duration[parse_edge_key(k)] = v.get<double>();
      }
    }
    cal.sq_duration = j.value("sq_duration_dt", cal.sq_duration);
    cal.mr_duration = j.value("mr_duration_dt", cal.mr_duration);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("architecture JSON: ") + e.what());
  }
  validate_architecture(arch);
  return arch;
}

std::string emit_architecture(const Architecture& arch) {
  json j;
  j["name"] = arch.graph.name;
  j["n"] = arch.graph.num_physical;
  j["edges"] = json::array();
  for (auto [u, v] : arch.graph.edges) j["edges"].push_back({u, v});
  json ro = json::object();
  for (int q = 0; q < static_cast<int>(arch.calibration.readout_error.size()); ++q) {
    ro[std::to_string(q)] = arch.calibration.readout_error[q];
  }
  j["readout_error"] = ro;
  json ce = json::object();
  json cd = json::object();
  for (const auto& [k, p] : arch.calibration.cx_error) {
    ce[std::to_string(k.first) + "-" + std::to_string(k.second)] = p;
  }
  for (const auto& [k, d] : arch.calibration.cx_duration) {
    cd[std::to_string(k.first) + "-" + std::to_string(k.second)] = d;
  }
  j["cx_error"] = ce;
  j["cx_duration_dt"] = cd;
  j["sq_duration_dt"] = arch.calibration.sq_duration;
  j["mr_duration_dt"] = arch.calibration.mr_duration;
  return j.dump(2);
}

Architecture resolve_architecture(const std::string& spec, bool builtin_reset) {
  Architecture arch;
  const std::string prefix = "heavy-hex-";
  if (spec.rfind(prefix, 0) == 0 && !std::filesystem::exists(spec)) {
    int size = 0;
    try {
      size = std::stoi(spec.substr(prefix.size()));
    } catch (const std::logic_error&) {
      throw InvalidArgument("unknown architecture '" + spec + "'");
    }
    arch.graph = build_heavy_hex(size);
    arch.calibration = Calibration::defaults(arch.graph);
  } else {
    arch = load_architecture(read_text_file(spec));
  }
  if (builtin_reset) arch.calibration.mr_duration = kBuiltinResetDt;
  return arch;
}

}  // namespace caqr
