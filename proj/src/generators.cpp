#include "caqr/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "caqr/error.hpp"
#include "caqr/random.hpp"

namespace caqr {

std::string to_string(GraphKind kind) {
  return kind == GraphKind::Random ? "random" : "powerlaw";
}

GraphKind graph_kind_from_string(const std::string& s) {
  if (s == "random") return GraphKind::Random;
  if (s == "powerlaw" || s == "power-law") return GraphKind::PowerLaw;
  throw InvalidArgument("unknown graph kind '" + s + "'");
}

std::vector<int> ProblemGraph::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  for (auto [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

int target_edge_count(int n, double density) {
  return static_cast<int>(std::lround(density * n * (n - 1) / 2.0));
}

Circuit gen_bv(int n, const std::string& secret) {
  if (n < 2) throw InvalidArgument("BV needs at least 2 qubits");
  if (static_cast<int>(secret.size()) != n - 1) {
    throw InvalidArgument("BV secret must have n-1 = " + std::to_string(n - 1) +
                          " bits");
  }
  if (secret.find_first_not_of("01") != std::string::npos) {
    throw InvalidArgument("BV secret must be a bitstring");
  }
  const int anc = n - 1;
  Circuit c(n, n - 1, "bv_" + std::to_string(n));
  c.append(GateKind::X, {anc});
  for (int q = 0; q < n; ++q) c.append(GateKind::H, {q});
  for (int q = 0; q < anc; ++q) {
    if (secret[q] == '1') c.append(GateKind::CX, {q, anc});
  }
  for (int q = 0; q < anc; ++q) c.append(GateKind::H, {q});
  for (int q = 0; q < anc; ++q) c.append(GateKind::MEASURE, {q}, {q});
  return c;
}

Circuit gen_cc(int n, int counterfeit) {
  if (n < 2) throw InvalidArgument("CC needs at least 2 qubits");
  if (counterfeit < 0 || counterfeit >= n - 1) {
    throw InvalidArgument("counterfeit coin index out of range");
  }
  const int anc = n - 1;
  Circuit c(n, n, "cc_" + std::to_string(n));
  for (int q = 0; q < anc; ++q) c.append(GateKind::H, {q});
  for (int q = 0; q < anc; ++q) c.append(GateKind::CX, {q, anc});
  c.append(GateKind::MEASURE, {anc}, {anc});
  c.append(GateKind::CX_CLASSICAL, {anc}, {anc});
  c.append(GateKind::X, {anc});
  c.append(GateKind::H, {anc});
  c.append(GateKind::CX, {counterfeit, anc});
  for (int q = 0; q < anc; ++q) c.append(GateKind::H, {q});
  for (int q = 0; q < anc; ++q) c.append(GateKind::MEASURE, {q}, {q});
  return c;
}

Circuit gen_xor(int n, const std::string& inputs) {
  if (n < 1) throw InvalidArgument("XOR needs at least one input");
  if (static_cast<int>(inputs.size()) != n ||
      inputs.find_first_not_of("01") != std::string::npos) {
    throw InvalidArgument("XOR inputs must be a bitstring of length n");
  }
  Circuit c(n + 1, n + 1, "xor_" + std::to_string(n));
  for (int q = 0; q < n; ++q) {
    if (inputs[q] == '1') c.append(GateKind::X, {q});
  }
  for (int q = 0; q < n; ++q) c.append(GateKind::CX, {q, n});
  for (int q = 0; q <= n; ++q) c.append(GateKind::MEASURE, {q}, {q});
  return c;
}

namespace {

std::vector<std::pair<int, int>> sorted_edges(
    const std::set<std::pair<int, int>>& edges) {
  return {edges.begin(), edges.end()};
}

std::pair<int, int> ordered(int u, int v) { return {std::min(u, v), std::max(u, v)}; }

// Barabasi-Albert growth followed by degree-proportional additions (or uniform
// removals) until the edge count matches the target exactly.
std::set<std::pair<int, int>> power_law_edges(int n, int target, Rng& rng) {
  const double mean_degree = 2.0 * target / n;
  const int attach =
      std::clamp(static_cast<int>(std::floor(mean_degree / 4.0)), 1, n - 1);
  std::set<std::pair<int, int>> edges;
  std::vector<int> endpoints;  // each vertex repeated once per incident edge
  // Seed with a star on the first attach+1 vertices.
  for (int v = 1; v <= attach; ++v) {
    edges.insert({0, v});
    endpoints.push_back(0);
    endpoints.push_back(v);
  }
  for (int v = attach + 1; v < n; ++v) {
    std::set<int> targets;
    while (static_cast<int>(targets.size()) < attach) {
      targets.insert(endpoints[rng.below(static_cast<int>(endpoints.size()))]);
    }
    for (int t : targets) {
      edges.insert(ordered(t, v));
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  while (static_cast<int>(edges.size()) < target) {
    int u = endpoints[rng.below(static_cast<int>(endpoints.size()))];
    int v = rng.below(n);
    if (u == v || edges.count(ordered(u, v))) continue;
    edges.insert(ordered(u, v));
    endpoints.push_back(u);
    endpoints.push_back(v);
  }
  while (static_cast<int>(edges.size()) > target) {
    auto it = edges.begin();
    std::advance(it, rng.below(static_cast<int>(edges.size())));
    edges.erase(it);
  }
  return edges;
}

}  // namespace

ProblemGraph gen_problem_graph(int n, double density, GraphKind kind,
                               std::uint64_t seed) {
  if (n < 2) throw InvalidArgument("problem graph needs n >= 2");
  if (!(density > 0.0 && density <= 1.0)) {
    throw InvalidArgument("density must lie in (0, 1]");
  }
  const int target = target_edge_count(n, density);
  if (target < 1) throw InvalidArgument("density yields no edges");
  Rng rng(seed);
  std::set<std::pair<int, int>> edges;
  if (kind == GraphKind::Random) {
    std::vector<std::pair<int, int>> all;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) all.emplace_back(u, v);
    }
    for (int i = static_cast<int>(all.size()) - 1; i > 0; --i) {
      std::swap(all[i], all[rng.below(i + 1)]);
    }
    edges.insert(all.begin(), all.begin() + target);
  } else {
    edges = power_law_edges(n, target, rng);
  }
  ProblemGraph g;
  g.n = n;
  g.edges = sorted_edges(edges);
  g.kind = kind;
  g.density = density;
  g.seed = seed;
  return g;
}

ProblemGraph make_problem_graph(int n, std::vector<std::pair<int, int>> edges) {
  std::set<std::pair<int, int>> unique;
  for (auto [u, v] : edges) {
    if (u == v || u < 0 || v < 0 || u >= n || v >= n) {
      throw InvalidArgument("invalid problem graph edge");
    }
    if (!unique.insert(ordered(u, v)).second) {
      throw InvalidArgument("duplicate problem graph edge");
    }
  }
  ProblemGraph g;
  g.n = n;
  g.edges = sorted_edges(unique);
  g.density = n > 1 ? 2.0 * g.edges.size() / (n * (n - 1.0)) : 0.0;
  return g;
}

Circuit gen_qaoa_maxcut(const ProblemGraph& graph, double gamma, double beta) {
  Circuit c(graph.n, graph.n, "qaoa_" + std::to_string(graph.n));
  for (int q = 0; q < graph.n; ++q) c.append(GateKind::H, {q});
  for (auto [u, v] : graph.edges) {
    c.append(GateKind::CP, {u, v}, {}, 2.0 * gamma, 0);
  }
  for (int q = 0; q < graph.n; ++q) c.append(GateKind::RX, {q}, {}, 2.0 * beta);
  for (int q = 0; q < graph.n; ++q) c.append(GateKind::MEASURE, {q}, {q});
  return c;
}

Circuit gen_random_circuit(int num_qubits, int num_gates, std::uint64_t seed,
                           double two_qubit_fraction,
                           std::uint64_t measure_mask) {
  static constexpr GateKind kOne[] = {GateKind::H,  GateKind::X,  GateKind::Z,
                                      GateKind::SX, GateKind::T,  GateKind::RZ,
                                      GateKind::RX};
  static constexpr GateKind kTwo[] = {GateKind::CX, GateKind::CZ, GateKind::CP,
                                      GateKind::SWAP};
  if (num_qubits < 1) throw InvalidArgument("random circuit needs a qubit");
  Rng rng(seed);
  Circuit c(num_qubits, num_qubits, "random_" + std::to_string(num_qubits));
  for (int g = 0; g < num_gates; ++g) {
    double theta = (rng.below(16) + 1) * std::numbers::pi / 8.0;
    if (num_qubits >= 2 && rng.chance(two_qubit_fraction)) {
      int a = rng.below(num_qubits);
      int b = rng.below(num_qubits - 1);
      if (b >= a) ++b;
      GateKind k = kTwo[rng.below(4)];
      c.append(k, {a, b}, {}, k == GateKind::CP ? theta : 0.0);
    } else {
      GateKind k = kOne[rng.below(7)];
      c.append(k, {rng.below(num_qubits)}, {}, is_parametric(k) ? theta : 0.0);
    }
  }
  for (int q = 0; q < num_qubits; ++q) {
    if (q < 64 && ((measure_mask >> q) & 1U)) c.append(GateKind::MEASURE, {q}, {q});
  }
  return c;
}

}  // namespace caqr
