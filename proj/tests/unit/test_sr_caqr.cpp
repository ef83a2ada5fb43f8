#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "caqr/cost.hpp"
#include "caqr/error.hpp"
#include "caqr/generators.hpp"
#include "caqr/qs_caqr.hpp"
#include "caqr/random.hpp"
#include "caqr/sr_caqr.hpp"
#include "doctest.h"

using namespace caqr;

namespace {

Architecture arch_from(int n, std::vector<std::pair<int, int>> edges) {
  Architecture a;
  a.graph.name = "test";
  a.graph.num_physical = n;
  a.graph.edges = std::move(edges);
  a.calibration = Calibration::defaults(a.graph);
  return a;
}

Architecture path_arch(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return arch_from(n, edges);
}

const Architecture& hh27() {
  static const Architecture a = resolve_architecture("heavy-hex-27", false);
  return a;
}

MappedResult mapped(const MapOutcome& r) {
  REQUIRE(std::holds_alternative<MappedResult>(r));
  return std::get<MappedResult>(r);
}

// Every two-qubit gate on a coupling edge, swaps counted independently.
void check_compliant(const Architecture& arch, const MappedResult& m) {
  int swaps = 0;
  for (const auto& inst : m.physical.instructions) {
    if (inst.qubits.size() == 2) CHECK(arch.graph.adjacent(inst.qubits[0], inst.qubits[1]));
    swaps += inst.kind == GateKind::SWAP ? 1 : 0;
  }
  CHECK(swaps == m.swaps);
}

int physical_used(const Circuit& phys) {
  std::set<int> used;
  for (const auto& inst : phys.instructions) used.insert(inst.qubits.begin(), inst.qubits.end());
  return static_cast<int>(used.size());
}

Circuit qaoa_on(int n, std::vector<std::pair<int, int>> edges) {
  return gen_qaoa_maxcut(make_problem_graph(n, std::move(edges)));
}

// g1(q1,q2) is off the critical path q4: g2(q4,q0), g3(q4,q3), g4(q1,q4).
Circuit delay_example() {
  Circuit c(5, 0, "delay");
  c.append(GateKind::CX, {1, 2});
  c.append(GateKind::CX, {4, 0});
  c.append(GateKind::CX, {4, 3});
  c.append(GateKind::CX, {1, 4});
  return c;
}

int bfs_distance(const Architecture& a, int s, int t) {
  auto adj = a.graph.adjacency();
  std::vector<int> d(static_cast<std::size_t>(a.graph.num_physical), -1);
  std::queue<int> q;
  d[s] = 0;
  q.push(s);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int u : adj[v]) {
      if (d[u] < 0) {
        d[u] = d[v] + 1;
        q.push(u);
      }
    }
  }
  return d[t];
}

}  // namespace

TEST_CASE("five logical qubits fit a four-node path without SWAPs") {
  auto arch = path_arch(4);
  auto c = delay_example();
  const auto m = mapped(map_regular(c, arch));
  check_compliant(arch, m);
  CHECK(m.swaps == 0);
  CHECK(physical_used(m.physical) <= 4);
  CHECK(verify_mapping(c, arch, m).empty());
  // Some physical qubit hosts two logical qubits in turn.
  std::map<int, int> hosted;
  for (const auto& e : m.history) {
    if (e.kind == PlacementEvent::Kind::place) ++hosted[e.physical];
  }
  CHECK(std::any_of(hosted.begin(), hosted.end(), [](auto kv) { return kv.second >= 2; }));
  CHECK(std::holds_alternative<Infeasible>(route_without_reuse(c, arch)));
}

TEST_CASE("BV_5 maps without SWAPs while the static baseline needs some") {
  auto bv = gen_bv(5, "1111");
  const auto m = mapped(map_regular(bv, hh27()));
  check_compliant(hh27(), m);
  CHECK(m.swaps == 0);
  CHECK(verify_mapping(bv, hh27(), m).empty());
  const auto base = mapped(route_without_reuse(bv, hh27()));
  check_compliant(hh27(), base);
  CHECK(base.swaps >= 1);
}

TEST_CASE("a one-qubit circuit maps trivially") {
  Circuit c(1, 1);
  c.append(GateKind::H, {0});
  c.append(GateKind::MEASURE, {0}, {0});
  const auto m = mapped(map_regular(c, hh27()));
  CHECK(m.swaps == 0);
  CHECK(m.physical.instructions.size() == 2);
  CHECK(physical_used(m.physical) == 1);
  CHECK(verify_mapping(c, hh27(), m).empty());
}

TEST_CASE("operands two hops apart need exactly one SWAP") {
  auto arch = path_arch(3);
  auto dist = all_pairs_distance(arch.graph);
  MappingState s(2, 3);
  s.place(0, 0);
  s.place(1, 2);
  auto swaps = insert_swaps_for_gate(s, 0, 1, arch, dist);
  CHECK(swaps.size() == 1);
  CHECK(arch.graph.adjacent(s.physical_of(0), s.physical_of(1)));
}

TEST_CASE("the shortest path with the lower summed cx error wins") {
  // Square 0-1-2-3-0: both routes from 0 to 2 have length 2.
  auto arch = arch_from(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  auto dist = all_pairs_distance(arch.graph);
  arch.calibration.cx_error[edge_key(0, 1)] = 0.2;
  CHECK(lowest_error_shortest_path(arch, dist, 0, 2) == std::vector<int>{0, 3, 2});
  arch.calibration.cx_error[edge_key(0, 1)] = 0.001;
  CHECK(lowest_error_shortest_path(arch, dist, 0, 2) == std::vector<int>{0, 1, 2});

  MappingState s(2, 4);
  s.place(0, 0);
  s.place(1, 2);
  arch.calibration.cx_error[edge_key(0, 1)] = 0.2;
  auto swaps = insert_swaps_for_gate(s, 0, 1, arch, dist);
  REQUIRE(swaps.size() == 1);
  for (auto [a, b] : swaps) CHECK(edge_key(a, b) != edge_key(0, 1));
}

TEST_CASE("operands end adjacent on random heavy-hex states") {
  const auto& arch = hh27();
  auto dist = all_pairs_distance(arch.graph);
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const int live = 2 + static_cast<int>(rng.below(10));
    std::vector<int> phys(27);
    for (int i = 0; i < 27; ++i) phys[i] = i;
    for (int i = 26; i > 0; --i) std::swap(phys[i], phys[rng.below(static_cast<std::uint64_t>(i + 1))]);
    MappingState s(live, 27);
    for (int l = 0; l < live; ++l) s.place(l, phys[l]);
    std::vector<std::pair<int, int>> others;
    for (int l = 2; l + 1 < live; l += 2) others.emplace_back(l, l + 1);
    const int before = bfs_distance(arch, phys[0], phys[1]);
    auto swaps = insert_swaps_for_gate(s, 0, 1, arch, dist, others);
    CHECK(arch.graph.adjacent(s.physical_of(0), s.physical_of(1)));
    CHECK(static_cast<int>(swaps.size()) == before - 1);
    for (auto [a, b] : swaps) CHECK(arch.graph.adjacent(a, b));
    // Placement stays injective.
    std::set<int> seen;
    for (int l = 0; l < live; ++l) seen.insert(s.physical_of(l));
    CHECK(static_cast<int>(seen.size()) == live);
  }
}

TEST_CASE("insert_swaps_for_gate requires placed operands") {
  auto arch = path_arch(3);
  auto dist = all_pairs_distance(arch.graph);
  MappingState s(2, 3);
  s.place(0, 0);
  CHECK_THROWS_AS(insert_swaps_for_gate(s, 0, 1, arch, dist), InvalidArgument);
}

TEST_CASE("QAOA on the five-vertex graph with one reuse pair stays on four qubits") {
  auto c = gen_qaoa_maxcut(make_problem_graph(5, {{0, 1}, {1, 3}, {1, 2}, {3, 4}, {2, 3}}));
  const auto m = mapped(map_commuting(c, hh27(), {{0, 4}}));
  check_compliant(hh27(), m);
  CHECK(physical_used(m.physical) <= 4);
  CHECK(verify_mapping(c, hh27(), m).empty());
}

TEST_CASE("QAOA without edges needs no SWAPs") {
  auto c = qaoa_on(4, {});
  const auto m = mapped(map_circuit(c, hh27()));
  CHECK(m.swaps == 0);
  CHECK(verify_mapping(c, hh27(), m).empty());
}

TEST_CASE("map_commuting rejects invalid pairs") {
  auto c = qaoa_on(3, {{0, 1}, {1, 2}});
  CHECK_THROWS_AS(map_commuting(c, hh27(), {{0, 1}}), InvalidArgument);
  CHECK_THROWS_AS(map_regular(c, hh27()), InvalidArgument);
}

TEST_CASE("SR mapping of QAOA10 needs no more SWAPs than the best QS point") {
  auto c = gen_qaoa_maxcut(gen_problem_graph(10, 0.3, GraphKind::Random, 1));
  auto sr = map_min_swap(c, hh27());
  REQUIRE(sr.has_value());
  check_compliant(hh27(), sr->mapped);
  CHECK(verify_mapping(c, hh27(), sr->mapped).empty());
  int qs_best = std::numeric_limits<int>::max();
  for (const auto& p : sweep(c, {}, &hh27())) {
    REQUIRE(p.point.swaps.has_value());
    qs_best = std::min(qs_best, *p.point.swaps);
  }
  CHECK(sr->mapped.swaps <= qs_best);
}

TEST_CASE("a circuit wider than the device is infeasible") {
  auto arch = path_arch(3);
  Circuit c(4, 0);
  // Every qubit stays live until the last gate.
  c.append(GateKind::CX, {0, 1});
  c.append(GateKind::CX, {2, 3});
  c.append(GateKind::CX, {1, 2});
  c.append(GateKind::CX, {0, 3});
  auto r = map_regular(c, arch);
  REQUIRE(std::holds_alternative<Infeasible>(r));
  CHECK(std::get<Infeasible>(r).limit == 3);
}

TEST_CASE("a disconnected coupling graph is rejected") {
  auto arch = arch_from(4, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(map_regular(gen_bv(3, "11"), arch), InvalidArgument);
}

TEST_CASE("verify_mapping flags tampered mappings") {
  auto bv = gen_bv(5, "1111");
  const auto good = mapped(map_regular(bv, hh27()));
  REQUIRE(verify_mapping(bv, hh27(), good).empty());

  SUBCASE("gate moved off the coupling graph") {
    auto bad = good;
    for (auto& inst : bad.physical.instructions) {
      if (inst.qubits.size() == 2) {
        for (int p = 0; p < 27; ++p) {
          if (p != inst.qubits[0] && !hh27().graph.adjacent(inst.qubits[0], p)) {
            inst.qubits[1] = p;
            break;
          }
        }
        break;
      }
    }
    CHECK_FALSE(verify_mapping(bv, hh27(), bad).empty());
  }
  SUBCASE("instruction dropped") {
    auto bad = good;
    bad.physical.instructions.pop_back();
    bad.inserted.pop_back();
    CHECK_FALSE(verify_mapping(bv, hh27(), bad).empty());
  }
  SUBCASE("history dropped") {
    auto bad = good;
    bad.history.clear();
    CHECK_FALSE(verify_mapping(bv, hh27(), bad).empty());
  }
  SUBCASE("inserted mask too short") {
    auto bad = good;
    bad.inserted.pop_back();
    CHECK_FALSE(verify_mapping(bv, hh27(), bad).empty());
  }
}

TEST_CASE("mapped circuits keep the logical output distribution") {
  for (int n : {3, 5, 7}) {
    auto bv = gen_bv(n, std::string(static_cast<std::size_t>(n - 1), '1'));
    const auto m = mapped(map_regular(bv, hh27()));
    CHECK(total_variation_distance(simulate_exact(bv), simulate_exact(m.physical)) <= 1e-9);
  }
  auto xor5 = gen_xor(5, "10110");
  const auto m = mapped(map_regular(xor5, hh27()));
  CHECK(verify_mapping(xor5, hh27(), m).empty());
  CHECK(total_variation_distance(simulate_exact(xor5), simulate_exact(m.physical)) <= 1e-9);

  auto q = qaoa_on(4, {{0, 1}, {1, 2}, {2, 3}});
  const auto mq = mapped(map_circuit(q, hh27()));
  CHECK(total_variation_distance(simulate_exact(q), simulate_exact(mq.physical)) <= 1e-9);
}

TEST_CASE("mapping metrics agree with the cost model") {
  auto bv = gen_bv(6, "11011");
  const auto m = mapped(map_regular(bv, hh27()));
  CHECK(m.depth == circuit_depth(m.physical));
  CHECK(m.esp == doctest::Approx(estimated_success_probability(m.physical, hh27().calibration)));
  CHECK(m.duration == doctest::Approx(circuit_duration(m.physical, hh27().calibration)));
  CHECK(m.physical_qubits_used == physical_used(m.physical));
}
