#include <map>
#include <set>

#include "caqr/error.hpp"
#include "caqr/hardware.hpp"
#include "doctest.h"

using namespace caqr;

namespace {

// Floyd-Warshall, independent of the BFS table.
std::vector<std::vector<int>> floyd(const CouplingGraph& g) {
  const int n = g.num_physical;
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), inf));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  for (auto [u, v] : g.edges) d[u][v] = d[v][u] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

}  // namespace

TEST_CASE("heavy-hex lattices") {
  const std::map<int, std::size_t> expected_edges{{27, 28}, {65, 72}, {127, 144}};
  for (auto [size, edges] : expected_edges) {
    auto g = build_heavy_hex(size);
    CAPTURE(size);
    CHECK(g.num_physical == size);
    CHECK(g.edges.size() == edges);
    CHECK(g.max_degree() == 3);
    CHECK(g.connected());
    std::set<EdgeKey> uniq(g.edges.begin(), g.edges.end());
    CHECK(uniq.size() == g.edges.size());
    for (auto [u, v] : g.edges) CHECK(u < v);
  }
  auto g27 = build_heavy_hex(27);
  for (auto e : {EdgeKey{15, 18}, EdgeKey{17, 18}, EdgeKey{18, 21}, EdgeKey{21, 23}}) {
    CHECK(g27.adjacent(e.first, e.second));
  }
  CHECK_THROWS_AS(build_heavy_hex(16), InvalidArgument);
}

TEST_CASE("distances") {
  CouplingGraph path{"p3", 3, {{0, 1}, {1, 2}}};
  CHECK(all_pairs_distance(path)[0][2] == 2);
  for (int size : {27, 65}) {
    auto g = build_heavy_hex(size);
    auto d = all_pairs_distance(g);
    auto f = floyd(g);
    CHECK(d == f);
    for (int i = 0; i < size; ++i) {
      CHECK(d[i][i] == 0);
      for (int j = 0; j < size; ++j) {
        CHECK(d[i][j] == d[j][i]);
        for (int k = 0; k < size; ++k) CHECK(d[i][j] <= d[i][k] + d[k][j]);
      }
    }
  }
  CHECK(all_pairs_distance(build_heavy_hex(27))[15][23] == 3);  // 15-18-21-23
}

TEST_CASE("architecture JSON") {
  auto a = load_architecture(R"({"n": 2, "edges": [[0, 1]]})");
  CHECK(a.calibration.readout(0) == kDefaultReadoutError);
  CHECK(a.calibration.cx_error_on(1, 0) == kDefaultCxError);
  CHECK(a.calibration.cx_duration_on(0, 1) == kDefaultTwoQubitDt);
  CHECK(a.calibration.sq_duration == 160.0);
  CHECK(a.calibration.mr_duration == 16467.0);

  CHECK_THROWS_AS(load_architecture(R"({"n": 2, "edges": [[0, 1]], "readout_error": {"0": 1.5}})"),
                  InvalidArgument);
  CHECK_THROWS_AS(load_architecture(R"({"n": 3, "edges": [[0, 1]]})"), InvalidArgument);
  CHECK_THROWS_AS(load_architecture(R"({"n": 3, "edges": [[0, 1], [1, 2]], "cx_error": {"0-2": 0.1}})"),
                  InvalidArgument);
  CHECK_THROWS_AS(load_architecture(R"({"n": 2, "edges": [[0, 1], [1, 0]]})"), InvalidArgument);
  CHECK_THROWS_AS(load_architecture("{not json"), InvalidArgument);

  // Five Mumbai-like qubits with one bad readout.
  const char* five = R"({"name": "mumbai-slice", "n": 27,
    "edges": [[0,1],[1,2],[1,4],[2,3],[3,5],[4,7],[5,8],[6,7],[7,10],[8,9],[8,11],[10,12],
              [11,14],[12,13],[12,15],[13,14],[14,16],[15,18],[16,19],[17,18],[18,21],
              [19,20],[19,22],[21,23],[22,25],[23,24],[24,25],[25,26]],
    "readout_error": {"15": 0.012, "17": 0.015, "18": 0.02, "21": 0.025, "23": 0.13},
    "cx_error": {"15-18": 0.008, "17-18": 0.011, "18-21": 0.01, "21-23": 0.009}})";
  auto m = load_architecture(five);
  CHECK(m.calibration.readout(23) == 0.13);
  CHECK(m.calibration.readout(15) == 0.012);
  CHECK(m.calibration.cx_error_on(18, 15) == 0.008);
  CHECK(m.graph.name == "mumbai-slice");

  auto back = load_architecture(emit_architecture(m));
  CHECK(back.graph.edges == m.graph.edges);
  CHECK(back.calibration.readout_error == m.calibration.readout_error);
  CHECK(back.calibration.cx_error == m.calibration.cx_error);
  CHECK(back.calibration.cx_duration == m.calibration.cx_duration);
  CHECK(back.calibration.mr_duration == m.calibration.mr_duration);
}

TEST_CASE("builtin architectures") {
  auto a = resolve_architecture("heavy-hex-65", false);
  CHECK(a.graph.num_physical == 65);
  CHECK(a.calibration.mr_duration == kOptimizedResetDt);
  CHECK_NOTHROW(validate_architecture(a));
  CHECK_THROWS_AS(resolve_architecture("heavy-hex-30", false), InvalidArgument);
  CHECK_THROWS(resolve_architecture("/nonexistent/arch.json", false));
}
