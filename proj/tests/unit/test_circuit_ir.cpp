#include <set>

#include "caqr/error.hpp"
#include "caqr/generators.hpp"
#include "caqr/qasm.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace caqr;

namespace {

int count_kind(const Circuit& c, GateKind k) {
  int n = 0;
  for (const auto& i : c.instructions) n += i.kind == k;
  return n;
}

int count_substr(const std::string& s, const std::string& needle) {
  int n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("qasm: minimal program") {
  auto c = parse_qasm("qreg q[1];\nh q[0];\n");
  CHECK(c.num_qubits == 1);
  REQUIRE(c.instructions.size() == 1);
  CHECK(c.instructions[0].kind == GateKind::H);
  CHECK(c.instructions[0].qubits == std::vector<int>{0});
}

TEST_CASE("qasm: five-qubit BV text") {
  const char* text = R"(OPENQASM 2.0;
include "qelib1.inc";
qreg q[5];
creg c[4];
x q[4];
h q[0]; h q[1]; h q[2]; h q[3]; h q[4];
cx q[0],q[4];
cx q[1],q[4];
cx q[2],q[4];
cx q[3],q[4];
h q[0]; h q[1]; h q[2]; h q[3];
measure q[0] -> c[0];
measure q[1] -> c[1];
measure q[2] -> c[2];
measure q[3] -> c[3];
)";
  auto c = parse_qasm(text);
  CHECK(c.num_qubits == 5);
  CHECK(count_kind(c, GateKind::CX) == 4);
  for (const auto& i : c.instructions) {
    if (i.kind == GateKind::CX) CHECK(i.qubits[1] == 4);
  }
  CHECK(count_kind(c, GateKind::H) == 9);
  CHECK(count_kind(c, GateKind::MEASURE) == 4);
  CHECK(structurally_equal(c, gen_bv(5, "1111")));
}

TEST_CASE("qasm: errors carry positions") {
  CHECK_THROWS_AS(parse_qasm("qreg q[2];\ncx q[0], q[0];\n"), ParseError);
  try {
    parse_qasm("qreg q[2];\nfoo q[0];\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 1);
  }
  CHECK_THROWS_AS(parse_qasm("qreg q[2];\nh q[2];\n"), ParseError);
  CHECK_THROWS_AS(parse_qasm("qreg q[2];\nh q[0]\n"), ParseError);
  CHECK_THROWS_AS(parse_qasm("qreg q[2];\ncreg c[1];\nmeasure q[0] -> c[3];\n"), ParseError);
}

TEST_CASE("qasm: conditionals, pragmas and angles") {
  const char* text = R"(qreg q[2];
creg c[2];
// #scratch c[1]
rz(pi/4) q[0];
rx(-2*pi + 0.5) q[1];
measure q[1] -> c[1];
if (c[1]==1) x q[1];
// #commuting begin 0
cp(0.8) q[0],q[1];
cz q[1],q[0];
// #commuting end
measure q[0] -> c[0];
)";
  auto c = parse_qasm(text);
  CHECK(c.scratch_clbits == std::vector<int>{1});
  CHECK(c.instructions[0].theta == doctest::Approx(0.7853981633974483));
  CHECK(c.instructions[1].theta == doctest::Approx(-2 * 3.141592653589793 + 0.5));
  CHECK(c.instructions[3].kind == GateKind::CX_CLASSICAL);
  CHECK(c.instructions[3].clbits == std::vector<int>{1});
  CHECK(c.instructions[4].commuting_group == 0);
  CHECK(c.instructions[5].commuting_group == 0);
  CHECK_FALSE(c.instructions[6].commuting_group.has_value());
  CHECK(output_clbits(c) == std::vector<int>{0});
  CHECK_THROWS_AS(parse_qasm("qreg q[2];\n// #commuting begin 0\nh q[0];\n// #commuting end\n"),
                  ParseError);
}

TEST_CASE("qasm: emit") {
  Circuit c(1, 0);
  c.append(GateKind::H, {0});
  auto text = emit_qasm(c);
  CHECK(count_substr(text, "\nh ") == 1);

  Circuit r(1, 1);
  r.append(GateKind::X, {0});
  r.append(GateKind::MEASURE, {0}, {0});
  r.append(GateKind::CX_CLASSICAL, {0}, {0});
  auto t = emit_qasm(r);
  CHECK(t.find("measure q[0] -> c[0];\nif (c[0]==1) x q[0];") != std::string::npos);
}

TEST_CASE("qasm: round trip of random circuits") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    int n = 1 + rng.below(6);
    Circuit c = gen_random_circuit(n, rng.below(25), seed, 0.4, rng.below(std::uint64_t{1} << n));
    // Sprinkle resets, conditionals, and a commuting block.
    if (n >= 2) {
      c.append(GateKind::CP, {0, 1}, {}, 0.3 + seed * 0.01, 3);
      c.append(GateKind::CZ, {1, n - 1 == 1 ? 0 : n - 1}, {}, 0.0, 3);
    }
    Circuit d(c.num_qubits, c.num_clbits + 1, c.name);
    for (const auto& i : c.instructions) {
      if (i.kind == GateKind::MEASURE) continue;
      d.append(i.kind, i.qubits, i.clbits, i.theta, i.commuting_group);
    }
    d.append(GateKind::RESET, {0});
    d.append(GateKind::MEASURE, {0}, {c.num_clbits});
    d.append(GateKind::CX_CLASSICAL, {0}, {c.num_clbits});
    d.scratch_clbits = {c.num_clbits};
    for (const auto& i : c.instructions) {
      if (i.kind == GateKind::MEASURE) d.append(i.kind, i.qubits, i.clbits);
    }
    d.validate();
    auto back = parse_qasm(emit_qasm(d));
    CAPTURE(seed);
    CHECK(structurally_equal(back, d));
  }
}

TEST_CASE("validate rejects malformed circuits") {
  Circuit c(2, 1);
  c.append(GateKind::MEASURE, {0}, {0});
  c.append(GateKind::H, {0});
  CHECK_THROWS_AS(c.validate(), InvalidArgument);

  Circuit g(2, 0);
  g.append(GateKind::CX, {0, 1}, {}, 0.0, 0);
  CHECK_THROWS_AS(g.validate(), InvalidArgument);

  Circuit ok(2, 1);
  ok.append(GateKind::MEASURE, {0}, {0});
  ok.append(GateKind::CX_CLASSICAL, {0}, {0});
  ok.append(GateKind::H, {0});
  CHECK_NOTHROW(ok.validate());
}

TEST_CASE("gen_bv") {
  auto bv5 = gen_bv(5, "1111");
  CHECK(bv5.num_qubits == 5);
  CHECK(count_kind(bv5, GateKind::CX) == 4);
  CHECK(count_kind(gen_bv(2, "0"), GateKind::CX) == 0);
  CHECK_THROWS_AS(gen_bv(5, "111"), InvalidArgument);
  CHECK_THROWS_AS(gen_bv(1, ""), InvalidArgument);
  CHECK(structurally_equal(gen_bv(6, "10110"), gen_bv(6, "10110")));
}

TEST_CASE("gen_problem_graph") {
  auto g = gen_problem_graph(5, 0.5, GraphKind::Random, 7);
  CHECK(g.n == 5);
  CHECK(g.edges.size() == 5);
  auto k4 = gen_problem_graph(4, 1.0, GraphKind::Random, 123);
  CHECK(k4.edges.size() == 6);
  CHECK_THROWS_AS(gen_problem_graph(4, 0.01, GraphKind::Random, 1), InvalidArgument);
  CHECK_THROWS_AS(gen_problem_graph(4, 0.0, GraphKind::Random, 1), InvalidArgument);

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto p = gen_problem_graph(64, 0.3, GraphKind::PowerLaw, seed);
    CHECK(static_cast<int>(p.edges.size()) == target_edge_count(64, 0.3));
    std::set<std::pair<int, int>> uniq(p.edges.begin(), p.edges.end());
    CHECK(uniq.size() == p.edges.size());
    for (auto [u, v] : p.edges) CHECK(u < v);
    auto deg = p.degrees();
    double mean = 2.0 * p.edges.size() / 64.0;
    CHECK(*std::max_element(deg.begin(), deg.end()) > 2.0 * mean);
    auto again = gen_problem_graph(64, 0.3, GraphKind::PowerLaw, seed);
    CHECK(again.edges == p.edges);
  }
}

TEST_CASE("gen_qaoa_maxcut") {
  auto g = fixtures::five_vertex_graph();
  auto c = gen_qaoa_maxcut(g);
  std::multiset<std::pair<int, int>> pairs;
  int grouped = 0;
  for (const auto& i : c.instructions) {
    if (i.qubits.size() == 2) pairs.insert(std::minmax(i.qubits[0], i.qubits[1]));
    grouped += i.commuting_group.has_value();
  }
  CHECK(pairs == std::multiset<std::pair<int, int>>(g.edges.begin(), g.edges.end()));
  CHECK(grouped == static_cast<int>(g.edges.size()));
  auto empty = gen_qaoa_maxcut(make_problem_graph(3, {}));
  CHECK(std::none_of(empty.instructions.begin(), empty.instructions.end(),
                     [](const Instruction& i) { return i.qubits.size() == 2; }));
}
