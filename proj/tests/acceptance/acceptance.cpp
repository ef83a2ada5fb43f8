// Prints one PASS/FAIL line per acceptance criterion; exits non-zero if any
// criterion fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "caqr/cost.hpp"
#include "caqr/generators.hpp"
#include "caqr/hardware.hpp"
#include "caqr/qasm.hpp"
#include "caqr/qs_caqr.hpp"
#include "caqr/random.hpp"
#include "caqr/reuse.hpp"
#include "caqr/sr_caqr.hpp"

using namespace caqr;

namespace {

constexpr double kTvdTolerance = 1e-9;

struct Outcome {
  bool pass = false;
  std::string detail;
};

const Architecture& hh27() {
  static const Architecture a = resolve_architecture("heavy-hex-27", false);
  return a;
}

// Every SR mapping produced by the criteria, re-checked by criterion 9.
struct Mapped {
  std::string label;
  Circuit logical;
  MappedResult mapped;
};
std::vector<Mapped>& mapped_log() {
  static std::vector<Mapped> log;
  return log;
}
void remember(const std::string& label, const Circuit& logical, const MappedResult& m) {
  mapped_log().push_back({label, logical, m});
}

Circuit bench(const std::string& name) { return read_qasm_file(std::string(CAQR_BENCH_DIR) + "/" + name); }

Circuit five_vertex_qaoa() {
  return gen_qaoa_maxcut(make_problem_graph(5, {{0, 1}, {1, 3}, {1, 2}, {3, 4}, {2, 3}}));
}

// Circuits of at most eight qubits standing in for the benchmark suite.
std::vector<std::pair<std::string, Circuit>> small_corpus() {
  return {{"BV_5", gen_bv(5, "1011")},
          {"BV_8", gen_bv(8, "1101011")},
          {"CC_6", gen_cc(6, 4)},
          {"CC_8", gen_cc(8, 2)},
          {"XOR_5", gen_xor(5, "10110")},
          {"rd32", bench("rd32.qasm")},
          {"4mod5", bench("4mod5.qasm")},
          {"QAOA_5", five_vertex_qaoa()},
          {"QAOA_8", gen_qaoa_maxcut(gen_problem_graph(8, 0.3, GraphKind::Random, 3))}};
}

// Instruction order graph (shared qubit or clbit, members of one commuting
// group excepted) plus one node per pair between producer and consumer
// instructions; true when acyclic.
bool pairs_acyclic(const Circuit& c, const std::vector<ReusePair>& pairs) {
  const int n = static_cast<int>(c.instructions.size());
  const int total = n + static_cast<int>(pairs.size());
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(total));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto& a = c.instructions[i];
      const auto& b = c.instructions[j];
      if (a.commuting_group && a.commuting_group == b.commuting_group) continue;
      bool shared = false;
      for (int q : a.qubits) shared = shared || b.touches_qubit(q);
      for (int k : a.clbits) {
        shared = shared || std::find(b.clbits.begin(), b.clbits.end(), k) != b.clbits.end();
      }
      if (shared) adj[i].push_back(j);
    }
  }
  for (int k = 0; k < static_cast<int>(pairs.size()); ++k) {
    for (int i = 0; i < n; ++i) {
      if (c.instructions[i].touches_qubit(pairs[k].producer)) adj[i].push_back(n + k);
      if (c.instructions[i].touches_qubit(pairs[k].consumer)) adj[n + k].push_back(i);
    }
    for (int m = 0; m < static_cast<int>(pairs.size()); ++m) {
      if (pairs[m].consumer == pairs[k].producer) adj[n + m].push_back(n + k);
    }
  }
  std::vector<int> color(static_cast<std::size_t>(total), 0);
  std::function<bool(int)> cyclic = [&](int v) {
    color[v] = 1;
    for (int s : adj[v]) {
      if (color[s] == 1 || (color[s] == 0 && cyclic(s))) return true;
    }
    color[v] = 2;
    return false;
  };
  for (int v = 0; v < total; ++v) {
    if (color[v] == 0 && cyclic(v)) return false;
  }
  return true;
}

// Brute-force candidate list given already applied pairs.
std::vector<ReusePair> oracle_candidates(const Circuit& c, const std::vector<ReusePair>& applied) {
  std::vector<ReusePair> out;
  for (int p = 0; p < c.num_qubits; ++p) {
    for (int q = 0; q < c.num_qubits; ++q) {
      if (p == q) continue;
      bool taken = false;
      for (const auto& a : applied) taken = taken || a.producer == p || a.consumer == q;
      if (taken) continue;
      bool share = false;
      for (const auto& inst : c.instructions) share = share || (inst.touches_qubit(p) && inst.touches_qubit(q));
      if (share) continue;
      auto all = applied;
      all.push_back({p, q});
      if (pairs_acyclic(c, all)) out.push_back({p, q});
    }
  }
  return out;
}

int brute_chromatic(int n, const std::vector<std::pair<int, int>>& edges) {
  for (int k = 1; k <= n; ++k) {
    std::vector<int> col(static_cast<std::size_t>(n), -1);
    std::function<bool(int)> go = [&](int v) {
      if (v == n) return true;
      for (int c = 0; c < k; ++c) {
        bool ok = true;
        for (auto [a, b] : edges) {
          if ((a == v && col[b] == c) || (b == v && col[a] == c)) ok = false;
        }
        if (!ok) continue;
        col[v] = c;
        if (go(v + 1)) return true;
        col[v] = -1;
      }
      return false;
    };
    if (go(0)) return k;
  }
  return n;
}

Outcome criterion1() {
  std::ostringstream d;
  bool pass = true;
  for (int n : {5, 10, 20}) {
    const auto start = std::chrono::steady_clock::now();
    auto bv = gen_bv(n, std::string(static_cast<std::size_t>(n - 1), '1'));
    auto r = reduce_to_limit(bv, 2);
    auto* t = std::get_if<TransformResult>(&r);
    if (!t || t->qubits != 2) {
      pass = false;
      d << "BV_" << n << " not reduced to 2; ";
      continue;
    }
    auto m = map_regular(t->circuit, hh27());
    auto* mr = std::get_if<MappedResult>(&m);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!mr) {
      pass = false;
      d << "BV_" << n << " routing infeasible; ";
      continue;
    }
    remember("BV_" + std::to_string(n) + " (2 wires)", t->circuit, *mr);
    pass = pass && mr->swaps == 0 && secs < 1.0;
    d << "BV_" << n << ": 2 qubits, " << mr->swaps << " swaps, " << secs << " s; ";
  }
  return {pass, d.str()};
}

Outcome criterion2() {
  int checked = 0;
  double worst = 0.0;
  std::string worst_name;
  auto check = [&](const std::string& name, const Circuit& original, const Circuit& transformed) {
    const double tvd = total_variation_distance(simulate_exact(original), simulate_exact(transformed));
    ++checked;
    if (tvd > worst) {
      worst = tvd;
      worst_name = name;
    }
  };
  // Benchmarks: every point of the qubit-saving sweep.
  for (const auto& [name, c] : small_corpus()) {
    for (const auto& p : sweep(c)) check(name + "@" + std::to_string(p.transform.qubits), c, p.transform.circuit);
  }
  // Random circuits with random valid chains.
  Rng rng(20240601);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 5 + static_cast<int>(rng.below(3));
    const int gates = n + static_cast<int>(rng.below(static_cast<std::uint64_t>(3 * n)));
    std::uint64_t mask = rng.below(std::uint64_t{1} << n);
    auto c = gen_random_circuit(n, gates, 1000 + static_cast<std::uint64_t>(trial), 0.35, mask);
    auto dag = build_dag(c);
    std::vector<ReusePair> pairs;
    const int want = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    for (int k = 0; k < want; ++k) {
      auto cands = enumerate_candidates(c, dag);
      if (cands.empty()) break;
      auto p = cands[rng.below(static_cast<std::uint64_t>(cands.size()))];
      insert_reuse_node(dag, p, 1.0);
      pairs.push_back(p);
    }
    check("random#" + std::to_string(trial), c, materialize(c, pairs).circuit);
  }
  std::ostringstream d;
  d << checked << " transformations, max TVD " << worst;
  if (!worst_name.empty()) d << " (" << worst_name << ")";
  return {worst <= kTvdTolerance, d.str()};
}

Outcome criterion3() {
  std::vector<std::pair<std::string, Circuit>> corpus;
  for (auto& e : small_corpus()) {
    if (e.second.num_qubits <= 7) corpus.push_back(std::move(e));
  }
  corpus.emplace_back("strategy", [] {
    Circuit c(4, 0);
    c.append(GateKind::CX, {0, 1});
    c.append(GateKind::H, {3});
    c.append(GateKind::CX, {0, 2});
    c.append(GateKind::X, {3});
    return c;
  }());
  for (std::uint64_t s = 1; s <= 40; ++s) {
    corpus.emplace_back("random#" + std::to_string(s),
                        gen_random_circuit(4 + static_cast<int>(s % 4), 12 + static_cast<int>(s % 9), s));
  }
  int states = 0;
  std::string first_bad;
  Rng rng(7);
  for (const auto& [name, c] : corpus) {
    // The empty state and a few states with pairs already applied.
    auto dag = build_dag(c);
    std::vector<ReusePair> applied;
    for (int step = 0; step < 4; ++step) {
      auto got = enumerate_candidates(c, dag);
      auto want = oracle_candidates(c, applied);
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      ++states;
      if (got != want && first_bad.empty()) first_bad = name + " after " + std::to_string(step) + " pairs";
      if (got.empty()) break;
      auto p = got[rng.below(static_cast<std::uint64_t>(got.size()))];
      insert_reuse_node(dag, p, 1.0);
      applied.push_back(p);
    }
  }
  std::ostringstream d;
  d << corpus.size() << " circuits, " << states << " states compared";
  if (!first_bad.empty()) d << "; first mismatch: " << first_bad;
  return {first_bad.empty(), d.str()};
}

Outcome criterion4() {
  Rng rng(4242);
  int mismatches = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(10));
    const double p = 0.2 + 0.6 * rng.unit();
    InteractionGraph g;
    g.num_vertices = n;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng.chance(p)) {
          g.edges.emplace_back(u, v);
          g.weights.push_back(1.0);
        }
      }
    }
    auto col = color_interaction_graph(g);
    if (!is_proper_coloring(g, col) || col.num_colors != brute_chromatic(n, g.edges)) ++mismatches;
  }
  const int five = color_interaction_graph(InteractionGraph::from_circuit(five_vertex_qaoa())).num_colors;
  std::ostringstream d;
  d << "50 random graphs, " << mismatches << " mismatches; five-vertex graph: " << five << " colors";
  return {mismatches == 0 && five == 3, d.str()};
}

Outcome criterion5() {
  auto c = five_vertex_qaoa();
  auto s = schedule_commuting(c, {{0, 4}});
  auto id = [&](int u, int v) {
    for (const auto& inst : c.instructions) {
      if (inst.qubits.size() == 2 && std::min(inst.qubits[0], inst.qubits[1]) == u &&
          std::max(inst.qubits[0], inst.qubits[1]) == v) {
        return inst.id;
      }
    }
    return -1;
  };
  const std::vector<std::set<int>> want = {
      {id(0, 1), id(2, 3)}, {id(1, 2), id(3, 4)}, {id(1, 3)}};
  std::vector<std::set<int>> got;
  for (const auto& l : s.layers) got.emplace_back(l.begin(), l.end());
  auto name = [&](int gid) {
    const int gs[] = {id(0, 1), id(1, 3), id(1, 2), id(3, 4), id(2, 3)};
    for (int k = 0; k < 5; ++k) {
      if (gs[k] == gid) return "g" + std::to_string(k + 1);
    }
    return std::string("?");
  };
  std::ostringstream d;
  d << "layers";
  for (const auto& l : got) {
    d << " {";
    bool first = true;
    for (int g : l) {
      d << (first ? "" : ",") << name(g);
      first = false;
    }
    d << "}";
  }
  return {got == want, d.str()};
}

Outcome criterion6() {
  Circuit c(27, 1);
  c.append(GateKind::MEASURE, {0}, {0});
  c.append(GateKind::CX_CLASSICAL, {0}, {0});
  const double opt = circuit_duration(c, hh27().calibration);
  const double builtin = circuit_duration(c, resolve_architecture("heavy-hex-27", true).calibration);
  std::ostringstream d;
  d << "reset pair " << opt << " dt, builtin " << builtin << " dt";
  return {opt == 16467.0 && builtin == 33179.0, d.str()};
}

Outcome criterion7() {
  std::ostringstream d;
  bool pass = true;
  const auto start = std::chrono::steady_clock::now();
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto c = gen_qaoa_maxcut(gen_problem_graph(64, 0.3, GraphKind::PowerLaw, seed));
    auto pts = sweep(c);
    const auto& first = pts.front().transform;
    const auto& last = pts.back().transform;
    const double saving = 1.0 - static_cast<double>(last.qubits) / first.qubits;
    pass = pass && saving >= 0.5;
    d << "seed " << seed << ": " << first.qubits << "->" << last.qubits << " qubits ("
      << static_cast<int>(saving * 100 + 0.5) << "% saved, duration x" << last.duration / first.duration;
    // Duration ratio at the 80%-saving point, when reached.
    auto at80 = std::find_if(pts.begin(), pts.end(), [&](const SweepPoint& p) {
      return p.transform.qubits <= first.qubits / 5;
    });
    if (at80 != pts.end()) {
      d << ", x" << at80->transform.duration / first.duration << " at 80%";
    } else {
      d << ", 80% not reached";
    }
    d << "); ";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  d << secs << " s";
  return {pass && secs < 300.0, d.str()};
}

Outcome criterion8() {
  std::vector<std::pair<std::string, Circuit>> corpus = {
      {"BV_10", gen_bv(10, "111111111")},
      {"CC_10", gen_cc(10, 8)},
      {"XOR_5", gen_xor(5, "10110")},
      {"QAOA10-0.3", gen_qaoa_maxcut(gen_problem_graph(10, 0.3, GraphKind::Random, 1))},
      {"QAOA15-0.3", gen_qaoa_maxcut(gen_problem_graph(15, 0.3, GraphKind::Random, 1))},
      {"QAOA20-0.3", gen_qaoa_maxcut(gen_problem_graph(20, 0.3, GraphKind::Random, 1))}};
  std::ostringstream d;
  bool pass = true;
  for (const auto& [name, c] : corpus) {
    int qs_best = std::numeric_limits<int>::max();
    for (const auto& p : sweep(c, {}, &hh27())) {
      if (p.point.swaps) qs_best = std::min(qs_best, *p.point.swaps);
    }
    auto sr = map_min_swap(c, hh27());
    if (!sr) {
      pass = false;
      d << name << ": SR infeasible; ";
      continue;
    }
    remember(name, sr->logical, sr->mapped);
    pass = pass && sr->mapped.swaps <= qs_best;
    d << name << " SR " << sr->mapped.swaps << " <= QS " << qs_best << "; ";
  }
  return {pass, d.str()};
}

Outcome criterion10() {
  auto bv = gen_bv(5, "1111");
  auto sr = map_regular(bv, hh27());
  auto base = route_without_reuse(bv, hh27());
  auto* s = std::get_if<MappedResult>(&sr);
  auto* b = std::get_if<MappedResult>(&base);
  if (!s || !b) return {false, "mapping infeasible"};
  remember("BV_5 SR", bv, *s);
  remember("BV_5 no-reuse", bv, *b);
  std::ostringstream d;
  d << "SR " << s->swaps << " swaps, no-reuse router " << b->swaps << " swaps";
  return {s->swaps == 0 && b->swaps >= 1, d.str()};
}

// Runs last: every mapping collected above plus the small corpus mapped by SR.
Outcome criterion9() {
  for (const auto& [name, c] : small_corpus()) {
    auto m = map_circuit(c, hh27());
    if (auto* mr = std::get_if<MappedResult>(&m)) remember(name, c, *mr);
  }
  int problems = 0;
  std::string first;
  for (const auto& e : mapped_log()) {
    auto found = verify_mapping(e.logical, hh27(), e.mapped);
    for (const auto& inst : e.mapped.physical.instructions) {
      if (inst.qubits.size() == 2 && !hh27().graph.adjacent(inst.qubits[0], inst.qubits[1])) {
        found.push_back("non-edge gate");
      }
    }
    problems += static_cast<int>(found.size());
    if (!found.empty() && first.empty()) first = e.label + ": " + found.front();
  }
  std::ostringstream d;
  d << mapped_log().size() << " mapped circuits, " << problems << " problems";
  if (!first.empty()) d << "; " << first;
  return {problems == 0, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},  {5, criterion5},
      {6, criterion6}, {7, criterion7}, {8, criterion8}, {10, criterion10}, {9, criterion9}};
  std::vector<std::pair<int, Outcome>> results;
  for (const auto& [k, f] : criteria) {
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    results.emplace_back(k, o);
  }
  std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  int failed = 0;
  for (const auto& [k, o] : results) {
    std::printf("CRITERION %d: %s - %s\n", k, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    failed += o.pass ? 0 : 1;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
