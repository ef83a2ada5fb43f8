#include "caqr/qs_caqr.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <tuple>

#include "caqr/cost.hpp"
#include "caqr/error.hpp"
#include "caqr/matching.hpp"
#include "caqr/sr_caqr.hpp"

namespace caqr {

InteractionGraph InteractionGraph::from_circuit(const Circuit& circuit) {
  InteractionGraph g;
  g.num_vertices = circuit.num_qubits;
  for (const auto& inst : circuit.instructions) {
    if (inst.qubits.size() == 2) {
      g.edges.emplace_back(inst.qubits[0], inst.qubits[1]);
      g.weights.push_back(1.0);
    }
  }
  return g;
}

std::vector<std::vector<int>> InteractionGraph::simple_adjacency() const {
  std::vector<std::set<int>> sets(static_cast<std::size_t>(num_vertices));
  for (auto [u, v] : edges) {
    if (u == v) continue;
    sets[u].insert(v);
    sets[v].insert(u);
  }
  std::vector<std::vector<int>> adj;
  adj.reserve(sets.size());
  for (const auto& s : sets) adj.emplace_back(s.begin(), s.end());
  return adj;
}

std::vector<int> InteractionGraph::degrees() const {
  std::vector<int> d(static_cast<std::size_t>(num_vertices), 0);
  auto adj = simple_adjacency();
  for (int v = 0; v < num_vertices; ++v) d[v] = static_cast<int>(adj[v].size());
  return d;
}

std::vector<std::vector<int>> Coloring::classes() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(num_colors));
  for (int v = 0; v < static_cast<int>(color.size()); ++v) out[color[v]].push_back(v);
  return out;
}

bool is_proper_coloring(const InteractionGraph& graph, const Coloring& coloring) {
  if (static_cast<int>(coloring.color.size()) != graph.num_vertices) return false;
  std::set<int> used;
  for (int c : coloring.color) {
    if (c < 0) return false;
    used.insert(c);
  }
  if (static_cast<int>(used.size()) != coloring.num_colors) return false;
  for (auto [u, v] : graph.edges) {
    if (u != v && coloring.color[u] == coloring.color[v]) return false;
  }
  return true;
}

namespace {

// Chromatic number by dynamic programming over vertex subsets.
int chromatic_number_dp(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  if (n == 0) return 0;
  const std::uint32_t full = (1U << n) - 1;
  std::vector<std::uint32_t> nbr(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    for (int u : adj[v]) nbr[v] |= 1U << u;
  }
  std::vector<bool> independent(std::size_t{full} + 1, false);
  independent[0] = true;
  for (std::uint32_t s = 1; s <= full; ++s) {
    int v = __builtin_ctz(s);
    std::uint32_t rest = s & (s - 1);
    independent[s] = independent[rest] && !(nbr[v] & rest);
  }
  std::vector<std::uint8_t> dp(std::size_t{full} + 1, 0xFF);
  dp[0] = 0;
  for (std::uint32_t s = 1; s <= full; ++s) {
    // The class holding the lowest vertex of s is some independent subset.
    std::uint32_t low = s & (~s + 1);
    std::uint32_t rest = s ^ low;
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      std::uint32_t cls = sub | low;
      if (independent[cls] && dp[s ^ cls] != 0xFF) {
        dp[s] = std::min<std::uint8_t>(dp[s], static_cast<std::uint8_t>(dp[s ^ cls] + 1));
      }
      if (sub == 0) break;
    }
  }
  return dp[full];
}

bool backtrack_color(const std::vector<std::vector<int>>& adj, int k, int v, int used,
                     std::vector<int>& color) {
  const int n = static_cast<int>(adj.size());
  if (v == n) return true;
  for (int c = 0; c < std::min(k, used + 1); ++c) {
    bool clash = std::any_of(adj[v].begin(), adj[v].end(),
                             [&](int u) { return u < v && color[u] == c; });
    if (clash) continue;
    color[v] = c;
    if (backtrack_color(adj, k, v + 1, std::max(used, c + 1), color)) return true;
  }
  color[v] = -1;
  return false;
}

Coloring dsatur(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  Coloring out;
  out.color.assign(static_cast<std::size_t>(n), -1);
  std::vector<std::set<int>> seen(static_cast<std::size_t>(n));
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (out.color[v] >= 0) continue;
      if (best < 0 || seen[v].size() > seen[best].size() ||
          (seen[v].size() == seen[best].size() && adj[v].size() > adj[best].size())) {
        best = v;
      }
    }
    int c = 0;
    while (seen[best].count(c)) ++c;
    out.color[best] = c;
    out.num_colors = std::max(out.num_colors, c + 1);
    for (int u : adj[best]) seen[u].insert(c);
  }
  return out;
}

}  // namespace

Coloring color_interaction_graph(const InteractionGraph& graph) {
  const auto adj = graph.simple_adjacency();
  const int n = graph.num_vertices;
  if (n > kExactColoringLimit) return dsatur(adj);
  Coloring out;
  out.color.assign(static_cast<std::size_t>(n), -1);
  if (n == 0) return out;
  const int k = chromatic_number_dp(adj);
  backtrack_color(adj, k, 0, 0, out.color);
  out.num_colors = k;
  return out;
}

double evaluate_pair(DependencyDag& dag, const Circuit& circuit, ReusePair pair,
                     const DurationModel& durations) {
  if (pair.producer < 0 || pair.consumer < 0 || pair.producer >= circuit.num_qubits ||
      pair.consumer >= circuit.num_qubits || !check_condition1(circuit, pair.producer, pair.consumer) ||
      !check_condition2(dag, pair.producer, pair.consumer)) {
    throw InvalidArgument("invalid reuse pair q" + std::to_string(pair.producer) + " -> q" +
                          std::to_string(pair.consumer));
  }
  insert_reuse_node(dag, pair, durations.reset);
  double length = critical_path_length(dag);
  dag.pop_node();
  return length;
}

namespace {

constexpr double kTieEps = 1e-9;

TransformResult finish(MaterializedCircuit m, std::vector<ReusePair> pairs,
                       const DurationModel& durations) {
  TransformResult r;
  r.depth = circuit_depth(m.circuit);
  r.duration = circuit_duration(m.circuit, durations);
  r.qubits = m.circuit.num_qubits;
  r.circuit = std::move(m.circuit);
  r.wiremap = std::move(m.wiremap);
  r.pairs = std::move(pairs);
  return r;
}

using StepFn = std::function<void(const TransformResult&)>;

// Candidates best-first. Regular circuits rank by resulting critical path,
// then fewer gates on the consumer, then index. Commuting circuits rank the
// first few candidates of lowest consumer degree by schedule duration and
// keep the rest in degree order.
class Ranker {
 public:
  Ranker(const Circuit& circuit, const QsOptions& options)
      : circuit_(circuit),
        options_(options),
        commuting_(circuit.has_commuting_group()),
        per_qubit_(instructions_per_qubit(circuit)),
        degree_(InteractionGraph::from_circuit(circuit).degrees()) {}

  std::vector<ReusePair> rank(DependencyDag& dag, const std::vector<ReusePair>& applied,
                              std::vector<ReusePair> cands) {
    scheduled_.clear();
    if (!commuting_) {
      std::vector<std::pair<double, ReusePair>> scored;
      for (const auto& c : cands) {
        insert_reuse_node(dag, c, options_.durations.reset);
        scored.emplace_back(critical_path_length(dag), c);
        dag.pop_node();
      }
      std::stable_sort(scored.begin(), scored.end(), [&](const auto& a, const auto& b) {
        if (a.first < b.first - kTieEps) return true;
        if (b.first < a.first - kTieEps) return false;
        return per_qubit_[a.second.consumer].size() < per_qubit_[b.second.consumer].size();
      });
      std::vector<ReusePair> out;
      for (const auto& s : scored) out.push_back(s.second);
      return out;
    }
    std::stable_sort(cands.begin(), cands.end(), [&](const ReusePair& a, const ReusePair& b) {
      return degree_[a.consumer] < degree_[b.consumer];
    });
    const std::size_t k =
        std::min(cands.size(), static_cast<std::size_t>(std::max(1, options_.commuting_candidates)));
    std::vector<std::pair<double, std::size_t>> head;
    for (std::size_t i = 0; i < k; ++i) {
      auto trial = applied;
      trial.push_back(cands[i]);
      auto s = schedule_commuting(circuit_, trial, options_.durations);
      head.emplace_back(s.result.duration, i);
      scheduled_.emplace(cands[i], std::move(s));
    }
    std::stable_sort(head.begin(), head.end(), [](const auto& a, const auto& b) {
      return a.first < b.first - kTieEps;
    });
    std::vector<ReusePair> out;
    for (const auto& h : head) out.push_back(cands[h.second]);
    out.insert(out.end(), cands.begin() + static_cast<std::ptrdiff_t>(k), cands.end());
    return out;
  }

  TransformResult result(const std::vector<ReusePair>& pairs, std::optional<ReusePair> last) {
    if (!commuting_) return finish(materialize(circuit_, pairs), pairs, options_.durations);
    if (last) {
      auto it = scheduled_.find(*last);
      if (it != scheduled_.end()) return it->second.result;
    }
    return schedule_commuting(circuit_, pairs, options_.durations).result;
  }

 private:
  const Circuit& circuit_;
  const QsOptions& options_;
  bool commuting_;
  std::vector<std::vector<int>> per_qubit_;
  std::vector<int> degree_;
  std::map<ReusePair, CommutingSchedule> scheduled_;
};

// Greedy trajectory. Until the qubit count reaches the count of a
// schedule-derived completion, a candidate is only taken when a completion to
// that count still exists afterwards; the stored completion is the fallback.
// Calls `on_step` with the starting point and after every applied pair.
ReduceOutcome greedy(const Circuit& circuit, int limit, const QsOptions& options,
                     const StepFn& on_step) {
  if (limit < 1 || limit > circuit.num_qubits) {
    throw InvalidArgument("qubit limit " + std::to_string(limit) + " outside [1, " +
                          std::to_string(circuit.num_qubits) + "]");
  }
  circuit.validate();
  DependencyDag dag = build_dag(circuit, options.durations);
  Ranker ranker(circuit, options);
  std::vector<ReusePair> pairs;
  int count = circuit.num_qubits;
  const bool exact = circuit.num_qubits <= kExactReuseLimit;
  auto complete = [&] {
    return exact ? exact_completion(circuit, dag) : low_liveness_completion(circuit, dag);
  };
  auto witness = complete();
  const int target = std::max(limit, witness.wires);
  std::optional<TransformResult> current;
  if (on_step || count <= limit) {
    current = ranker.result(pairs, std::nullopt);
    if (on_step) on_step(*current);
  }
  while (count > limit) {
    auto cands = enumerate_candidates(circuit, dag);
    if (cands.empty()) {
      return Infeasible{limit, count,
                        "no valid reuse pair left at " + std::to_string(count) + " qubits"};
    }
    auto ranked = ranker.rank(dag, pairs, std::move(cands));
    std::optional<ReusePair> chosen;
    if (count > target) {
      for (const auto& c : ranked) {
        insert_reuse_node(dag, c, options.durations.reset);
        auto w = complete();
        dag.pop_node();
        if (w.wires <= target) {
          chosen = c;
          witness = std::move(w);
          break;
        }
      }
      if (!chosen) {
        for (const auto& c : ranked) {
          auto it = std::find(witness.pairs.begin(), witness.pairs.end(), c);
          if (it != witness.pairs.end()) {
            chosen = c;
            witness.pairs.erase(it);
            break;
          }
        }
      }
    }
    if (!chosen) chosen = ranked.front();
    insert_reuse_node(dag, *chosen, options.durations.reset);
    pairs.push_back(*chosen);
    --count;
    if (on_step || count <= limit) {
      current = ranker.result(pairs, chosen);
      if (on_step) on_step(*current);
    }
  }
  return std::move(*current);
}

}  // namespace

Completion low_liveness_completion(const Circuit& circuit, const DependencyDag& dag) {
  const int nq = circuit.num_qubits;
  // Qubits already joined by reuse form one unit; its wire stays busy from
  // the first gate of its head to the last gate of its tail.
  std::vector<int> unit(static_cast<std::size_t>(nq));
  std::vector<int> tail(static_cast<std::size_t>(nq));
  std::vector<int> remaining(static_cast<std::size_t>(nq), 0);
  for (int q = 0; q < nq; ++q) {
    int h = q;
    while (auto d = dag.dummy_into(h)) h = dag.node(*d).dummy->producer;
    unit[q] = h;
  }
  for (int q = 0; q < nq; ++q) {
    if (unit[q] != q) continue;
    int t = q;
    while (auto d = dag.dummy_out_of(t)) t = dag.node(*d).dummy->consumer;
    tail[q] = t;
  }
  for (int q = 0; q < nq; ++q) remaining[unit[q]] += static_cast<int>(dag.nodes_on_qubit(q).size());

  std::vector<int> indeg(static_cast<std::size_t>(dag.size()));
  std::set<int> ready;
  for (int v = 0; v < dag.size(); ++v) {
    indeg[v] = static_cast<int>(dag.predecessors(v).size());
    if (indeg[v] == 0) ready.insert(v);
  }
  std::vector<bool> started(static_cast<std::size_t>(nq), false);
  auto units_of = [&](int v) {
    std::vector<int> out;
    const auto& node = dag.node(v);
    if (node.dummy) return out;
    for (int q : circuit.instructions[node.instruction].qubits) out.push_back(unit[q]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };

  Completion out;
  std::vector<int> wire_tail;  // last tenant of a free wire, -1 while busy
  std::vector<int> wire_of(static_cast<std::size_t>(nq), -1);
  int live = 0;
  while (!ready.empty()) {
    // Fewest new qubits, then most qubits finished, then most live qubits
    // advanced.
    int best = -1;
    std::tuple<int, int, int> best_key;
    for (int v : ready) {
      int starts = 0;
      int ends = 0;
      const auto us = units_of(v);
      for (int u : us) {
        starts += started[u] ? 0 : 1;
        ends += remaining[u] == 1 ? 1 : 0;
      }
      const int advanced = static_cast<int>(us.size()) - starts;
      std::tuple<int, int, int> key{starts, -ends, -advanced};
      if (best < 0 || key < best_key) {
        best = v;
        best_key = key;
      }
      if (starts == 0 && ends > 0) break;
    }
    ready.erase(best);
    for (int u : units_of(best)) {
      if (!started[u]) {
        started[u] = true;
        int w = -1;
        for (int i = 0; i < static_cast<int>(wire_tail.size()); ++i) {
          if (wire_tail[i] >= 0) {
            w = i;
            break;
          }
        }
        if (w < 0) {
          w = static_cast<int>(wire_tail.size());
          wire_tail.push_back(-1);
        }
        if (wire_tail[w] >= 0) out.pairs.push_back({wire_tail[w], u});
        wire_tail[w] = -1;
        wire_of[u] = w;
        ++live;
        out.wires = std::max(out.wires, live);
      }
    }
    // Release only after every operand holds a wire, so no operand lands on
    // the wire of another.
    for (int u : units_of(best)) {
      if (--remaining[u] == 0) {
        wire_tail[wire_of[u]] = tail[u];
        --live;
      }
    }
    for (int s : dag.successors(best)) {
      if (--indeg[s] == 0) ready.insert(s);
    }
  }
  // Units without gates ride on any wire.
  for (int q = 0; q < nq; ++q) {
    if (unit[q] != q || started[q]) continue;
    if (wire_tail.empty()) {
      wire_tail.push_back(tail[q]);
      out.wires = 1;
      continue;
    }
    if (wire_tail[0] >= 0) out.pairs.push_back({wire_tail[0], q});
    wire_tail[0] = tail[q];
  }
  return out;
}


Completion exact_completion(const Circuit& circuit, const DependencyDag& start) {
  const int nq = circuit.num_qubits;
  Completion best = low_liveness_completion(circuit, start);
  int joined = 0;
  for (int q = 0; q < nq; ++q) joined += start.dummy_into(q) ? 1 : 0;
  DependencyDag dag = start;
  std::vector<ReusePair> path;
  std::set<std::vector<int>> seen;
  std::vector<int> next(static_cast<std::size_t>(nq), -1);
  std::function<void()> dfs = [&] {
    const int wires = nq - joined - static_cast<int>(path.size());
    if (wires < best.wires) best = {wires, path};
    if (best.wires <= 1) return;
    if (!seen.insert(next).second) return;
    for (const auto& p : enumerate_candidates(circuit, dag)) {
      insert_reuse_node(dag, p, 1.0);
      path.push_back(p);
      next[p.producer] = p.consumer;
      dfs();
      next[p.producer] = -1;
      path.pop_back();
      dag.pop_node();
      if (best.wires <= 1) return;
    }
  };
  dfs();
  return best;
}

ReduceOutcome reduce_to_limit(const Circuit& circuit, int limit, const QsOptions& options) {
  return greedy(circuit, limit, options, nullptr);
}

CommutingSchedule schedule_commuting(const Circuit& circuit,
                                     const std::vector<ReusePair>& pairs,
                                     const DurationModel& durations) {
  const int nq = circuit.num_qubits;
  DependencyDag dag = build_dag(circuit, durations);
  for (const auto& p : pairs) apply_reuse_pair_in_place(dag, circuit, p, durations.reset);

  std::vector<int> indeg(static_cast<std::size_t>(dag.size()));
  for (int v = 0; v < dag.size(); ++v) indeg[v] = static_cast<int>(dag.predecessors(v).size());
  auto is_group = [&](int v) {
    const auto& node = dag.node(v);
    return !node.dummy && circuit.instructions[node.instruction].commuting_group.has_value();
  };

  CommutingSchedule out;
  out.ordered = Circuit(nq, circuit.num_clbits, circuit.name);
  out.ordered.scratch_clbits = circuit.scratch_clbits;
  std::vector<bool> done(static_cast<std::size_t>(dag.size()), false);
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  std::set<int> available;

  auto emit = [&](int v) {
    done[v] = true;
    const auto& node = dag.node(v);
    if (!node.dummy) {
      const auto& inst = circuit.instructions[node.instruction];
      out.ordered.append(inst.kind, inst.qubits, inst.clbits, inst.theta);
    }
    for (int s : dag.successors(v)) {
      if (--indeg[s] == 0) {
        if (is_group(s)) {
          available.insert(s);
        } else {
          ready.push(s);
        }
      }
    }
  };
  auto drain = [&] {
    while (!ready.empty()) {
      int v = ready.top();
      ready.pop();
      emit(v);
    }
  };
  for (int v = 0; v < dag.size(); ++v) {
    if (indeg[v] == 0) {
      if (is_group(v)) {
        available.insert(v);
      } else {
        ready.push(v);
      }
    }
  }
  drain();

  const std::int64_t scale = nq + 1;
  while (!available.empty()) {
    const auto e_int = static_cast<std::int64_t>(available.size());
    std::vector<bool> owes(static_cast<std::size_t>(nq), false);
    for (int q = 0; q < nq; ++q) {
      auto d = dag.dummy_out_of(q);
      owes[q] = d && !done[*d];
    }
    // One candidate gate per qubit pair: the heaviest, then the earliest.
    std::map<std::pair<int, int>, std::pair<std::int64_t, int>> best;
    for (int v : available) {
      const auto& qs = circuit.instructions[dag.node(v).instruction].qubits;
      std::int64_t w = (owes[qs[0]] || owes[qs[1]]) ? e_int : 1;
      auto key = std::minmax(qs[0], qs[1]);
      auto it = best.find(key);
      if (it == best.end() || w > it->second.first) best[key] = {w, v};
    }
    std::vector<WeightedEdge> edges;
    std::vector<int> gate_of;
    for (const auto& [key, wv] : best) {
      edges.push_back({key.first, key.second, wv.first * scale + 1});
      gate_of.push_back(wv.second);
    }
    auto mate = max_weight_matching(nq, edges);
    std::vector<int> layer;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (mate[edges[k].u] == edges[k].v) layer.push_back(gate_of[k]);
    }
    std::sort(layer.begin(), layer.end());
    std::vector<int> ids;
    for (int v : layer) {
      available.erase(v);
      ids.push_back(circuit.instructions[dag.node(v).instruction].id);
      emit(v);
    }
    out.layers.push_back(std::move(ids));
    drain();
  }
  if (std::find(done.begin(), done.end(), false) != done.end()) {
    throw CycleError("reuse pairs leave a dependency cycle");
  }
  out.result = finish(materialize(out.ordered, pairs), pairs, durations);
  out.result.ordered = out.ordered;
  return out;
}

int min_qubits(const Circuit& circuit, const QsOptions& options) {
  if (circuit.num_qubits == 0) return 0;
  auto r = reduce_to_limit(circuit, 1, options);
  if (auto* ok = std::get_if<TransformResult>(&r)) return ok->qubits;
  return std::get<Infeasible>(r).reached;
}

std::vector<SweepPoint> sweep(const Circuit& circuit, const QsOptions& options,
                              const Architecture* arch) {
  std::vector<SweepPoint> out;
  if (circuit.num_qubits == 0) return out;
  greedy(circuit, 1, options, [&](const TransformResult& t) {
    SweepPoint sp;
    sp.transform = t;
    sp.point.qubits = t.qubits;
    sp.point.depth = t.depth;
    sp.point.duration = t.duration;
    out.push_back(std::move(sp));
  });
  // A later point's gate order also serves the smaller pair set before it;
  // keep it when it schedules shallower.
  if (circuit.has_commuting_group()) {
    for (std::size_t i = out.size(); i-- > 1;) {
      const auto& later = out[i].transform;
      auto& earlier = out[i - 1].transform;
      auto alt = finish(materialize(*later.ordered, earlier.pairs), earlier.pairs, options.durations);
      if (std::pair(alt.depth, alt.duration) < std::pair(earlier.depth, earlier.duration)) {
        alt.ordered = later.ordered;
        earlier = std::move(alt);
        out[i - 1].point.depth = earlier.depth;
        out[i - 1].point.duration = earlier.duration;
      }
    }
  }
  if (arch) {
    MapOptions mo;
    mo.reclaim = false;
    for (auto& sp : out) {
      auto mapped = map_regular(sp.transform.circuit, *arch, mo);
      if (auto* m = std::get_if<MappedResult>(&mapped)) {
        sp.point.swaps = m->swaps;
        sp.point.esp = m->esp;
        sp.physical = m->physical;
      }
    }
  }
  return out;
}

std::vector<TradeoffPoint> points_of(const std::vector<SweepPoint>& sweep) {
  std::vector<TradeoffPoint> out;
  for (const auto& s : sweep) out.push_back(s.point);
  return out;
}

std::string tradeoff_csv(const std::vector<TradeoffPoint>& points) {
  std::ostringstream out;
  out << "qubits,depth,duration_dt,swaps,esp\n";
  auto sorted = points;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const TradeoffPoint& a, const TradeoffPoint& b) { return a.qubits > b.qubits; });
  for (const auto& p : sorted) {
    out << p.qubits << ',' << p.depth << ',' << p.duration << ',';
    if (p.swaps) out << *p.swaps;
    out << ',';
    if (p.esp) out << *p.esp;
    out << '\n';
  }
  return out.str();
}

}  // namespace caqr
