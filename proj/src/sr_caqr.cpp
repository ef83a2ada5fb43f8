#include "caqr/sr_caqr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "caqr/cost.hpp"
#include "caqr/dag.hpp"
#include "caqr/error.hpp"

namespace caqr {

MappingState::MappingState(int num_logical, int num_physical)
    : phys_(static_cast<std::size_t>(num_logical), -1),
      content_(static_cast<std::size_t>(num_physical), -1),
      retired_(static_cast<std::size_t>(num_logical), false),
      free_(static_cast<std::size_t>(num_physical), true),
      used_(static_cast<std::size_t>(num_physical), false) {}

std::vector<int> MappingState::free_list() const {
  std::vector<int> out;
  for (int p = 0; p < num_physical(); ++p) {
    if (free_[p]) out.push_back(p);
  }
  return out;
}

void MappingState::place(int logical, int physical) {
  if (content_[physical] != -1 || phys_[logical] != -1 || retired_[logical]) {
    throw InvalidArgument("cannot place q" + std::to_string(logical) + " on Q" +
                          std::to_string(physical));
  }
  phys_[logical] = physical;
  content_[physical] = logical;
  free_[physical] = false;
  used_[physical] = true;
}

void MappingState::retire(int logical, bool release) {
  retired_[logical] = true;
  if (release && phys_[logical] >= 0) free_[phys_[logical]] = true;
}

void MappingState::apply_swap(int a, int b) {
  std::swap(content_[a], content_[b]);
  bool fa = free_[a];
  free_[a] = free_[b];
  free_[b] = fa;
  used_[a] = used_[b] = true;
  if (content_[a] >= 0) phys_[content_[a]] = a;
  if (content_[b] >= 0) phys_[content_[b]] = b;
}

void MappingState::clear(int physical) {
  int l = content_[physical];
  if (l >= 0) {
    phys_[l] = -1;
    content_[physical] = -1;
  }
}

std::vector<int> lowest_error_shortest_path(const Architecture& arch,
                                            const DistanceTable& dist, int from, int to) {
  const int d = dist[from][to];
  if (d < 0) throw InvalidArgument("physical qubits are not connected");
  const auto adj = arch.graph.adjacency();
  // Nodes on some shortest path, bucketed by distance from `from`.
  std::vector<std::vector<int>> layers(static_cast<std::size_t>(d) + 1);
  for (int v = 0; v < arch.graph.num_physical; ++v) {
    if (dist[from][v] >= 0 && dist[v][to] >= 0 && dist[from][v] + dist[v][to] == d) {
      layers[dist[from][v]].push_back(v);
    }
  }
  std::vector<double> cost(static_cast<std::size_t>(arch.graph.num_physical),
                           std::numeric_limits<double>::infinity());
  std::vector<int> prev(static_cast<std::size_t>(arch.graph.num_physical), -1);
  cost[from] = 0.0;
  for (int i = 1; i <= d; ++i) {
    for (int v : layers[i]) {
      for (int u : adj[v]) {
        if (dist[from][u] != i - 1 || !std::isfinite(cost[u])) continue;
        double c = cost[u] + arch.calibration.cx_error_on(u, v);
        if (c < cost[v] - 1e-15 || (std::abs(c - cost[v]) <= 1e-15 && u < prev[v])) {
          cost[v] = c;
          prev[v] = u;
        }
      }
    }
  }
  std::vector<int> path;
  for (int v = to; v != -1; v = prev[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

namespace {

int pair_distance_sum(const MappingState& s, const DistanceTable& dist,
                      const std::vector<std::pair<int, int>>& others) {
  int total = 0;
  for (auto [a, b] : others) {
    if (s.placed(a) && s.placed(b)) total += dist[s.physical_of(a)][s.physical_of(b)];
  }
  return total;
}

std::vector<std::pair<int, int>> meet_swaps(const std::vector<int>& path, int k) {
  std::vector<std::pair<int, int>> swaps;
  const int d = static_cast<int>(path.size()) - 1;
  for (int i = 0; i < k; ++i) swaps.emplace_back(path[i], path[i + 1]);
  for (int i = d; i > k + 1; --i) swaps.emplace_back(path[i], path[i - 1]);
  return swaps;
}

}  // namespace

std::vector<std::pair<int, int>> insert_swaps_for_gate(
    MappingState& state, int logical_a, int logical_b, const Architecture& arch,
    const DistanceTable& dist, const std::vector<std::pair<int, int>>& others) {
  if (!state.placed(logical_a) || !state.placed(logical_b)) {
    throw InvalidArgument("both operands must be placed before routing");
  }
  const int pa = state.physical_of(logical_a);
  const int pb = state.physical_of(logical_b);
  if (dist[pa][pb] <= 1) return {};
  const auto path = lowest_error_shortest_path(arch, dist, pa, pb);
  const int d = static_cast<int>(path.size()) - 1;
  int best_k = 0;
  int best_penalty = std::numeric_limits<int>::max();
  for (int k = 0; k < d; ++k) {
    MappingState trial = state;
    for (auto [x, y] : meet_swaps(path, k)) trial.apply_swap(x, y);
    int penalty = pair_distance_sum(trial, dist, others);
    if (penalty < best_penalty) {
      best_penalty = penalty;
      best_k = k;
    }
  }
  auto swaps = meet_swaps(path, best_k);
  for (auto [x, y] : swaps) state.apply_swap(x, y);
  return swaps;
}

namespace {

constexpr int kCleanReset = -2;
constexpr int kScratchReset = -1;

class Mapper {
 public:
  Mapper(const Circuit& circuit, const Architecture& arch, const std::vector<ReusePair>& pairs,
         const MapOptions& options)
      : c_(circuit),
        arch_(arch),
        opt_(options),
        dist_(all_pairs_distance(arch.graph)),
        adj_(arch.graph.adjacency()),
        state_(circuit.num_qubits, arch.graph.num_physical),
        per_qubit_(instructions_per_qubit(circuit)) {
    circuit.validate();
    dag_ = build_dag(circuit, DurationModel::unit());
    for (const auto& p : pairs) apply_reuse_pair_in_place(dag_, circuit, p, 1.0);
    if (detect_cycle(dag_)) throw InvalidArgument("reuse pairs leave a dependency cycle");
    tail_ = longest_path_from(dag_, dag_.weights());

    const int nq = circuit.num_qubits;
    remaining_.resize(static_cast<std::size_t>(nq));
    cursor_.assign(static_cast<std::size_t>(nq), 0);
    buffer_.resize(static_cast<std::size_t>(nq));
    reset_kind_.assign(static_cast<std::size_t>(nq), kScratchReset);
    handed_on_.assign(static_cast<std::size_t>(nq), false);
    pinned_.assign(static_cast<std::size_t>(nq), false);
    for (int q = 0; q < nq; ++q) remaining_[q] = static_cast<int>(per_qubit_[q].size());
    for (const auto& p : pairs) {
      handed_on_[p.producer] = true;
      pinned_[p.producer] = pinned_[p.consumer] = true;
    }
    if (circuit.has_commuting_group()) {
      auto adj = InteractionGraph::from_circuit(circuit).simple_adjacency();
      std::size_t max_deg = 0;
      for (const auto& a : adj) max_deg = std::max(max_deg, a.size());
      for (int q = 0; q < nq; ++q) {
        if (max_deg > 0 && adj[q].size() + 1 >= max_deg) pinned_[q] = true;
      }
    }
    last_clbit_touch_.assign(static_cast<std::size_t>(circuit.num_clbits), -1);
    for (const auto& inst : circuit.instructions) {
      for (int b : inst.clbits) last_clbit_touch_[b] = &inst - circuit.instructions.data();
    }

    out_ = Circuit(arch.graph.num_physical, circuit.num_clbits, circuit.name);
    out_.scratch_clbits = circuit.scratch_clbits;
    indeg_.resize(static_cast<std::size_t>(dag_.size()));
    done_.assign(static_cast<std::size_t>(dag_.size()), false);
    for (int v = 0; v < dag_.size(); ++v) {
      indeg_[v] = static_cast<int>(dag_.predecessors(v).size());
      if (indeg_[v] == 0) ready_.insert(v);
    }
  }

  MapOutcome run() {
    while (!ready_.empty()) {
      drain();
      if (ready_.empty()) break;

      std::vector<int> need_place;
      std::vector<int> blocked;
      double max_tail = 0.0;
      for (int v : ready_) {
        max_tail = std::max(max_tail, tail_[v]);
        const auto& inst = instruction(v);
        if (all_placed(inst)) {
          blocked.push_back(v);
        } else {
          need_place.push_back(v);
        }
      }
      std::stable_sort(need_place.begin(), need_place.end(),
                       [&](int a, int b) { return tail_[a] > tail_[b]; });
      bool placed_any = false;
      std::string stuck;
      for (int v : need_place) {
        if (opt_.delay && delayable(v) && tail_[v] < max_tail - 1e-9 &&
            (placed_any || !blocked.empty())) {
          continue;
        }
        if (place_operands(v)) {
          placed_any = true;
        } else if (stuck.empty()) {
          stuck = "no free physical qubit for instruction " + std::to_string(v);
        }
      }
      if (placed_any) continue;
      if (!blocked.empty()) {
        int v = *std::max_element(blocked.begin(), blocked.end(), [&](int a, int b) {
          return tail_[a] < tail_[b] || (tail_[a] == tail_[b] && a > b);
        });
        route(v, blocked);
        continue;
      }
      int live = 0;
      for (int q = 0; q < c_.num_qubits; ++q) live += state_.placed(q) ? 1 : 0;
      return Infeasible{arch_.graph.num_physical, live, stuck};
    }
    return finish();
  }

 private:
  const Instruction& instruction(int v) const {
    return c_.instructions[dag_.node(v).instruction];
  }

  bool all_placed(const Instruction& inst) const {
    return std::all_of(inst.qubits.begin(), inst.qubits.end(),
                       [&](int q) { return state_.placed(q); });
  }

  bool delayable(int v) const {
    const auto& inst = instruction(v);
    return std::none_of(inst.qubits.begin(), inst.qubits.end(),
                        [&](int q) { return pinned_[q]; });
  }

  // Runs every ready node that needs neither a placement nor a SWAP.
  void drain() {
    bool progress = true;
    while (progress) {
      progress = false;
      for (auto it = ready_.begin(); it != ready_.end();) {
        int v = *it;
        if (try_execute(v)) {
          it = ready_.erase(it);
          complete(v);
          progress = true;
        } else {
          ++it;
        }
      }
    }
  }

  bool try_execute(int v) {
    const auto& node = dag_.node(v);
    if (node.dummy) {
      hand_over(node.dummy->producer, node.dummy->consumer);
      return true;
    }
    const auto& inst = c_.instructions[node.instruction];
    if (all_placed(inst)) {
      if (inst.qubits.size() == 2 &&
          !arch_.graph.adjacent(state_.physical_of(inst.qubits[0]),
                                state_.physical_of(inst.qubits[1]))) {
        return false;
      }
      std::vector<int> phys;
      for (int q : inst.qubits) phys.push_back(state_.physical_of(q));
      emit(inst.kind, phys, inst.clbits, inst.theta, false);
      return true;
    }
    // Leading single-qubit unitaries wait for the qubit's placement.
    if (inst.qubits.size() == 1 && is_single_qubit_gate(inst.kind) &&
        remaining_[inst.qubits[0]] > 1) {
      buffer_[inst.qubits[0]].push_back(node.instruction);
      return true;
    }
    return false;
  }

  void complete(int v) {
    done_[v] = true;
    for (int s : dag_.successors(v)) {
      if (--indeg_[s] == 0) ready_.insert(s);
    }
    const auto& node = dag_.node(v);
    if (node.dummy) return;
    const auto& inst = c_.instructions[node.instruction];
    for (int q : inst.qubits) {
      ++cursor_[q];
      if (--remaining_[q] == 0) retire(q, node.instruction);
    }
  }

  void retire(int q, int last) {
    const auto& inst = c_.instructions[last];
    if (inst.kind == GateKind::RESET) {
      reset_kind_[q] = kCleanReset;
    } else if (inst.kind == GateKind::MEASURE && last_clbit_touch_[inst.clbits[0]] == last) {
      reset_kind_[q] = inst.clbits[0];
    }
    history_.push_back({PlacementEvent::Kind::retire, static_cast<int>(out_.instructions.size()), q,
                        state_.physical_of(q)});
    state_.retire(q, opt_.reclaim && !handed_on_[q]);
    if (reset_kind_[q] == kCleanReset && !handed_on_[q]) state_.clear(state_.physical_of(q));
  }

  void hand_over(int producer, int consumer) {
    int p = state_.physical_of(producer);
    if (p < 0) {
      // The producer never touched hardware; start the consumer like any other.
      return;
    }
    settle(p);
    put(consumer, p);
  }

  void emit(GateKind kind, const std::vector<int>& qubits, const std::vector<int>& clbits,
            double theta, bool inserted) {
    out_.append(kind, qubits, clbits, theta);
    inserted_.push_back(inserted);
  }

  // Resets the retired occupant of physical qubit p, if any.
  void settle(int p) {
    int l = state_.content_of(p);
    if (l < 0) return;
    int kind = reset_kind_[l];
    if (kind >= 0) {
      emit(GateKind::CX_CLASSICAL, {p}, {kind}, 0.0, true);
    } else if (kind == kScratchReset) {
      int bit = out_.num_clbits++;
      out_.scratch_clbits.push_back(bit);
      emit(GateKind::MEASURE, {p}, {bit}, 0.0, true);
      emit(GateKind::CX_CLASSICAL, {p}, {bit}, 0.0, true);
    }
    state_.clear(p);
  }

  void put(int q, int p) {
    settle(p);
    state_.place(q, p);
    history_.push_back(
        {PlacementEvent::Kind::place, static_cast<int>(out_.instructions.size()), q, p});
    for (int i : buffer_[q]) {
      const auto& inst = c_.instructions[i];
      emit(inst.kind, {p}, inst.clbits, inst.theta, false);
    }
    buffer_[q].clear();
  }

  std::vector<int> upcoming_partners(int q) const {
    std::vector<int> out;
    for (std::size_t i = static_cast<std::size_t>(cursor_[q]);
         i < per_qubit_[q].size() && static_cast<int>(out.size()) < opt_.lookahead; ++i) {
      const auto& inst = c_.instructions[per_qubit_[q][i]];
      if (inst.qubits.size() == 2) out.push_back(inst.qubits[0] == q ? inst.qubits[1] : inst.qubits[0]);
    }
    return out;
  }

  bool has_two_qubit_future(int q) const {
    for (std::size_t i = static_cast<std::size_t>(cursor_[q]); i < per_qubit_[q].size(); ++i) {
      if (c_.instructions[per_qubit_[q][i]].qubits.size() == 2) return true;
    }
    return false;
  }

  int free_neighbours(int p) const {
    int n = 0;
    for (int u : adj_[p]) n += state_.is_free(u) ? 1 : 0;
    return n;
  }

  // Free qubit with the best lookahead score.
  int choose_by_score(int q) const {
    const auto partners = upcoming_partners(q);
    const bool isolated = !has_two_qubit_future(q);
    int best = -1;
    std::tuple<double, double, int> best_key;
    for (int p : state_.free_list()) {
      double score;
      if (isolated) {
        score = -free_neighbours(p);
      } else {
        double sum = 0.0;
        int n = 0;
        for (int o : partners) {
          if (state_.placed(o)) {
            sum += dist_[p][state_.physical_of(o)];
            ++n;
          }
        }
        score = free_neighbours(p) - (n ? opt_.alpha * sum / n : 0.0);
      }
      std::tuple<double, double, int> key{-score, arch_.calibration.readout(p),
                                          state_.ever_used(p) ? 0 : 1};
      if (best < 0 || key < best_key) {
        best = p;
        best_key = key;
      }
    }
    return best;
  }

  // Free qubit closest to `anchor`.
  int choose_near(int anchor) const {
    int best = -1;
    std::tuple<int, double, double, int> best_key;
    for (int p : state_.free_list()) {
      const int d = dist_[p][anchor];
      double err = std::numeric_limits<double>::infinity();
      for (int u : adj_[p]) {
        if (dist_[u][anchor] == d - 1) err = std::min(err, arch_.calibration.cx_error_on(p, u));
      }
      std::tuple<int, double, double, int> key{d, arch_.calibration.readout(p), err,
                                               state_.ever_used(p) ? 0 : 1};
      if (best < 0 || key < best_key) {
        best = p;
        best_key = key;
      }
    }
    return best;
  }

  bool place_operands(int v) {
    const auto& inst = instruction(v);
    std::vector<int> missing;
    for (int q : inst.qubits) {
      if (!state_.placed(q)) missing.push_back(q);
    }
    if (missing.empty()) return true;
    if (static_cast<int>(state_.free_list().size()) < static_cast<int>(missing.size())) {
      return false;
    }
    if (missing.size() == 2) {
      std::stable_sort(missing.begin(), missing.end(),
                       [&](int a, int b) { return remaining_[a] > remaining_[b]; });
      put(missing[0], choose_by_score(missing[0]));
      put(missing[1], choose_near(state_.physical_of(missing[0])));
    } else if (inst.qubits.size() == 2) {
      int other = inst.qubits[0] == missing[0] ? inst.qubits[1] : inst.qubits[0];
      put(missing[0], choose_near(state_.physical_of(other)));
    } else {
      put(missing[0], choose_by_score(missing[0]));
    }
    return true;
  }

  void route(int v, const std::vector<int>& blocked) {
    const auto& inst = instruction(v);
    std::vector<std::pair<int, int>> others;
    for (int b : blocked) {
      if (b == v) continue;
      const auto& o = instruction(b);
      others.emplace_back(o.qubits[0], o.qubits[1]);
    }
    for (auto [x, y] : insert_swaps_for_gate(state_, inst.qubits[0], inst.qubits[1], arch_, dist_, others)) {
      emit(GateKind::SWAP, {x, y}, {}, 0.0, true);
      ++swaps_;
    }
  }

  MapOutcome finish() {
    MappedResult r;
    r.swaps = swaps_;
    r.depth = circuit_depth(out_);
    r.duration = circuit_duration(out_, arch_.calibration);
    r.esp = estimated_success_probability(out_, arch_.calibration);
    for (int p = 0; p < out_.num_qubits; ++p) r.physical_qubits_used += state_.ever_used(p) ? 1 : 0;
    r.physical = std::move(out_);
    r.history = std::move(history_);
    r.inserted = std::move(inserted_);
    return r;
  }

  const Circuit& c_;
  const Architecture& arch_;
  MapOptions opt_;
  DistanceTable dist_;
  std::vector<std::vector<int>> adj_;
  MappingState state_;
  std::vector<std::vector<int>> per_qubit_;
  DependencyDag dag_;
  std::vector<double> tail_;
  std::vector<int> remaining_;
  std::vector<int> cursor_;
  std::vector<std::vector<int>> buffer_;
  std::vector<int> reset_kind_;
  std::vector<bool> handed_on_;
  std::vector<bool> pinned_;
  std::vector<long> last_clbit_touch_;
  std::vector<int> indeg_;
  std::vector<bool> done_;
  std::set<int> ready_;
  Circuit out_;
  std::vector<bool> inserted_;
  std::vector<PlacementEvent> history_;
  int swaps_ = 0;
};

void check_connected(const Architecture& arch) {
  if (!arch.graph.connected()) throw InvalidArgument("coupling graph is not connected");
}

}  // namespace

MapOutcome map_regular(const Circuit& circuit, const Architecture& arch, const MapOptions& options) {
  if (circuit.has_commuting_group()) {
    throw InvalidArgument("map_regular expects a circuit without commuting groups");
  }
  check_connected(arch);
  return Mapper(circuit, arch, {}, options).run();
}

MapOutcome map_commuting(const Circuit& circuit, const Architecture& arch,
                         const std::vector<ReusePair>& pairs, const MapOptions& options) {
  check_connected(arch);
  return Mapper(circuit, arch, pairs, options).run();
}

MapOutcome map_circuit(const Circuit& circuit, const Architecture& arch, const MapOptions& options) {
  return circuit.has_commuting_group() ? map_commuting(circuit, arch, {}, options)
                                       : map_regular(circuit, arch, options);
}

MapOutcome route_without_reuse(const Circuit& circuit, const Architecture& arch) {
  MapOptions o;
  o.reclaim = false;
  o.delay = false;
  return map_circuit(circuit, arch, o);
}

std::optional<SrChoice> map_min_swap(const Circuit& circuit, const Architecture& arch,
                                     const QsOptions& qs, const MapOptions& options) {
  std::optional<SrChoice> best;
  auto consider = [&](MapOutcome outcome, const TransformResult& t, const Circuit& logical) {
    auto* m = std::get_if<MappedResult>(&outcome);
    if (!m) return;
    if (!best || m->swaps < best->mapped.swaps ||
        (m->swaps == best->mapped.swaps && m->duration < best->mapped.duration)) {
      best = SrChoice{std::move(*m), t.pairs, t.qubits, logical};
    }
  };
  for (const auto& point : sweep(circuit, qs)) {
    if (circuit.has_commuting_group()) {
      consider(map_commuting(circuit, arch, point.transform.pairs, options), point.transform,
               circuit);
    } else {
      consider(map_regular(point.transform.circuit, arch, options), point.transform,
               point.transform.circuit);
    }
  }
  return best;
}

std::vector<std::string> verify_mapping(const Circuit& logical, const Architecture& arch,
                                        const MappedResult& mapped) {
  std::vector<std::string> problems;
  const auto& phys = mapped.physical;
  if (phys.num_qubits != arch.graph.num_physical) {
    problems.push_back("physical circuit width differs from the architecture");
    return problems;
  }
  if (mapped.inserted.size() != phys.instructions.size()) {
    problems.push_back("inserted mask does not cover the physical circuit");
    return problems;
  }
  const auto per_qubit = instructions_per_qubit(logical);
  std::vector<int> content(static_cast<std::size_t>(phys.num_qubits), -1);
  std::vector<int> state(static_cast<std::size_t>(logical.num_qubits), 0);  // 0 new, 1 live, 2 retired
  std::vector<int> where(static_cast<std::size_t>(logical.num_qubits), -1);

  using Key = std::tuple<GateKind, std::vector<int>, std::vector<int>, long long>;
  auto key_of = [](GateKind k, std::vector<int> q, std::vector<int> b, double theta) {
    return Key{k, std::move(q), std::move(b), std::llround(theta * 1e9)};
  };
  std::multiset<Key> expected;
  for (const auto& inst : logical.instructions) {
    expected.insert(key_of(inst.kind, inst.qubits, inst.clbits, inst.theta));
  }

  std::size_t next_event = 0;
  auto apply_events = [&](int position) {
    while (next_event < mapped.history.size() && mapped.history[next_event].position <= position) {
      const auto& e = mapped.history[next_event++];
      const std::string who = "q" + std::to_string(e.logical);
      if (e.logical < 0 || e.logical >= logical.num_qubits || e.physical < 0 ||
          e.physical >= phys.num_qubits) {
        problems.push_back("event out of range for " + who);
        continue;
      }
      if (e.kind == PlacementEvent::Kind::place) {
        if (state[e.logical] != 0) problems.push_back(who + " placed twice");
        if (content[e.physical] != -1) {
          problems.push_back(who + " placed on Q" + std::to_string(e.physical) +
                             " before its previous state was reset");
        }
        content[e.physical] = e.logical;
        where[e.logical] = e.physical;
        state[e.logical] = 1;
      } else {
        if (state[e.logical] != 1 || where[e.logical] != e.physical) {
          problems.push_back(who + " retired while not live on Q" + std::to_string(e.physical));
        }
        state[e.logical] = 2;
        const auto& mine = per_qubit[e.logical];
        if (!mine.empty() && logical.instructions[mine.back()].kind == GateKind::RESET) {
          content[e.physical] = -1;
        }
      }
    }
  };

  for (std::size_t i = 0; i < phys.instructions.size(); ++i) {
    apply_events(static_cast<int>(i));
    const auto& inst = phys.instructions[i];
    if (inst.qubits.size() == 2 && !arch.graph.adjacent(inst.qubits[0], inst.qubits[1])) {
      problems.push_back("instruction " + std::to_string(i) + " acts on a non-edge");
    }
    if (mapped.inserted[i]) {
      if (inst.kind == GateKind::SWAP) {
        int a = inst.qubits[0], b = inst.qubits[1];
        std::swap(content[a], content[b]);
        if (content[a] >= 0) where[content[a]] = a;
        if (content[b] >= 0) where[content[b]] = b;
        continue;
      }
      int p = inst.qubits[0];
      int l = content[p];
      if (l >= 0 && state[l] == 1) {
        problems.push_back("reset " + std::to_string(i) + " hits live q" + std::to_string(l));
      }
      if (inst.kind == GateKind::CX_CLASSICAL) content[p] = -1;
      continue;
    }
    std::vector<int> lq;
    for (int p : inst.qubits) {
      int l = content[p];
      if (l < 0 || state[l] != 1) {
        problems.push_back("instruction " + std::to_string(i) + " touches Q" + std::to_string(p) +
                           " without a live logical qubit");
      }
      lq.push_back(l);
    }
    auto it = expected.find(key_of(inst.kind, lq, inst.clbits, inst.theta));
    if (it == expected.end()) {
      problems.push_back("instruction " + std::to_string(i) + " has no logical counterpart");
    } else {
      expected.erase(it);
    }
  }
  apply_events(std::numeric_limits<int>::max());
  if (!expected.empty()) {
    problems.push_back(std::to_string(expected.size()) + " logical instructions missing");
  }
  return problems;
}

}  // namespace caqr
