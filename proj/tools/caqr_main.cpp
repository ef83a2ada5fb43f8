#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "caqr/cost.hpp"
#include "caqr/dag.hpp"
#include "caqr/error.hpp"
#include "caqr/generators.hpp"
#include "caqr/io.hpp"
#include "caqr/qasm.hpp"
#include "caqr/qs_caqr.hpp"
#include "caqr/reuse.hpp"
#include "caqr/sr_caqr.hpp"

namespace fs = std::filesystem;
using namespace caqr;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kInfeasible = 2;
constexpr int kMismatch = 3;

struct RunConfig {
  std::string input;
  std::string mode = "qs";
  std::optional<int> qubit_limit;
  std::string arch;
  bool builtin_reset = false;
  std::uint64_t seed = 1;
  std::string out;
  std::string emit_dag;
  int shots = 0;
};

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("caqr");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* env = std::getenv("CAQR_LOG");
  spdlog::set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
}

std::optional<Architecture> load_arch(const RunConfig& cfg) {
  if (cfg.arch.empty()) return std::nullopt;
  auto a = resolve_architecture(cfg.arch, cfg.builtin_reset);
  spdlog::info("architecture {} with {} qubits", a.graph.name, a.graph.num_physical);
  return a;
}

QsOptions qs_options(const RunConfig& cfg, const std::optional<Architecture>& arch) {
  QsOptions o;
  if (arch) {
    o.durations = arch->calibration.durations();
  } else if (cfg.builtin_reset) {
    o.durations = DurationModel::with_builtin_reset();
  }
  return o;
}

// Text goes to `path`, or to stdout when the path is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  write_text_file(path, text);
  spdlog::info("wrote {}", path);
}

std::string stem_of(const std::string& input) { return fs::path(input).stem().string(); }

void write_dag(const RunConfig& cfg, const Circuit& c, const std::vector<ReusePair>& pairs) {
  if (cfg.emit_dag.empty()) return;
  auto dag = build_dag(c);
  for (const auto& p : pairs) apply_reuse_pair_in_place(dag, c, p, 1.0);
  write_text_file(cfg.emit_dag, to_dot(dag, c));
  spdlog::info("wrote DAG to {}", cfg.emit_dag);
}

// Writes <out>/<stem>.qasm and <out>/<stem>.report.json.
void write_artifacts(const RunConfig& cfg, const Circuit& circuit, const Json& report) {
  const fs::path dir = cfg.out.empty() ? fs::path(".") : fs::path(cfg.out);
  fs::create_directories(dir);
  const std::string stem = stem_of(cfg.input);
  write_text_file((dir / (stem + ".qasm")).string(), emit_qasm(circuit));
  write_text_file((dir / (stem + ".report.json")).string(), report.dump(2) + "\n");
  std::cout << report.dump(2) << "\n";
}

int report_infeasible(const Infeasible& inf) {
  spdlog::error("infeasible: limit {}, reached {}: {}", inf.limit, inf.reached, inf.reason);
  std::cerr << "infeasible: " << inf.reason << " (limit " << inf.limit << ", reached "
            << inf.reached << ")\n";
  return kInfeasible;
}

int cmd_transpile(const RunConfig& cfg) {
  if (cfg.mode != "qs" && cfg.mode != "sr") throw InvalidArgument("mode must be qs or sr");
  if (cfg.qubit_limit && *cfg.qubit_limit < 1) throw InvalidArgument("--qubit-limit must be >= 1");
  const Circuit c = read_qasm_file(cfg.input);
  const auto arch = load_arch(cfg);
  if (cfg.mode == "sr" && !arch) throw InvalidArgument("--mode sr needs --arch");
  const auto qs = qs_options(cfg, arch);
  spdlog::info("{}: {} qubits, {} instructions", c.name, c.num_qubits, c.instructions.size());

  if (cfg.mode == "qs") {
    const int limit = cfg.qubit_limit.value_or(1);
    if (limit > c.num_qubits) throw InvalidArgument("--qubit-limit exceeds the circuit width");
    auto r = reduce_to_limit(c, limit, qs);
    if (auto* inf = std::get_if<Infeasible>(&r)) {
      // Without an explicit limit the goal is "as few as possible".
      if (cfg.qubit_limit) return report_infeasible(*inf);
      r = reduce_to_limit(c, inf->reached, qs);
    }
    const auto& t = std::get<TransformResult>(r);
    write_dag(cfg, c, t.pairs);
    std::optional<MappedResult> mapped;
    if (arch) {
      MapOptions mo;
      mo.reclaim = false;
      auto m = map_regular(t.circuit, *arch, mo);
      if (auto* inf = std::get_if<Infeasible>(&m)) return report_infeasible(*inf);
      mapped = std::get<MappedResult>(m);
    }
    write_artifacts(cfg, mapped ? mapped->physical : t.circuit,
                    transform_report(c, t, mapped ? &*mapped : nullptr));
    return kOk;
  }

  // SR: with a limit, map that reuse configuration; otherwise the fewest-SWAP
  // configuration along the qubit-saving trajectory.
  std::vector<ReusePair> pairs;
  MappedResult mapped;
  if (cfg.qubit_limit) {
    if (*cfg.qubit_limit > c.num_qubits) throw InvalidArgument("--qubit-limit exceeds the circuit width");
    auto r = reduce_to_limit(c, *cfg.qubit_limit, qs);
    if (auto* inf = std::get_if<Infeasible>(&r)) return report_infeasible(*inf);
    const auto& t = std::get<TransformResult>(r);
    pairs = t.pairs;
    auto m = c.has_commuting_group() ? map_commuting(c, *arch, pairs) : map_regular(t.circuit, *arch);
    if (auto* inf = std::get_if<Infeasible>(&m)) return report_infeasible(*inf);
    mapped = std::get<MappedResult>(m);
  } else {
    auto choice = map_min_swap(c, *arch, qs);
    if (!choice) {
      return report_infeasible({arch->graph.num_physical, c.num_qubits,
                                "no reuse configuration fits the device"});
    }
    pairs = choice->pairs;
    mapped = std::move(choice->mapped);
  }
  write_dag(cfg, c, pairs);
  write_artifacts(cfg, mapped.physical, mapping_report(c, pairs, mapped));
  return kOk;
}

int cmd_sweep(const RunConfig& cfg) {
  const Circuit c = read_qasm_file(cfg.input);
  const auto arch = load_arch(cfg);
  auto points = sweep(c, qs_options(cfg, arch), arch ? &*arch : nullptr);
  spdlog::info("sweep of {}: {} points", c.name, points.size());
  emit(cfg.out, tradeoff_csv(points_of(points)));
  return kOk;
}

int cmd_simulate(const RunConfig& cfg, const std::string& other, const std::string& wiremap) {
  const Circuit a = read_qasm_file(cfg.input);
  const auto da = simulate_exact(a);
  if (other.empty()) {
    Json j = to_json(da);
    if (cfg.shots > 0) j["counts"] = sample_counts(da, cfg.shots, cfg.seed);
    emit(cfg.out, j.dump(2));
    return kOk;
  }
  const Circuit b = read_qasm_file(other);
  if (!wiremap.empty()) {
    auto report = Json::parse(read_text_file(wiremap));
    auto map = wiremap_from_json(report.contains("wiremap") ? report["wiremap"] : report);
    if (map.num_wires != b.num_qubits || static_cast<int>(map.wire.size()) != a.num_qubits) {
      throw InvalidArgument("wire map does not match the two circuits");
    }
  }
  const auto db = simulate_exact(b);
  const double tvd = total_variation_distance(da, db);
  const bool pass = tvd <= 1e-9;
  Json j = {{"tvd", tvd}, {"pass", pass}, {"a", to_json(da)}, {"b", to_json(db)}};
  emit(cfg.out, j.dump(2));
  std::cerr << (pass ? "PASS" : "FAIL") << " tvd=" << tvd << "\n";
  return pass ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Qubit reuse compiler: qubit saving and SWAP reduction"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--arch", cfg.arch, "heavy-hex-27|heavy-hex-65|heavy-hex-127 or a JSON file");
    sub->add_flag("--builtin-reset", cfg.builtin_reset, "Use the unoptimized reset duration");
    sub->add_option("--seed", cfg.seed, "Random seed");
    sub->add_option("--out", cfg.out, "Output file or directory");
  };

  // gen
  auto* gen = app.add_subcommand("gen", "Generate benchmark circuits and graphs");
  gen->require_subcommand(1);
  int n = 0;
  std::string secret;
  std::string inputs;
  int counterfeit = -1;
  double density = 0.3;
  std::string kind = "random";
  double gamma = 0.4;
  double beta = 0.3;
  std::string graph_in;
  auto* gen_bv_cmd = gen->add_subcommand("bv", "Bernstein-Vazirani circuit");
  gen_bv_cmd->add_option("--n", n, "Total qubits")->required();
  gen_bv_cmd->add_option("--secret", secret, "Hidden string (n-1 bits)");
  gen_bv_cmd->add_option("--out", cfg.out, "Output QASM file");
  auto* gen_cc_cmd = gen->add_subcommand("cc", "Counterfeit-coin circuit");
  gen_cc_cmd->add_option("--n", n, "Total qubits")->required();
  gen_cc_cmd->add_option("--counterfeit", counterfeit, "Index of the counterfeit coin");
  gen_cc_cmd->add_option("--out", cfg.out, "Output QASM file");
  auto* gen_xor_cmd = gen->add_subcommand("xor", "XOR circuit");
  gen_xor_cmd->add_option("--n", n, "Input bits")->required();
  gen_xor_cmd->add_option("--inputs", inputs, "Input bit string");
  gen_xor_cmd->add_option("--out", cfg.out, "Output QASM file");
  auto* gen_graph_cmd = gen->add_subcommand("graph", "Max-cut problem graph as JSON");
  auto* gen_qaoa_cmd = gen->add_subcommand("qaoa", "QAOA max-cut circuit");
  for (auto* sub : {gen_graph_cmd, gen_qaoa_cmd}) {
    sub->add_option("--n", n, "Vertices");
    sub->add_option("--density", density, "Edge density in [0, 1]");
    sub->add_option("--kind", kind, "random|powerlaw");
    sub->add_option("--seed", cfg.seed, "Random seed");
    sub->add_option("--out", cfg.out, "Output file");
  }
  gen_qaoa_cmd->add_option("--graph", graph_in, "Problem graph JSON instead of generating one");
  gen_qaoa_cmd->add_option("--gamma", gamma, "Phase angle");
  gen_qaoa_cmd->add_option("--beta", beta, "Mixer angle");

  // transpile
  auto* transpile = app.add_subcommand("transpile", "Apply qubit reuse to a QASM circuit");
  transpile->add_option("input", cfg.input, "Input QASM")->required();
  transpile->add_option("--mode", cfg.mode, "qs (qubit saving) or sr (SWAP reduction)");
  transpile->add_option("--qubit-limit", cfg.qubit_limit, "Maximum number of qubits");
  transpile->add_option("--emit-dag", cfg.emit_dag, "Write the dependency DAG as DOT");
  add_common(transpile);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Qubit count vs depth/duration tradeoff as CSV");
  sweep_cmd->add_option("input", cfg.input, "Input QASM")->required();
  add_common(sweep_cmd);

  // simulate
  std::string other;
  std::string wiremap;
  auto* simulate = app.add_subcommand("simulate", "Exact output distribution, or TVD of two circuits");
  simulate->add_option("input", cfg.input, "QASM circuit")->required();
  simulate->add_option("other", other, "Second QASM circuit to compare against");
  simulate->add_option("--wiremap", wiremap, "Transform report or wire map JSON for the second circuit");
  simulate->add_option("--shots", cfg.shots, "Also draw this many samples");
  simulate->add_option("--seed", cfg.seed, "Sampling seed");
  simulate->add_option("--out", cfg.out, "Output JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (gen->parsed()) {
      if (gen_bv_cmd->parsed()) {
        if (secret.empty()) secret = std::string(static_cast<std::size_t>(std::max(n - 1, 0)), '1');
        emit(cfg.out, emit_qasm(gen_bv(n, secret)));
      } else if (gen_cc_cmd->parsed()) {
        emit(cfg.out, emit_qasm(gen_cc(n, counterfeit < 0 ? n - 2 : counterfeit)));
      } else if (gen_xor_cmd->parsed()) {
        if (inputs.empty()) inputs = std::string(static_cast<std::size_t>(std::max(n, 0)), '1');
        emit(cfg.out, emit_qasm(gen_xor(n, inputs)));
      } else {
        ProblemGraph g;
        if (!graph_in.empty()) {
          g = problem_graph_from_json(Json::parse(read_text_file(graph_in)));
        } else {
          if (n < 1) throw InvalidArgument("--n must be >= 1");
          g = gen_problem_graph(n, density, graph_kind_from_string(kind), cfg.seed);
        }
        if (gen_graph_cmd->parsed()) {
          emit(cfg.out, to_json(g).dump(2));
        } else {
          emit(cfg.out, emit_qasm(gen_qaoa_maxcut(g, gamma, beta)));
        }
      }
      return kOk;
    }
    if (transpile->parsed()) return cmd_transpile(cfg);
    if (sweep_cmd->parsed()) return cmd_sweep(cfg);
    if (simulate->parsed()) return cmd_simulate(cfg, other, wiremap);
  } catch (const Json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
