#include "caqr/error.hpp"
#include "caqr/io.hpp"
#include "caqr/qasm.hpp"
#include "doctest.h"

using namespace caqr;

TEST_CASE("problem graphs round-trip through JSON") {
  auto g = gen_problem_graph(12, 0.3, GraphKind::PowerLaw, 4);
  auto back = problem_graph_from_json(Json::parse(to_json(g).dump()));
  CHECK(back.n == g.n);
  CHECK(back.edges == g.edges);
  CHECK(back.kind == g.kind);
  CHECK(back.density == doctest::Approx(g.density));
  CHECK(back.seed == g.seed);
  CHECK_THROWS_AS(problem_graph_from_json(Json::parse(R"({"edges": [[0, 1]]})")), ParseError);
  CHECK_THROWS_AS(problem_graph_from_json(Json::parse(R"({"n": 2, "edges": [[0, 5]]})")),
                  InvalidArgument);
}

TEST_CASE("wire maps round-trip through JSON") {
  auto bv = gen_bv(5, "1011");
  auto r = reduce_to_limit(bv, 2);
  REQUIRE(std::holds_alternative<TransformResult>(r));
  const auto& t = std::get<TransformResult>(r);
  auto j = to_json(t.wiremap);
  CHECK(j["pairs"].size() == t.pairs.size());
  auto back = wiremap_from_json(Json::parse(j.dump()));
  CHECK(back.pairs == t.wiremap.pairs);
  CHECK(back.wire == t.wiremap.wire);
  CHECK(back.clbit == t.wiremap.clbit);
  CHECK(back.scratch == t.wiremap.scratch);
  CHECK(back.num_wires == 2);
}

TEST_CASE("distributions round-trip and reject ragged keys") {
  auto d = simulate_exact(gen_bv(4, "101"));
  auto back = distribution_from_json(Json::parse(to_json(d).dump()));
  CHECK(total_variation_distance(d, back) == doctest::Approx(0.0));
  CHECK_THROWS_AS(distribution_from_json(Json::parse(R"({"bits": 2, "probs": {"1": 1.0}})")),
                  InvalidArgument);
}

TEST_CASE("mapping reports carry the physical circuit and history") {
  auto arch = resolve_architecture("heavy-hex-27", false);
  auto bv = gen_bv(4, "111");
  auto m = std::get<MappedResult>(map_regular(bv, arch));
  auto j = to_json(m);
  CHECK(j["swaps"] == m.swaps);
  CHECK(j["placement_history"].size() == m.history.size());
  auto phys = parse_qasm(j["physical_circuit"].get<std::string>());
  CHECK(phys.instructions.size() == m.physical.instructions.size());
}

TEST_CASE("shot sampling is seeded and follows the distribution") {
  Distribution d;
  d.bits = 1;
  d.probs = {{"0", 0.25}, {"1", 0.75}};
  auto a = sample_counts(d, 4000, 9);
  CHECK(a == sample_counts(d, 4000, 9));
  CHECK(a["0"] + a["1"] == 4000);
  CHECK(a["1"] > 2800);
  CHECK(a["1"] < 3200);
  CHECK_THROWS_AS(sample_counts(d, -1, 1), InvalidArgument);
}
