#include "doctest.h"

#include "graphbell/automorphisms.hpp"
#include "graphbell/fixtures.hpp"
#include "graphbell/graph_io.hpp"
#include "graphbell/json_io.hpp"
#include "graphbell/pipeline.hpp"

#include <filesystem>
#include <sstream>

using namespace graphbell;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("graphbell_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

const FixtureCheck* find(const std::vector<FixtureCheck>& checks, const std::string& name) {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("functional JSON round trip") {
  auto fx = optimized_pauli24();
  auto f = fx.functional;
  f.local_bound = Rational(0);
  f.bound_certified = true;
  auto back = functional_from_json(Json::parse(to_json(f).dump()));
  CHECK(back.cg == f.cg);
  CHECK(back.local_bound == f.local_bound);
  CHECK(back.bound_certified);
  CHECK(back.origin == "fixture");

  BellFunctional odd(3);
  odd.corner() = Rational(-1, 7);
  odd.alice(2) = Rational(5, 3);
  odd.bob(0) = Rational(-2);
  odd.joint(1, 2) = Rational(9, 4);
  auto odd_back = functional_from_json(to_json(odd));
  CHECK(odd_back.cg == odd.cg);
  CHECK_FALSE(odd_back.local_bound);
  // Joint (i, j) sits at row j, column i: Alice indexes columns.
  CHECK(to_json(odd)["body"][2][1] == "9/4");
}

TEST_CASE("vector set JSON round trip") {
  for (auto vs : {pauli_states(2, Field::Real), pauli_states(2, Field::Complex), newman_states(8)}) {
    auto back = vector_set_from_json(Json::parse(to_json(vs).dump()));
    CHECK(back.dimension() == vs.dimension());
    CHECK(back.rays() == vs.rays());
    CHECK(back.family() == vs.family());
  }
  Json bad = to_json(newman_states(4));
  bad["rays"][0].push_back({1, 0});
  CHECK_THROWS(vector_set_from_json(bad));
}

TEST_CASE("edge list and permutation files") {
  auto g = orthogonality_graph(pauli_states(2, Field::Real));
  std::stringstream text;
  write_edge_list(text, g);
  auto back = read_edge_list(text);
  CHECK(back.vertex_count() == 24);
  CHECK(back.edges() == g.edges());
  auto gens = automorphism_group(g).generators();
  std::stringstream perms;
  write_permutations(perms, gens);
  CHECK(read_permutations(perms) == gens);
}

TEST_CASE("manifest and group fingerprint are deterministic") {
  auto g = orthogonality_graph(pauli_states(2, Field::Real));
  auto a = group_fingerprint(automorphism_group(g));
  auto b = group_fingerprint(automorphism_group(g));
  CHECK(a == b);
  CHECK(a.ends_with(":1152"));
  CHECK(a != group_fingerprint(automorphism_group(cycle(5))));
  RunManifest m{"pauli_real:2", a, 1e-10, 1000, 7};
  auto j = to_json(m);
  CHECK(j.dump() == to_json(m).dump());
  CHECK(j["q_source"] == "pauli_real:2");
  CHECK(j["max_iter"] == 1000);
  CHECK(j["seed"] == 7);
  CHECK(decimal4(0.8) == "0.8000");
  CHECK(decimal4(std::sqrt(5.0 / 6.0)) == "0.9129");
}

TEST_CASE("efficiency report JSON carries exact and decimal values") {
  auto fx = optimized_pauli24();
  fx.functional.local_bound = Rational(0);
  auto j = to_json(efficiency_report(fx.functional, quantum_point(fx.rays)));
  CHECK(j["eta_crit"] == "4/5");
  CHECK(j["eta_crit_decimal"] == "0.8000");
  CHECK(j["w_crit"] == "7/9");
  CHECK(j["w_crit_decimal"] == "0.7778");
}

TEST_CASE("fixture suite reports overridden expectations as mismatches") {
  auto checks = fixtures_verify(true, {{"pauli24.alpha", "6"}});
  auto alpha = find(checks, "pauli24.alpha");
  REQUIRE(alpha);
  CHECK_FALSE(alpha->pass);
  CHECK(alpha->expected == "6");
  CHECK(alpha->actual == "5");
  auto quantum = find(checks, "optimized.quantum");
  REQUIRE(quantum);
  CHECK(quantum->pass);
  for (const auto& name : {"optimized.eta", "optimized.w", "certify.pairs", "certify.matrices", "newman.alpha_28"}) {
    auto c = find(checks, name);
    REQUIRE(c);
    CHECK_MESSAGE(c->pass, name);
  }
}

TEST_CASE("eta table") {
  EtaScanOptions opts;
  opts.compute_pauli3 = false;
  opts.newman_sizes = {8, 28};
  auto rows = eta_scan(opts);
  std::ostringstream csv;
  write_eta_csv(csv, rows);
  auto text = csv.str();
  CHECK(text.starts_with("family,d,settings,alpha,q,eta_crit,w_crit,source\n"));
  CHECK(text.find("pauli_real,4,24,5,6,0.912871,0.911111,computed") != std::string::npos);
  CHECK(text.find("newman,8,64,8,8,none,,formula") != std::string::npos);
  CHECK(text.find("newman,28,67108864,397594,") != std::string::npos);
  CHECK(text.find("pauli_complex,16,36720,396,2295,") != std::string::npos);
}

TEST_CASE("pipeline bundles") {
  SUBCASE("no violation for four Newman vectors") {
    PipelineConfig cfg;
    cfg.family = SetFamily::Newman;
    cfg.n = 4;
    cfg.output_dir = scratch("newman4").string();
    auto b = run_pipeline(cfg);
    CHECK(b.complete);
    CHECK(b.summary["efficiency"]["status"] == "no-violation");
    CHECK(std::filesystem::exists(std::filesystem::path(cfg.output_dir) / "bundle.json"));
    CHECK(std::filesystem::exists(std::filesystem::path(cfg.output_dir) / "efficiency.json"));
  }
  SUBCASE("closed forms for n = 28") {
    PipelineConfig cfg;
    cfg.family = SetFamily::Newman;
    cfg.n = 28;
    cfg.formula_only = true;
    auto b = run_pipeline(cfg);
    CHECK(b.complete);
    CHECK(b.summary["alpha"] == "397594");
    CHECK(b.summary["eta_crit_decimal"] == "0.4073");
  }
  SUBCASE("Pauli-24 graph stage") {
    PipelineConfig cfg;
    auto b = run_pipeline(cfg);
    CHECK(b.complete);
    CHECK(b.summary["efficiency"]["eta_crit"] == "sqrt(5/6)");
    CHECK(b.summary["efficiency"]["w_crit"] == "41/45");
  }
  SUBCASE("failures name the stage") {
    PipelineConfig cfg;
    cfg.family = SetFamily::File;
    cfg.graph_path = "/nonexistent/graph.txt";
    cfg.output_dir = scratch("missing").string();
    auto b = run_pipeline(cfg);
    CHECK_FALSE(b.complete);
    CHECK(b.summary["failed_stage"] == "states");
    auto manifest = load_json((std::filesystem::path(cfg.output_dir) / "bundle.json").string());
    CHECK(manifest["complete"] == false);
  }
}
