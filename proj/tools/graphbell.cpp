#include "graphbell/automorphisms.hpp"
#include "graphbell/bell.hpp"
#include "graphbell/gilbert.hpp"
#include "graphbell/graph_io.hpp"
#include "graphbell/hadamard.hpp"
#include "graphbell/invariants.hpp"
#include "graphbell/json_io.hpp"
#include "graphbell/pipeline.hpp"
#include "graphbell/states.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace graphbell;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kFailure = 2;
constexpr int kMismatch = 3;

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

Field parse_field(const std::string& s) {
  if (s == "real") return Field::Real;
  if (s == "complex") return Field::Complex;
  throw CLI::ValidationError("--field", "expected real or complex");
}

// Settings group for a functional: from a permutation file, or from the
// automorphisms of a graph file.
PermutationGroup load_group(std::size_t m, const std::string& perms, const std::string& graph) {
  if (!perms.empty()) return PermutationGroup(m, load_permutations(perms));
  if (!graph.empty()) return automorphism_group(load_edge_list(graph));
  return PermutationGroup(m);
}

std::vector<std::int64_t> parse_values(const std::string& text) {
  std::vector<std::int64_t> out;
  if (auto colon = text.find(':'); colon != std::string::npos) {
    auto lo = std::stoll(text.substr(0, colon)), hi = std::stoll(text.substr(colon + 1));
    for (auto v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(std::stoll(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph-based Bell inequalities: state sets, invariants, functionals, Gilbert optimization"};
  app.require_subcommand(1);
  int status = kOk;

  // genset
  auto* genset = app.add_subcommand("genset", "Generate a vector set as JSON");
  std::string gs_family = "pauli", gs_field = "real", gs_out;
  int gs_n = 2;
  genset->add_option("--family", gs_family, "pauli | newman | sylvester | paley28")->capture_default_str();
  genset->add_option("--n", gs_n, "qubits (pauli), dimension (newman), log2 order (sylvester)")->capture_default_str();
  genset->add_option("--field", gs_field, "real | complex")->capture_default_str();
  genset->add_option("--out", gs_out, "output file (default stdout)");
  genset->callback([&] {
    std::optional<VectorSet> vs;
    if (gs_family == "pauli") vs = pauli_states(gs_n, parse_field(gs_field));
    else if (gs_family == "newman") vs = newman_states(gs_n);
    else if (gs_family == "sylvester") vs = rays_from_rows(sylvester(gs_n).entries(), Family::HadamardRows);
    else if (gs_family == "paley28") vs = rays_from_rows(paley_h28().entries(), Family::HadamardRows);
    else throw CLI::ValidationError("--family", "unknown family " + gs_family);
    emit(gs_out, to_json(*vs).dump(2) + "\n");
  });

  // orthograph
  auto* orthograph = app.add_subcommand("orthograph", "Orthogonality graph of a vector set");
  std::string og_rays, og_out, og_perms;
  orthograph->add_option("--rays", og_rays, "vector set JSON")->required();
  orthograph->add_option("--out", og_out, "edge list (default stdout)");
  orthograph->add_option("--automorphisms", og_perms, "also write automorphism generators here");
  orthograph->callback([&] {
    auto g = orthogonality_graph(vector_set_from_json(load_json(og_rays)));
    std::ostringstream text;
    write_edge_list(text, g);
    emit(og_out, text.str());
    if (!og_perms.empty()) {
      std::ostringstream perms;
      write_permutations(perms, automorphism_group(g).generators());
      emit(og_perms, perms.str());
    }
  });

  // invariants
  auto* invariants = app.add_subcommand("invariants", "alpha, omega, Xi, alpha*, orthogonal-rank bounds");
  std::string iv_graph, iv_rays, iv_out;
  std::size_t iv_budget = AlphaOptions{}.node_budget, iv_threshold = AlphaOptions{}.orbit_threshold;
  invariants->add_option("--graph", iv_graph, "edge list")->required();
  invariants->add_option("--rays", iv_rays, "vector set realizing the graph (for the orthogonal rank)");
  invariants->add_option("--node-budget", iv_budget)->capture_default_str();
  invariants->add_option("--orbit-threshold", iv_threshold)->capture_default_str();
  invariants->add_option("--out", iv_out);
  invariants->callback([&] {
    auto g = load_edge_list(iv_graph);
    std::optional<std::size_t> dim;
    if (!iv_rays.empty()) {
      auto vs = vector_set_from_json(load_json(iv_rays));
      if (!verify_orthonormal_representation(vs, g)) throw std::runtime_error("rays do not represent the graph");
      dim = vs.dimension();
    }
    AlphaOptions opts;
    opts.node_budget = iv_budget;
    opts.orbit_threshold = iv_threshold;
    emit(iv_out, to_json(invariant_report(g, dim, opts)).dump(2) + "\n");
  });

  // bell
  auto* bell = app.add_subcommand("bell", "Graph Bell functionals and efficiency reports");
  bell->require_subcommand(1);
  auto* build = bell->add_subcommand("build-graph", "Functional from a graph");
  std::string bg_graph, bg_out;
  std::size_t bg_xi = 0;
  build->add_option("--graph", bg_graph)->required();
  build->add_option("--xi", bg_xi, "edge penalty parameter; 0 computes it");
  build->add_option("--out", bg_out);
  build->callback([&] {
    auto g = load_edge_list(bg_graph);
    auto a = independence_number(g);
    std::size_t alpha = static_cast<std::size_t>(to_int64(a.value.numerator()));
    std::size_t xi = bg_xi;
    if (xi == 0) {
      auto x = xi_cap(g, alpha);
      xi = x.exact ? x.value : 1;
    }
    auto f = graph_bell_functional(g, xi, a.exact ? std::optional<std::size_t>(alpha) : std::nullopt);
    emit(bg_out, to_json(f).dump(2) + "\n");
  });

  auto* bound = bell->add_subcommand("bound", "Exact local bound");
  std::string bb_fun, bb_perms, bb_graph, bb_out;
  bool bb_swap = false;
  bound->add_option("--functional", bb_fun)->required();
  bound->add_option("--group", bb_perms, "settings permutations file");
  bound->add_option("--graph", bb_graph, "use this graph's automorphisms as the settings group");
  bound->add_flag("--party-swap", bb_swap);
  bound->add_option("--out", bb_out, "write the functional with its certified bound");
  bound->callback([&] {
    auto f = functional_from_json(load_json(bb_fun));
    LocalBound lb;
    if (bb_perms.empty() && bb_graph.empty()) lb = local_bound(f);
    else lb = local_bound(f, enumerate_classes(f.settings(), load_group(f.settings(), bb_perms, bb_graph), bb_swap));
    Json j;
    j["local_bound"] = lb.value.str();
    j["alice"] = lb.alice;
    j["bob"] = lb.bob;
    j["assignments"] = lb.assignments;
    j["symmetry_reduced"] = lb.symmetry_reduced;
    std::cout << j.dump(2) << "\n";
    if (!bb_out.empty()) {
      f.local_bound = lb.value;
      f.bound_certified = true;
      emit(bb_out, to_json(f).dump(2) + "\n");
    }
  });

  auto* report = bell->add_subcommand("report", "Critical efficiency and visibility");
  std::string br_fun, br_rays, br_out, br_vis = "1", br_eff = "1", br_x;
  report->add_option("--functional", br_fun)->required();
  report->add_option("--rays", br_rays, "vector set producing the quantum point")->required();
  report->add_option("--visibility", br_vis, "Werner visibility applied to the point")->capture_default_str();
  report->add_option("--efficiency", br_eff, "detection efficiency applied to the point")->capture_default_str();
  report->add_option("--no-detection", br_x, "value X when neither side clicks (default: corner)");
  report->add_option("--out", br_out);
  report->callback([&] {
    auto f = functional_from_json(load_json(br_fun));
    if (!f.local_bound) f.local_bound = local_bound(f).value, f.bound_certified = true;
    auto q = quantum_point(vector_set_from_json(load_json(br_rays)));
    if (Rational::parse(br_vis) != 1) q = apply_werner(q, Rational::parse(br_vis));
    if (Rational::parse(br_eff) != 1) q = apply_detection(q, Rational::parse(br_eff));
    EfficiencyOptions opts;
    if (!br_x.empty()) opts.no_detection_value = Rational::parse(br_x);
    emit(br_out, to_json(efficiency_report(f, q, opts)).dump(2) + "\n");
  });

  auto* scan_eta = bell->add_subcommand("scan-eta", "Efficiency versus dimension table (CSV)");
  std::string se_out;
  bool se_cited = false;
  scan_eta->add_option("--out", se_out);
  scan_eta->add_flag("--cite-pauli3", se_cited, "use the cited P_3 value instead of computing it");
  scan_eta->callback([&] {
    EtaScanOptions opts;
    opts.compute_pauli3 = !se_cited;
    std::ostringstream csv;
    write_eta_csv(csv, eta_scan(opts));
    emit(se_out, csv.str());
  });

  // gilbert
  auto* gilbert = app.add_subcommand("gilbert", "Symmetry-reduced Gilbert optimization");
  gilbert->require_subcommand(1);
  std::string gl_rays;
  bool gl_swap = true;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--rays", gl_rays, "vector set JSON")->required();
    sub->add_option("--party-swap", gl_swap, "include the party exchange")->capture_default_str();
  };
  struct Setup {
    VectorSet vs;
    Graph g;
    PointSymmetry sym;
    SymmetryContext ctx;
  };
  auto setup = [&] {
    auto vs = vector_set_from_json(load_json(gl_rays));
    auto g = orthogonality_graph(vs);
    auto sym = point_symmetry(vs, g);
    auto ctx = enumerate_classes(vs.size(), sym.group, gl_swap);
    return Setup{std::move(vs), std::move(g), std::move(sym), std::move(ctx)};
  };

  auto* classes = gilbert->add_subcommand("classes", "Alice assignments up to symmetry");
  std::string gc_out;
  add_common(classes);
  classes->add_option("--out", gc_out, "write representatives and sizes as JSON");
  classes->callback([&] {
    auto s = setup();
    Json j;
    j["classes"] = s.ctx.class_count();
    j["total"] = s.ctx.total().str();
    j["group"] = group_fingerprint(s.sym.group);
    std::cout << j.dump(2) << "\n";
    if (!gc_out.empty()) {
      j["reps"] = s.ctx.reps;
      j["sizes"] = s.ctx.sizes;
      emit(gc_out, j.dump() + "\n");
    }
  });

  auto* run = gilbert->add_subcommand("run", "Run Gilbert and extract a rounded inequality");
  OptimizeOptions gr_opts;
  std::string gr_out, gr_manifest;
  double gr_visibility = 1.0;
  bool gr_optimize = false;
  std::uint64_t gr_seed = 0;
  add_common(run);
  run->add_option("--max-iter", gr_opts.gilbert.max_iterations)->capture_default_str();
  run->add_option("--tol", gr_opts.gilbert.tolerance)->capture_default_str();
  run->add_option("--visibility", gr_visibility, "Werner visibility of the target point")->capture_default_str();
  run->add_flag("--optimize", gr_optimize, "repeat with targets below the last critical visibility");
  run->add_option("--rounds", gr_opts.rounds)->capture_default_str();
  run->add_option("--cap", gr_opts.extract.denominator_cap, "rounding denominator cap")->capture_default_str();
  run->add_option("--seed", gr_seed, "recorded in the manifest; the run is deterministic")->capture_default_str();
  run->add_option("--out", gr_out);
  run->add_option("--manifest", gr_manifest);
  run->callback([&] {
    auto s = setup();
    InvariantSpace space(s.ctx);
    LocalOracle oracle(s.ctx, space);
    auto q = quantum_point(s.vs);
    Json j;
    if (gr_optimize) {
      auto r = gilbert_optimize(q, oracle, gr_opts);
      j = to_json(r.best);
      j["total_iterations"] = r.total_iterations;
      j["target_visibilities"] = r.target_visibilities;
    } else {
      auto target = to_double(q);
      if (gr_visibility < 1) target = apply_werner(target, gr_visibility);
      auto st = gilbert_run(target, oracle, gr_opts.gilbert);
      j["monotone"] = st.monotone;
      j["step_range"] = {st.min_step, st.max_step};
      j["converged"] = st.converged;
      if (st.distance > 1e-9) {
        auto ineq = extract_inequality(st, oracle, q, gr_opts.extract);
        j.update(to_json(ineq));
      } else {
        j["distance"] = st.distance;
        j["iterations"] = st.iterations;
        j["status"] = "target is local";
      }
    }
    emit(gr_out, j.dump(2) + "\n");
    RunManifest m{gl_rays + (gr_visibility < 1 ? " W=" + std::to_string(gr_visibility) : ""),
                  group_fingerprint(s.sym.group), gr_opts.gilbert.tolerance, gr_opts.gilbert.max_iterations, gr_seed};
    if (!gr_manifest.empty()) emit(gr_manifest, to_json(m).dump(2) + "\n");
  });

  auto* certify = gilbert->add_subcommand("certify", "LP certificate at a degraded point");
  std::string gcf_fun, gcf_vis, gcf_eff, gcf_out;
  add_common(certify);
  certify->add_option("--functional", gcf_fun)->required();
  certify->add_option("--visibility", gcf_vis, "exact rational, e.g. 7/9");
  certify->add_option("--efficiency", gcf_eff, "exact rational, e.g. 4/5");
  certify->add_option("--out", gcf_out);
  certify->callback([&] {
    auto s = setup();
    InvariantSpace space(s.ctx);
    LocalOracle oracle(s.ctx, space);
    auto f = functional_from_json(load_json(gcf_fun));
    if (!f.local_bound) f.local_bound = local_bound(f, s.ctx).value;
    auto q = quantum_point(s.vs);
    if (!gcf_vis.empty()) q = apply_werner(q, Rational::parse(gcf_vis));
    if (!gcf_eff.empty()) q = apply_detection(q, Rational::parse(gcf_eff));
    emit(gcf_out, to_json(certify_lp(q, f, oracle)).dump(2) + "\n");
  });

  auto* gscan = gilbert->add_subcommand("scan", "Grid search over the invariant coefficients");
  std::string gs_values = "-6:6", gs_pins, gs_sout;
  add_common(gscan);
  gscan->add_option("--values", gs_values, "lo:hi or a comma list")->capture_default_str();
  gscan->add_option("--pin", gs_pins, "comma list of orbit indices held at 0");
  gscan->add_option("--out", gs_sout);
  gscan->callback([&] {
    auto s = setup();
    InvariantSpace space(s.ctx);
    LocalOracle oracle(s.ctx, space);
    std::vector<std::size_t> pins;
    if (!gs_pins.empty())
      for (auto v : parse_values(gs_pins)) pins.push_back(static_cast<std::size_t>(v));
    auto r = parameter_scan(quantum_point(s.vs), oracle, parse_values(gs_values), pins);
    Json j;
    j["candidates"] = r.candidates;
    j["violating"] = r.violating;
    if (r.functional) {
      j["functional"] = to_json(*r.functional);
      j["efficiency"] = to_json(*r.report);
    }
    emit(gs_sout, j.dump(2) + "\n");
  });

  // pipeline
  auto* pipeline = app.add_subcommand("pipeline", "Run the stages end to end");
  PipelineConfig pc;
  std::string pc_family = "pauli", pc_field = "real";
  bool pc_all = false;
  pipeline->add_option("--family", pc_family, "pauli | newman | circulant | file")->capture_default_str();
  pipeline->add_option("--n", pc.n)->capture_default_str();
  pipeline->add_option("--field", pc_field)->capture_default_str();
  pipeline->add_option("--offsets", pc.offsets, "circulant offsets");
  pipeline->add_option("--graph", pc.graph_path);
  pipeline->add_option("--rays", pc.rays_path);
  pipeline->add_flag("--formula-only", pc.formula_only);
  pipeline->add_flag("--gilbert", pc.run_gilbert);
  pipeline->add_flag("--certify", pc.run_certify);
  pipeline->add_flag("--all-stages", pc_all);
  pipeline->add_option("--max-iter", pc.optimize.gilbert.max_iterations)->capture_default_str();
  pipeline->add_option("--rounds", pc.optimize.rounds)->capture_default_str();
  pipeline->add_option("--out", pc.output_dir, "bundle directory");
  pipeline->callback([&] {
    pc.family = set_family_from_string(pc_family);
    pc.field = parse_field(pc_field);
    if (pc_all) pc.run_gilbert = pc.run_certify = true;
    if (pc.run_certify) pc.run_gilbert = true;
    auto bundle = run_pipeline(pc);
    std::cout << bundle.summary.dump(2) << "\n";
    if (!bundle.complete) status = kFailure;
  });

  // fixtures
  auto* fixtures = app.add_subcommand("fixtures", "Check the embedded reference constants");
  bool fx_quick = false;
  std::vector<std::string> fx_expect;
  fixtures->add_flag("--quick", fx_quick, "skip the slow checks");
  fixtures->add_option("--expect", fx_expect, "override an expected value: name=value");
  fixtures->callback([&] {
    std::map<std::string, std::string> overrides;
    for (const auto& e : fx_expect) {
      auto eq = e.find('=');
      if (eq == std::string::npos) throw CLI::ValidationError("--expect", "expected name=value");
      overrides[e.substr(0, eq)] = e.substr(eq + 1);
    }
    bool all = true;
    for (const auto& c : fixtures_verify(fx_quick, overrides)) {
      std::cout << (c.pass ? "PASS " : "FAIL ") << c.name;
      if (!c.pass) std::cout << "  expected " << c.expected << ", got " << c.actual;
      std::cout << "\n";
      all = all && c.pass;
    }
    if (!all) status = kMismatch;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return status;
}
