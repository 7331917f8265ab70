#include "graphbell/pipeline.hpp"

#include "graphbell/automorphisms.hpp"
#include "graphbell/fixtures.hpp"
#include "graphbell/graph_io.hpp"
#include "graphbell/hadamard.hpp"

#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <ostream>
#include <sstream>

namespace graphbell {

SetFamily set_family_from_string(const std::string& s) {
  if (s == "pauli") return SetFamily::Pauli;
  if (s == "newman") return SetFamily::Newman;
  if (s == "circulant") return SetFamily::Circulant;
  if (s == "file") return SetFamily::File;
  throw std::invalid_argument("unknown family: " + s);
}

PointSymmetry point_symmetry(const VectorSet& vs, const Graph& g, const AutomorphismOptions& options) {
  auto found = automorphisms(g, options);
  // Overlap classes |<v_i|v_j>|^2 / (|v_i|^2 |v_j|^2) must be preserved too.
  auto overlap = [&](std::size_t i, std::size_t j) {
    return Rational(BigInt(inner_product(vs[i], vs[j]).norm()), BigInt(vs[i].norm2()) * BigInt(vs[j].norm2()));
  };
  PointSymmetry out;
  std::vector<Permutation> kept;
  for (const auto& p : found.group.generators()) {
    bool ok = true;
    for (std::size_t i = 0; i < vs.size() && ok; ++i)
      for (std::size_t j = i + 1; j < vs.size() && ok; ++j) ok = overlap(p[i], p[j]) == overlap(i, j);
    if (ok) kept.push_back(p);
    else out.all_generators_kept = false;
  }
  bool complete = found.status == SearchStatus::Complete && out.all_generators_kept;
  out.group = PermutationGroup(vs.size(), std::move(kept),
                               complete ? found.group.order() : std::optional<BigInt>{});
  return out;
}

namespace {

std::string write_file(const PipelineConfig& cfg, PipelineBundle& bundle, const std::string& name,
                       const std::string& content) {
  if (cfg.output_dir.empty()) return {};
  std::filesystem::create_directories(cfg.output_dir);
  auto path = (std::filesystem::path(cfg.output_dir) / name).string();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  bundle.files.push_back(name);
  return path;
}

std::size_t as_size(const Rational& r) { return static_cast<std::size_t>(to_int64(r.numerator())); }

}  // namespace

PipelineBundle run_pipeline(const PipelineConfig& cfg) {
  PipelineBundle bundle;
  Json& s = bundle.summary;
  std::string stage = "states";
  try {
    // Stages return early once the configuration is exhausted.
    [&] {
      std::optional<VectorSet> vs;
      std::optional<Graph> g;
      switch (cfg.family) {
        case SetFamily::Pauli:
          s["family"] = cfg.field == Field::Real ? "pauli_real" : "pauli_complex";
          vs = pauli_states(cfg.n, cfg.field);
          break;
        case SetFamily::Newman:
          s["family"] = "newman";
          if (cfg.formula_only) {
            auto a = newman_alpha(cfg.n);
            s["d"] = cfg.n;
            s["alpha"] = a.value.str();
            s["alpha_source"] = a.proven ? "formula" : "paper-conjecture";
            BigInt v = 1;
            v <<= (cfg.n - 2);
            s["settings"] = v.str();
            s["quantum"] = Rational(v, BigInt(cfg.n)).str();
            double eta = newman_eta(cfg.n);
            if (eta < 1) s["eta_crit_decimal"] = decimal4(eta), s["eta_crit"] = eta;
            else s["status"] = "no-violation";
            write_file(cfg, bundle, "summary.json", s.dump(2) + "\n");
            return;
          }
          vs = newman_states(cfg.n);
          break;
        case SetFamily::Circulant:
          s["family"] = "circulant";
          g = circulant(static_cast<std::size_t>(cfg.n), std::set<std::size_t>(cfg.offsets.begin(), cfg.offsets.end()));
          break;
        case SetFamily::File:
          s["family"] = "file";
          if (!cfg.rays_path.empty()) vs = vector_set_from_json(load_json(cfg.rays_path));
          if (!cfg.graph_path.empty()) g = load_edge_list(cfg.graph_path);
          if (!vs && !g) throw std::invalid_argument("file family needs a graph or a vector set");
          break;
      }
      if (vs) {
        s["d"] = vs->dimension();
        s["settings"] = vs->size();
        write_file(cfg, bundle, "rays.json", to_json(*vs).dump(2) + "\n");
        if (!g) g = orthogonality_graph(*vs);
        else if (!verify_orthonormal_representation(*vs, *g))
          throw std::invalid_argument("vector set is not an orthogonal representation of the graph");
      }
      stage = "graph";
      std::ostringstream edges;
      write_edge_list(edges, *g);
      write_file(cfg, bundle, "graph.txt", edges.str());

      std::optional<InvariantReport> inv;
      if (cfg.run_invariants) {
        stage = "invariants";
        inv = invariant_report(*g, vs ? std::optional<std::size_t>(vs->dimension()) : std::nullopt, cfg.alpha);
        s["invariants"] = to_json(*inv);
        write_file(cfg, bundle, "invariants.json", s["invariants"].dump(2) + "\n");
      }
      if (!cfg.run_bell) return;

      stage = "bell";
      std::size_t xi = inv && inv->xi.exact ? inv->xi.value : 1;
      std::optional<std::size_t> alpha;
      if (inv && inv->alpha.exact) alpha = as_size(inv->alpha.value);
      auto f = graph_bell_functional(*g, xi, alpha);
      if (!f.local_bound) {
        auto lb = local_bound(f);
        f.local_bound = lb.value;
        f.bound_certified = true;
      }
      s["functional_xi"] = xi;
      write_file(cfg, bundle, "functional.json", to_json(f).dump(2) + "\n");
      if (!vs) return;
      auto q = quantum_point(*vs);
      auto report = efficiency_report(f, q);
      s["efficiency"] = to_json(report);
      write_file(cfg, bundle, "efficiency.json", s["efficiency"].dump(2) + "\n");

      if (!cfg.run_gilbert) return;
      stage = "gilbert";
      auto sym = point_symmetry(*vs, *g);
      auto ctx = enumerate_classes(vs->size(), sym.group, true);
      InvariantSpace space(ctx);
      LocalOracle oracle(ctx, space);
      auto opt = gilbert_optimize(q, oracle, cfg.optimize);
      Json gj = to_json(opt.best);
      gj["classes"] = ctx.class_count();
      gj["total_iterations"] = opt.total_iterations;
      gj["target_visibilities"] = opt.target_visibilities;
      gj["etas"] = opt.etas;
      s["gilbert"] = gj;
      RunManifest manifest{std::string("quantum_point:") + s["family"].get<std::string>() + ":" + std::to_string(cfg.n),
                           group_fingerprint(sym.group), cfg.optimize.gilbert.tolerance,
                           cfg.optimize.gilbert.max_iterations, 0};
      write_file(cfg, bundle, "gilbert.json", gj.dump(2) + "\n");
      write_file(cfg, bundle, "manifest.json", to_json(manifest).dump(2) + "\n");

      if (!cfg.run_certify) return;
      stage = "certify";
      const auto& best = opt.best;
      Json cj;
      if (best.report && best.report->w_crit)
        cj["visibility"] = to_json(certify_lp(apply_werner(q, *best.report->w_crit), best.functional, oracle));
      if (best.report && best.report->eta_crit && best.report->eta_crit->is_rational())
        cj["efficiency"] = to_json(certify_lp(apply_detection(q, best.report->eta_crit->rational), best.functional, oracle));
      s["certificate"] = cj;
      write_file(cfg, bundle, "certificate.json", cj.dump(2) + "\n");
    }();
  } catch (const std::exception& e) {
    bundle.complete = false;
    s["failed_stage"] = stage;
    s["error"] = e.what();
  }
  if (!cfg.output_dir.empty()) {
    auto files = bundle.files;
    Json m;
    m["complete"] = bundle.complete;
    m["files"] = files;
    if (!bundle.complete) m["failed_stage"] = s["failed_stage"];
    write_file(cfg, bundle, "bundle.json", m.dump(2) + "\n");
  }
  return bundle;
}

namespace {

std::vector<int> default_newman_sizes() {
  std::vector<int> sizes;
  for (int n = 8; n <= 64; n += 4) sizes.push_back(n);
  for (int n : {68, 100, 108, 128, 196, 256, 324, 484, 500, 512}) sizes.push_back(n);
  return sizes;
}

EtaRow closed_form_row(std::string family, std::size_t d, std::string settings, const Rational& alpha,
                       const Rational& quantum, std::string source) {
  EtaRow r{std::move(family), d, std::move(settings), alpha.str(), quantum.str(), std::nullopt, std::nullopt,
           std::move(source)};
  if (alpha < quantum) r.eta = graph_eta(alpha, quantum).to_double();
  return r;
}

}  // namespace

std::vector<EtaRow> eta_scan(const EtaScanOptions& options) {
  std::vector<EtaRow> rows;
  auto computed = [&](int n, Field field, const std::string& name) {
    auto vs = pauli_states(n, field);
    auto g = orthogonality_graph(vs);
    auto a = independence_number(g);
    const auto d = vs.dimension();
    Rational quantum(static_cast<long long>(vs.size()), static_cast<long long>(d));
    auto row = closed_form_row(name, d, std::to_string(vs.size()), a.value, quantum, "computed");
    // Xi = 1 is always safe; the visibility bound is exact whenever Xi is.
    if (row.eta) row.w = graph_visibility(a.value, vs.size(), g.edge_count(), 1, d, d).to_double();
    rows.push_back(std::move(row));
  };
  computed(2, Field::Real, "pauli_real");
  computed(2, Field::Complex, "pauli_complex");
  if (options.compute_pauli3) computed(3, Field::Real, "pauli_real");
  else rows.push_back(closed_form_row("pauli_real", 8, "240", Rational(16), Rational(30), "paper-conjecture"));
  rows.push_back(closed_form_row("pauli_real", 16, "4320", Rational(72), Rational(270), "paper-conjecture"));
  rows.push_back(closed_form_row("pauli_complex", 16, "36720", Rational(396), Rational(2295), "paper-conjecture"));
  for (int n : options.newman_sizes.empty() ? default_newman_sizes() : options.newman_sizes) {
    auto a = newman_alpha(n);
    BigInt v = 1;
    v <<= (n - 2);
    Rational quantum(v, BigInt(n));
    EtaRow r{"newman", static_cast<std::size_t>(n), v.str(), a.value.str(), quantum.str(), std::nullopt,
             std::nullopt, a.proven ? "formula" : "paper-conjecture"};
    double eta = newman_eta(n);
    if (eta < 1) r.eta = eta;
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_eta_csv(std::ostream& out, const std::vector<EtaRow>& rows) {
  out << "family,d,settings,alpha,q,eta_crit,w_crit,source\n";
  char buf[64];
  for (const auto& r : rows) {
    out << r.family << ',' << r.dimension << ',' << r.settings << ',' << r.alpha << ',' << r.quantum << ',';
    if (r.eta) {
      std::snprintf(buf, sizeof buf, "%.6g", *r.eta);
      out << buf;
    } else {
      out << "none";
    }
    out << ',';
    if (r.w) {
      std::snprintf(buf, sizeof buf, "%.6g", *r.w);
      out << buf;
    }
    out << ',' << r.source << '\n';
  }
}

namespace {

// Largest set of Hadamard rows that are pairwise adjacent vertices of Y_n:
// canonical sign (first entry +1), even parity, half the entries differing.
std::size_t newman_clique_from_rows(const HadamardMatrix& h) {
  const int n = h.order();
  std::vector<std::vector<int>> rows;
  for (int r = 0; r < n; ++r) {
    std::vector<int> row(n);
    int sign = h.entries()(r, 0);
    int negatives = 0;
    for (int c = 0; c < n; ++c) {
      row[c] = h.entries()(r, c) * sign;
      negatives += row[c] < 0;
    }
    if (negatives % 2 != 0) return 0;
    rows.push_back(std::move(row));
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      int differ = 0;
      for (int c = 0; c < n; ++c) differ += rows[a][c] != rows[b][c];
      if (2 * differ != n) return 0;
    }
  return rows.size();
}

std::string fmt3(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

}  // namespace

std::vector<FixtureCheck> fixtures_verify(bool quick, const std::map<std::string, std::string>& overrides) {
  std::vector<FixtureCheck> out;
  auto check = [&](const std::string& name, const std::string& expected, const std::string& actual) {
    auto it = overrides.find(name);
    std::string e = it == overrides.end() ? expected : it->second;
    out.push_back({name, e, actual, e == actual});
  };
  auto str = [](auto x) { return std::to_string(x); };

  check("count.pauli_real_2", "24", str(pauli_states(2, Field::Real).size()));
  check("count.pauli_real_3", "240", str(pauli_states(3, Field::Real).size()));
  if (!quick) check("count.pauli_real_4", "4320", str(pauli_states(4, Field::Real).size()));
  check("count.newman_4", "4", str(newman_states(4).size()));
  check("count.newman_8", "64", str(newman_states(8).size()));

  auto p24 = pauli_states(2, Field::Real);
  auto g24 = orthogonality_graph(p24);
  auto inv = invariant_report(g24, 4);
  check("pauli24.alpha", "5", inv.alpha.value.str());
  check("pauli24.omega", "4", inv.omega.value.str());
  check("pauli24.xi", "1", str(inv.xi.value));
  check("pauli24.alpha_star", "6", inv.alpha_star.value.str());
  check("pauli24.edges", "108", str(g24.edge_count()));
  check("pauli24.degree", "9", str(g24.regular_degree().value_or(0)));
  auto f24 = graph_bell_functional(g24, 1);
  check("pauli24.bound_enumeration", "5", local_bound(f24).value.str());
  auto group = automorphism_group(g24);
  auto ctx = enumerate_classes(24, group, true);
  check("pauli24.bound_symmetry", "5", local_bound(f24, ctx).value.str());
  check("pauli24.classes", "21564", str(ctx.class_count()));
  f24.local_bound = Rational(5);
  auto q24 = quantum_point(p24);
  auto r24 = efficiency_report(f24, q24);
  check("pauli24.quantum", "6", r24.quantum.str());
  check("pauli24.eta", "sqrt(5/6)", r24.eta_crit ? r24.eta_crit->str() : "none");
  check("pauli24.w", "41/45", r24.w_crit ? r24.w_crit->str() : "none");

  auto fx = optimized_pauli24();
  auto octx = enumerate_classes(24, automorphism_group(orthogonality_graph(fx.rays)), true);
  auto ob = local_bound(fx.functional, octx);
  check("optimized.bound", "0", ob.value.str());
  fx.functional.local_bound = ob.value;
  auto oq = quantum_point(fx.rays);
  auto orep = efficiency_report(fx.functional, oq);
  check("optimized.quantum", "18", orep.quantum.str());
  check("optimized.eta", "4/5", orep.eta_crit ? orep.eta_crit->str() : "none");
  check("optimized.w", "7/9", orep.w_crit ? orep.w_crit->str() : "none");
  InvariantSpace space(octx);
  LocalOracle oracle(octx, space);
  auto cw = certify_lp(apply_werner(oq, Rational(7, 9)), fx.functional, oracle);
  check("certify.pairs", "452929", cw.optimal_pairs.str());
  check("certify.matrices", "132", str(cw.symmetrized_vertices));
  check("certify.visibility_7_9", "feasible", cw.feasible ? "feasible" : "infeasible");
  auto ce = certify_lp(apply_detection(oq, Rational(4, 5)), fx.functional, oracle);
  check("certify.efficiency_4_5", "feasible", ce.feasible ? "feasible" : "infeasible");
  auto ca = certify_lp(apply_werner(oq, Rational(7, 9) + Rational(1, 1000000)), fx.functional, oracle);
  check("certify.visibility_above", "infeasible", ca.feasible ? "feasible" : "infeasible");
  if (!quick) {
    OptimizeOptions oo;
    oo.gilbert.max_iterations = 25'000;
    auto opt = gilbert_optimize(oq, oracle, oo);
    double eta = opt.best.report->eta_crit->to_double();
    double w = opt.best.report->w_crit ? opt.best.report->w_crit->to_double() : 1.0;
    check("gilbert.eta_at_most_0.82", "true", eta <= 0.82 ? "true" : "false");
    check("gilbert.w_at_most_0.85", "true", w <= 0.85 ? "true" : "false");
  }

  check("newman.alpha_28", "397594", newman_alpha(28).value.str());
  check("newman.alpha_32", "3572224", newman_alpha(32).value.str());
  check("newman.eta_28", "0.407", fmt3(newman_eta(28)));
  check("newman.eta_32", "0.326", fmt3(newman_eta(32)));
  check("pauli4320.eta", "0.516", fmt3(graph_eta(Rational(72), Rational(270)).to_double()));
  check("newman.eta_512_below_1.6e-14", "true", newman_eta(512) < 1.6e-14 ? "true" : "false");
  check("newman.alpha_8_search", "8", independence_number(newman_graph(8)).value.str());
  if (!quick) {
    check("newman.edges_12", "236544", str(newman_graph(12).edge_count()));
    check("newman.frame_12", "256/3", sic_frame_check(newman_states(12)).constant.str());
    check("newman.frame_16", "1024", sic_frame_check(newman_states(16)).constant.str());
  }
  check("hadamard.sylvester_32_clique", "32", str(newman_clique_from_rows(sylvester(5))));
  check("hadamard.paley_28_clique", "28", str(newman_clique_from_rows(paley_h28())));

  auto c5 = cycle(5);
  for (auto kind : {ProductKind::Or, ProductKind::Lexicographic}) {
    auto p = product(c5, c5, kind);
    std::string tag = kind == ProductKind::Or ? "or" : "lex";
    auto a = independence_number(p);
    check("product." + tag + ".alpha", "4", a.value.str());
    auto x = xi_cap(p, as_size(a.value));
    check("product." + tag + ".bound", "4", local_bound(graph_bell_functional(p, x.value)).value.str());
  }
  check("product.eta_1", "0.730", fmt3(product_eta(Rational(16), Rational(30), 1)));
  check("product.eta_2", "0.533", fmt3(product_eta(Rational(16), Rational(30), 2)));
  check("product.eta_3", "0.389", fmt3(product_eta(Rational(16), Rational(30), 3)));
  return out;
}

}  // namespace graphbell
