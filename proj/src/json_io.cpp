#include "graphbell/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace graphbell {

namespace {

Json rational_array(const CgMatrix<Rational>& cg, bool row) {
  Json out = Json::array();
  for (Eigen::Index k = 1; k < cg.rows(); ++k) out.push_back((row ? cg(0, k) : cg(k, 0)).str());
  return out;
}

Rational parse_rational(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw std::invalid_argument("expected a rational string or an integer");
}

}  // namespace

Json to_json(const BellFunctional& f) {
  Json j;
  j["m"] = f.settings();
  j["corner"] = f.corner().str();
  j["row_marginals"] = rational_array(f.cg, true);
  j["col_marginals"] = rational_array(f.cg, false);
  Json body = Json::array();
  for (Eigen::Index r = 1; r < f.cg.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 1; c < f.cg.cols(); ++c) row.push_back(f.cg(r, c).str());
    body.push_back(std::move(row));
  }
  j["body"] = std::move(body);
  if (f.local_bound) {
    j["local_bound"] = f.local_bound->str();
    j["bound_certified"] = f.bound_certified;
  }
  if (!f.origin.empty()) j["origin"] = f.origin;
  return j;
}

BellFunctional functional_from_json(const Json& j) {
  const auto m = j.at("m").get<std::size_t>();
  BellFunctional f(m);
  f.corner() = parse_rational(j.at("corner"));
  const auto& rows = j.at("row_marginals");
  const auto& cols = j.at("col_marginals");
  const auto& body = j.at("body");
  if (rows.size() != m || cols.size() != m || body.size() != m) throw std::invalid_argument("functional sizes disagree with m");
  for (std::size_t k = 0; k < m; ++k) {
    f.alice(k) = parse_rational(rows[k]);
    f.bob(k) = parse_rational(cols[k]);
    if (body[k].size() != m) throw std::invalid_argument("functional body row has the wrong length");
    for (std::size_t c = 0; c < m; ++c) f.cg(1 + k, 1 + c) = parse_rational(body[k][c]);
  }
  if (j.contains("local_bound")) {
    f.local_bound = parse_rational(j.at("local_bound"));
    f.bound_certified = j.value("bound_certified", false);
  }
  f.origin = j.value("origin", std::string("file"));
  return f;
}

Json to_json(const VectorSet& vs) {
  Json j;
  j["dimension"] = vs.dimension();
  j["field"] = vs.is_real() ? "real" : "complex";
  j["family"] = to_string(vs.family());
  Json rays = Json::array();
  for (const auto& r : vs.rays()) {
    Json ray = Json::array();
    for (auto c : r.components()) ray.push_back({c.re, c.im});
    rays.push_back(std::move(ray));
  }
  j["rays"] = std::move(rays);
  return j;
}

VectorSet vector_set_from_json(const Json& j) {
  const auto d = j.at("dimension").get<std::size_t>();
  std::vector<Ray> rays;
  for (const auto& ray : j.at("rays")) {
    std::vector<GaussInt> comps;
    for (const auto& c : ray) {
      if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() || !c[1].is_number_integer())
        throw std::invalid_argument("ray components must be integer [re, im] pairs");
      comps.emplace_back(c[0].get<std::int64_t>(), c[1].get<std::int64_t>());
    }
    rays.emplace_back(std::move(comps));
  }
  auto family = j.contains("family") ? family_from_string(j.at("family").get<std::string>()) : Family::User;
  return VectorSet(d, std::move(rays), family);
}

Json to_json(const InvariantReport& r) {
  Json j;
  j["vertices"] = r.vertices;
  j["edges"] = r.edges;
  j["alpha"] = r.alpha.value.str();
  j["alpha_exact"] = r.alpha.exact;
  j["alpha_witness"] = r.alpha.witness;
  j["omega"] = r.omega.value.str();
  j["omega_witness"] = r.omega.witness;
  j["xi_cap"] = r.xi.value;
  j["xi_cap_exact"] = r.xi.exact;
  j["alpha_star"] = r.alpha_star.value.str();
  j["alpha_star_method"] = r.alpha_star.method;
  j["orthogonal_rank_lower"] = r.xi_rank_lower;
  j["orthogonal_rank_upper"] = r.xi_rank_upper;
  if (r.chi_fractional) j["chi_fractional"] = r.chi_fractional->value.str();
  j["vertex_transitive"] = r.vertex_transitive;
  return j;
}

Json to_json(const EfficiencyReport& r) {
  Json j;
  j["status"] = r.status == ViolationStatus::Violation ? "violation" : "no-violation";
  j["local_bound"] = r.local_bound.str();
  j["quantum"] = r.quantum.str();
  j["quantum_alice"] = r.quantum_alice.str();
  j["quantum_bob"] = r.quantum_bob.str();
  j["no_detection"] = r.no_detection.str();
  if (r.quantum_mixed) j["quantum_mixed"] = r.quantum_mixed->str();
  if (r.eta_crit) {
    j["eta_crit"] = r.eta_crit->str();
    j["eta_crit_decimal"] = decimal4(r.eta_crit->to_double());
  }
  j["eta_path"] = to_string(r.eta_path);
  if (r.w_crit) {
    j["w_crit"] = r.w_crit->str();
    j["w_crit_decimal"] = decimal4(r.w_crit->to_double());
  }
  if (r.w_path) j["w_path"] = to_string(*r.w_path);
  return j;
}

Json to_json(const LpCertificate& c) {
  Json j;
  j["optimal_pairs"] = c.optimal_pairs.str();
  j["symmetrized_vertices"] = c.symmetrized_vertices;
  j["feasible"] = c.feasible;
  Json w = Json::array();
  for (const auto& x : c.weights) w.push_back(x.str());
  j["weights"] = std::move(w);
  return j;
}

Json to_json(const SeparatingInequality& s) {
  Json j;
  j["functional"] = to_json(s.functional);
  j["margin"] = s.margin;
  j["denominator_cap"] = s.denominator_cap;
  j["rounded"] = s.rounded;
  j["iterations"] = s.iterations;
  j["distance"] = s.distance;
  if (s.report) j["efficiency"] = to_json(*s.report);
  return j;
}

std::string group_fingerprint(const PermutationGroup& g) {
  // FNV-1a over degree and generator images.
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xFFU;
      h *= 1099511628211ULL;
    }
  };
  mix(g.degree());
  for (const auto& p : g.generators()) {
    mix(p.size());
    for (auto x : p) mix(x);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  std::string out = buf;
  if (g.order()) out += ":" + g.order()->str();
  return out;
}

Json to_json(const RunManifest& m) {
  Json j;
  j["q_source"] = m.target;
  j["group_fingerprint"] = m.group_fingerprint;
  j["tol"] = m.tolerance;
  j["max_iter"] = m.max_iterations;
  j["seed"] = m.seed;
  return j;
}

std::string decimal4(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return Json::parse(in);
}

void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace graphbell
