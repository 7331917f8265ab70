#include "graphbell/bell.hpp"

#include "graphbell/invariants.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace graphbell {

BellFunctional::BellFunctional(std::size_t settings)
    : cg(CgMatrix<Rational>::Constant(static_cast<Eigen::Index>(settings + 1),
                                      static_cast<Eigen::Index>(settings + 1), Rational(0))) {}

BellFunctional::BellFunctional(CgMatrix<Rational> table) : cg(std::move(table)) {
  if (cg.rows() != cg.cols() || cg.rows() < 1) throw std::invalid_argument("Collins-Gisin table must be square");
}

bool BellFunctional::zero_marginals() const {
  for (Eigen::Index k = 1; k < cg.rows(); ++k)
    if (cg(0, k) != 0 || cg(k, 0) != 0) return false;
  return true;
}

bool BellFunctional::invariant_under(const Permutation& p) const {
  const auto m = settings();
  if (p.size() != m) return false;
  for (std::size_t i = 0; i < m; ++i) {
    if (alice(p[i]) != alice(i) || bob(p[i]) != bob(i)) return false;
    for (std::size_t j = 0; j < m; ++j)
      if (joint(p[i], p[j]) != joint(i, j)) return false;
  }
  return true;
}

BellFunctional graph_bell_functional(const Graph& g, std::size_t xi_cap, std::optional<std::size_t> alpha) {
  if (xi_cap < 1) throw std::invalid_argument("Xi must be at least 1");
  BellFunctional f(g.vertex_count());
  const Rational penalty(-1, 2 * static_cast<long long>(xi_cap));
  for (Vertex v = 0; v < g.vertex_count(); ++v) f.joint(v, v) = 1;
  for (auto [u, v] : g.edges()) {
    f.joint(u, v) = penalty;
    f.joint(v, u) = penalty;
  }
  if (alpha) {
    f.local_bound = Rational(static_cast<long long>(*alpha));
    f.bound_certified = true;
  }
  f.origin = "graph";
  return f;
}

CorrelationPoint<Rational> quantum_point(const VectorSet& vs) {
  const auto m = vs.size();
  const auto d = static_cast<long long>(vs.dimension());
  CorrelationPoint<Rational> p;
  p.dimension = vs.dimension();
  p.table = CgMatrix<Rational>::Constant(static_cast<Eigen::Index>(m + 1), static_cast<Eigen::Index>(m + 1), Rational(0));
  p.table(0, 0) = 1;
  for (std::size_t k = 0; k < m; ++k) {
    p.table(0, 1 + k) = Rational(1, d);
    p.table(1 + k, 0) = Rational(1, d);
  }
  // <psi| P_i (x) conj(P_j) |psi> = tr(P_i P_j^T*)/d = tr(P_i P_j)/d.
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      auto overlap = inner_product(vs[i], vs[j]).norm();
      Rational q(BigInt(overlap), BigInt(vs[i].norm2()) * BigInt(vs[j].norm2()) * d);
      p.table(1 + j, 1 + i) = q;
      p.table(1 + i, 1 + j) = q;
    }
  return p;
}

namespace {

struct ScaledFunctional {
  std::size_t m = 0;
  std::int64_t corner = 0;
  std::vector<std::int64_t> alice, bob;
  std::vector<std::int64_t> joint;  // joint[i * m + j]: Alice i, Bob j
  BigInt scale = 1;
};

ScaledFunctional scale_to_integers(const BellFunctional& f) {
  ScaledFunctional s;
  s.m = f.settings();
  std::vector<Rational> all(f.cg.data(), f.cg.data() + f.cg.size());
  s.scale = common_denominator(all.data(), all.data() + all.size());
  BigInt total = 0;
  auto to_int = [&](const Rational& r) {
    BigInt v = r.numerator() * (s.scale / r.denominator());
    total += v < 0 ? BigInt(-v) : v;
    return to_int64(v);
  };
  s.corner = to_int(f.corner());
  s.alice.resize(s.m);
  s.bob.resize(s.m);
  s.joint.resize(s.m * s.m);
  for (std::size_t i = 0; i < s.m; ++i) {
    s.alice[i] = to_int(f.alice(i));
    s.bob[i] = to_int(f.bob(i));
    for (std::size_t j = 0; j < s.m; ++j) s.joint[i * s.m + j] = to_int(f.joint(i, j));
  }
  if (total > BigInt(std::numeric_limits<std::int64_t>::max() / 4))
    throw std::overflow_error("functional coefficients too large for exact enumeration");
  return s;
}

// Best value for a fixed Alice assignment, with Bob's greedy answer.
std::int64_t best_response(const ScaledFunctional& s, Assignment a, Assignment* bob) {
  std::int64_t total = s.corner;
  std::vector<std::int64_t> column(s.bob);
  for (Assignment rest = a; rest; rest &= rest - 1) {
    auto i = static_cast<std::size_t>(std::countr_zero(rest));
    total += s.alice[i];
    const auto* row = &s.joint[i * s.m];
    for (std::size_t j = 0; j < s.m; ++j) column[j] += row[j];
  }
  Assignment b = 0;
  for (std::size_t j = 0; j < s.m; ++j)
    if (column[j] > 0) {
      total += column[j];
      b |= Assignment{1} << j;
    }
  if (bob) *bob = b;
  return total;
}

}  // namespace

Rational vertex_value(const BellFunctional& f, Assignment alice, Assignment bob) {
  const auto m = f.settings();
  Rational total = f.corner();
  for (std::size_t i = 0; i < m; ++i) {
    if (alice >> i & 1U) total += f.alice(i);
    if (bob >> i & 1U) total += f.bob(i);
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!(alice >> i & 1U)) continue;
    for (std::size_t j = 0; j < m; ++j)
      if (bob >> j & 1U) total += f.joint(i, j);
  }
  return total;
}

LocalBound local_bound(const BellFunctional& f, std::size_t max_settings) {
  const auto m = f.settings();
  if (m > max_settings || m > 62)
    throw EnumerationRefused("refusing 2^" + std::to_string(m) + " Alice assignments without a symmetry group");
  auto s = scale_to_integers(f);

  // Gray-code walk: step k flips bit ctz(k); columns are updated incrementally.
  std::vector<std::int64_t> column(s.bob);
  std::int64_t alice_part = s.corner;
  auto positive_sum = [&] {
    std::int64_t t = 0;
    for (auto c : column) t += c > 0 ? c : 0;
    return t;
  };
  std::int64_t best = alice_part + positive_sum();
  Assignment current = 0, best_alice = 0;
  const std::uint64_t count = std::uint64_t{1} << m;
  for (std::uint64_t k = 1; k < count; ++k) {
    auto i = static_cast<std::size_t>(std::countr_zero(k));
    current ^= Assignment{1} << i;
    const auto* row = &s.joint[i * m];
    std::int64_t t = 0;
    if (current >> i & 1U) {
      alice_part += s.alice[i];
      for (std::size_t j = 0; j < m; ++j) {
        column[j] += row[j];
        t += column[j] > 0 ? column[j] : 0;
      }
    } else {
      alice_part -= s.alice[i];
      for (std::size_t j = 0; j < m; ++j) {
        column[j] -= row[j];
        t += column[j] > 0 ? column[j] : 0;
      }
    }
    if (alice_part + t > best) {
      best = alice_part + t;
      best_alice = current;
    }
  }
  LocalBound out;
  out.alice = best_alice;
  best_response(s, best_alice, &out.bob);
  out.value = Rational(BigInt(best), s.scale);
  out.assignments = count;
  return out;
}

LocalBound local_bound(const BellFunctional& f, const SymmetryContext& ctx) {
  if (ctx.settings != f.settings()) throw std::invalid_argument("symmetry context has a different number of settings");
  for (const auto& g : ctx.group.generators())
    if (!f.invariant_under(g)) throw std::invalid_argument("functional is not invariant under the settings group");
  auto s = scale_to_integers(f);
  LocalBound out;
  out.symmetry_reduced = true;
  std::optional<std::int64_t> best;
  for (Assignment a : ctx.reps) {
    Assignment b = 0;
    auto v = best_response(s, a, &b);
    if (!best || v > *best) {
      best = v;
      out.alice = a;
      out.bob = b;
    }
  }
  out.value = Rational(BigInt(*best), s.scale);
  out.assignments = ctx.reps.size();
  return out;
}

QuadraticSurd::QuadraticSurd(Rational r, Rational c, Rational t)
    : rational(std::move(r)), coefficient(std::move(c)), radicand(std::move(t)) {
  if (radicand.sign() < 0) throw std::domain_error("negative radicand");
  Rational root;
  if (coefficient == 0 || radicand == 0) {
    coefficient = 0;
    radicand = 0;
  } else if (rational_sqrt(radicand, &root)) {
    rational += coefficient * root;
    coefficient = 0;
    radicand = 0;
  }
}

double QuadraticSurd::to_double() const {
  return rational.to_double() + coefficient.to_double() * std::sqrt(radicand.to_double());
}

std::string QuadraticSurd::str() const {
  if (is_rational()) return rational.str();
  std::ostringstream out;
  if (rational != 0) out << rational << (coefficient.sign() > 0 ? " + " : " - ");
  else if (coefficient.sign() < 0) out << "-";
  auto c = abs(coefficient);
  if (c != 1) out << c << "*";
  out << "sqrt(" << radicand << ")";
  return out.str();
}

QuadraticSurd surd_sqrt(const Rational& x) { return QuadraticSurd(Rational(0), Rational(1), x); }

std::string to_string(FormulaPath p) {
  switch (p) {
    case FormulaPath::Protocol1: return "protocol1";
    case FormulaPath::Protocol2: return "protocol2";
    case FormulaPath::Theorem3: return "theorem3";
    case FormulaPath::Theorem3b: return "theorem3b";
    case FormulaPath::Theorem4: return "theorem4";
  }
  return "unknown";
}

namespace {

// Largest root below 1 of a x^2 + b x + c, as a surd.
std::optional<QuadraticSurd> largest_root_below_one(const Rational& a, const Rational& b, const Rational& c) {
  std::vector<QuadraticSurd> roots;
  if (a == 0) {
    if (b == 0) return std::nullopt;
    roots.emplace_back(-c / b);
  } else {
    Rational disc = b * b - Rational(4) * a * c;
    if (disc.sign() < 0) return std::nullopt;
    Rational centre = -b / (Rational(2) * a);
    Rational spread = disc / (Rational(4) * a * a);
    roots.emplace_back(centre, Rational(1), spread);
    roots.emplace_back(centre, Rational(-1), spread);
  }
  std::optional<QuadraticSurd> best;
  for (const auto& r : roots) {
    double x = r.to_double();
    if (x < -1e-15 || x >= 1) continue;
    if (!best || x > best->to_double()) best = r;
  }
  return best;
}

}  // namespace

EfficiencyReport efficiency_report(const BellFunctional& f, const CorrelationPoint<Rational>& p,
                                   const EfficiencyOptions& options) {
  if (!f.local_bound) throw std::logic_error("efficiency report needs a local bound");
  const auto m = f.settings();
  if (p.settings() != m) throw std::invalid_argument("functional and point differ in settings");
  EfficiencyReport r;
  r.local_bound = *f.local_bound;
  r.quantum = value(f, p);
  r.no_detection = options.no_detection_value.value_or(f.corner());
  r.quantum_alice = f.corner();
  r.quantum_bob = f.corner();
  for (std::size_t k = 0; k < m; ++k) {
    r.quantum_alice += f.alice(k) * p.alice(k);
    r.quantum_bob += f.bob(k) * p.bob(k);
  }
  const bool clean = p.visibility == 1 && p.efficiency == 1;
  if (p.efficiency == 1 && p.dimension > 0) {
    CorrelationPoint<Rational> mixed = apply_werner(p, Rational(0));
    r.quantum_mixed = value(f, mixed);
  }
  if (r.quantum <= r.local_bound) return r;
  r.status = ViolationStatus::Violation;

  const Rational& C = r.local_bound;
  const Rational& X = r.no_detection;
  Rational a = r.quantum - r.quantum_alice - r.quantum_bob + X;
  Rational b = r.quantum_alice + r.quantum_bob - Rational(2) * X;
  r.eta_crit = largest_root_below_one(a, b, X - C);

  const bool homogeneous = f.zero_marginals() && X == 0 && f.corner() == 0;
  if (homogeneous) {
    // The quadratic degenerates to Q eta^2 = C.
    auto closed = surd_sqrt(C / r.quantum);
    if (r.eta_crit != closed) throw std::logic_error("efficiency closed form disagrees with the quadratic");
    if (!clean) r.eta_path = FormulaPath::Theorem4;
    else r.eta_path = f.origin == "graph" ? FormulaPath::Theorem3 : FormulaPath::Protocol2;
  }
  if (clean && r.quantum_mixed && *r.quantum_mixed < r.quantum) {
    r.w_crit = (C - *r.quantum_mixed) / (r.quantum - *r.quantum_mixed);
    r.w_path = f.origin == "graph" ? FormulaPath::Theorem3b : FormulaPath::Protocol1;
  }
  return r;
}

QuadraticSurd graph_eta(const Rational& alpha, const Rational& vertices_over_xi) {
  return surd_sqrt(alpha / vertices_over_xi);
}

Rational graph_visibility(const Rational& alpha, std::size_t vertices, std::size_t edges, std::size_t xi_cap,
                          std::size_t xi, std::size_t dimension) {
  const auto v = static_cast<long long>(vertices);
  Rational q(v, static_cast<long long>(xi));
  Rational mixed = (Rational(v) - Rational(static_cast<long long>(edges), static_cast<long long>(xi_cap))) /
                   Rational(static_cast<long long>(dimension * dimension));
  return (alpha - mixed) / (q - mixed);
}

double product_eta(const Rational& alpha, const Rational& vertices_over_xi, int copies) {
  if (copies < 1) throw std::invalid_argument("product needs at least one copy");
  return std::pow((alpha / vertices_over_xi).to_double(), copies / 2.0);
}

double weighted_eta(const Rational& weighted_alpha, const Rational& weight_sum, std::size_t xi) {
  return std::sqrt((weighted_alpha * Rational(static_cast<long long>(xi)) / weight_sum).to_double());
}

double newman_eta(int n) {
  BigInt vertices = 1;
  vertices <<= (n - 2);
  Rational ratio = Rational(newman_alpha(n).value * n) / Rational(vertices);
  return std::sqrt(ratio.to_double());
}

}  // namespace graphbell
