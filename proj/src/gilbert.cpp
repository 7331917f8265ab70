#include "graphbell/gilbert.hpp"

#include "graphbell/simplex.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace graphbell {

namespace {
constexpr std::size_t kNoOrbit = std::numeric_limits<std::size_t>::max();
}

InvariantSpace::InvariantSpace(const SymmetryContext& ctx) : settings_(ctx.settings), side_(ctx.settings + 1) {
  auto orbits = coordinate_orbits(ctx.settings, ctx.group, ctx.party_swap);
  orbit_of_.assign(side_ * side_, kNoOrbit);
  std::vector<double> sizes;
  for (const auto& o : orbits) {
    if (o.front() == 0) continue;  // corner
    for (auto c : o) orbit_of_[c] = sizes.size();
    sizes.push_back(static_cast<double>(o.size()));
  }
  sizes_ = Eigen::Map<Eigen::VectorXd>(sizes.data(), static_cast<Eigen::Index>(sizes.size()));
}

double InvariantSpace::inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  return (sizes_.array() * x.array() * y.array()).sum();
}

template <class Scalar>
std::vector<Scalar> InvariantSpace::project(const CgMatrix<Scalar>& table) const {
  if (static_cast<std::size_t>(table.rows()) != side_) throw std::invalid_argument("table has the wrong size");
  std::vector<Scalar> sums(dimension(), Scalar(0));
  for (std::size_t r = 0; r < side_; ++r)
    for (std::size_t c = 0; c < side_; ++c)
      if (r + c > 0) sums[orbit(r, c)] += table(r, c);
  for (std::size_t o = 0; o < dimension(); ++o) sums[o] = sums[o] / Scalar(static_cast<long long>(sizes_[o]));
  return sums;
}

template <class Scalar>
CgMatrix<Scalar> InvariantSpace::expand(const std::vector<Scalar>& values, const Scalar& corner) const {
  if (values.size() != dimension()) throw std::invalid_argument("orbit vector has the wrong size");
  CgMatrix<Scalar> table(side_, side_);
  for (std::size_t r = 0; r < side_; ++r)
    for (std::size_t c = 0; c < side_; ++c) table(r, c) = r + c == 0 ? corner : values[orbit(r, c)];
  return table;
}

template std::vector<double> InvariantSpace::project(const CgMatrix<double>&) const;
template std::vector<Rational> InvariantSpace::project(const CgMatrix<Rational>&) const;
template CgMatrix<double> InvariantSpace::expand(const std::vector<double>&, const double&) const;
template CgMatrix<Rational> InvariantSpace::expand(const std::vector<Rational>&, const Rational&) const;

namespace {

using Counts = std::vector<std::int64_t>;

Counts alice_counts(const InvariantSpace& space, Assignment a) {
  Counts c(space.dimension(), 0);
  for (Assignment rest = a; rest; rest &= rest - 1) ++c[space.orbit(0, 1 + std::countr_zero(rest))];
  return c;
}

// Orbit counts of Bob's column j: his marginal plus the joints with Alice's ones.
Counts column_counts(const InvariantSpace& space, Assignment a, std::size_t j) {
  Counts c(space.dimension(), 0);
  ++c[space.orbit(1 + j, 0)];
  for (Assignment rest = a; rest; rest &= rest - 1) ++c[space.orbit(1 + j, 1 + std::countr_zero(rest))];
  return c;
}

// Exact per-orbit coefficients of an invariant functional.
std::vector<Rational> orbit_coefficients(const BellFunctional& f, const InvariantSpace& space) {
  std::vector<std::optional<Rational>> values(space.dimension());
  const auto side = f.settings() + 1;
  for (std::size_t r = 0; r < side; ++r)
    for (std::size_t c = 0; c < side; ++c) {
      if (r + c == 0) continue;
      auto& v = values[space.orbit(r, c)];
      if (!v) v = f.cg(r, c);
      else if (*v != f.cg(r, c)) throw std::invalid_argument("functional is not invariant under the symmetry group");
    }
  std::vector<Rational> out;
  for (auto& v : values) out.push_back(*v);
  return out;
}

std::vector<Rational> invariant_values(const CorrelationPoint<Rational>& p, const InvariantSpace& space) {
  auto means = space.project(p.table);
  const auto side = p.settings() + 1;
  for (std::size_t r = 0; r < side; ++r)
    for (std::size_t c = 0; c < side; ++c)
      if (r + c > 0 && p.table(r, c) != means[space.orbit(r, c)])
        throw std::invalid_argument("point is not invariant under the symmetry group");
  return means;
}

}  // namespace

LocalOracle::LocalOracle(const SymmetryContext& ctx, const InvariantSpace& space) : ctx_(&ctx), space_(&space) {
  if (space.settings() != ctx.settings) throw std::invalid_argument("space and context disagree");
  auto intern = [&](Counts c) {
    auto [it, fresh] = index_.emplace(std::move(c), exact_.size());
    if (fresh) exact_.push_back(it->first);
    return it->second;
  };
  const auto m = ctx.settings;
  reps_.reserve(ctx.reps.size());
  for (Assignment a : ctx.reps) {
    RepPatterns rp;
    rp.alice_row = intern(alice_counts(space, a));
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < m; ++j) cols.push_back(intern(column_counts(space, a, j)));
    std::sort(cols.begin(), cols.end());
    for (std::size_t k = 0; k < cols.size();) {
      std::size_t e = k;
      while (e < cols.size() && cols[e] == cols[k]) ++e;
      rp.columns.emplace_back(cols[k], static_cast<std::int64_t>(e - k));
      k = e;
    }
    reps_.push_back(std::move(rp));
  }
  patterns_.resize(static_cast<Eigen::Index>(exact_.size()), static_cast<Eigen::Index>(space.dimension()));
  for (std::size_t p = 0; p < exact_.size(); ++p)
    for (std::size_t o = 0; o < space.dimension(); ++o) patterns_(p, o) = static_cast<double>(exact_[p][o]);
}

std::vector<std::int64_t> LocalOracle::vertex_counts(Assignment alice, Assignment bob) const {
  auto c = alice_counts(*space_, alice);
  for (Assignment rest = bob; rest; rest &= rest - 1) {
    auto col = column_counts(*space_, alice, std::countr_zero(rest));
    for (std::size_t o = 0; o < c.size(); ++o) c[o] += col[o];
  }
  return c;
}

OracleResult LocalOracle::maximize(const Eigen::VectorXd& direction) const {
  if (static_cast<std::size_t>(direction.size()) != space_->dimension())
    throw std::invalid_argument("direction has the wrong dimension");
  Eigen::VectorXd pv = patterns_ * direction;
  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_rep = 0;
  for (std::size_t k = 0; k < reps_.size(); ++k) {
    const auto& rp = reps_[k];
    double v = pv[static_cast<Eigen::Index>(rp.alice_row)];
    for (auto [p, mult] : rp.columns) v += static_cast<double>(mult) * std::max(pv[static_cast<Eigen::Index>(p)], 0.0);
    if (v > best) {
      best = v;
      best_rep = k;
    }
  }
  OracleResult r;
  r.alice = ctx_->reps[best_rep];
  r.value = best;
  // Bob's answer from the same pattern values used in the scan.
  for (std::size_t j = 0; j < ctx_->settings; ++j) {
    auto p = index_.at(column_counts(*space_, r.alice, j));
    if (pv[static_cast<Eigen::Index>(p)] > 0) r.bob |= Assignment{1} << j;
  }
  r.counts = vertex_counts(r.alice, r.bob);
  auto na = std::popcount(r.alice), nb = std::popcount(r.bob);
  r.ones = na + nb + static_cast<std::int64_t>(na) * nb;
  return r;
}

std::int64_t LocalOracle::maximize_exact(const std::vector<std::int64_t>& direction) const {
  if (direction.size() != space_->dimension()) throw std::invalid_argument("direction has the wrong dimension");
  std::vector<std::int64_t> pv(exact_.size());
  for (std::size_t p = 0; p < exact_.size(); ++p)
    pv[p] = std::inner_product(exact_[p].begin(), exact_[p].end(), direction.begin(), std::int64_t{0});
  std::optional<std::int64_t> best;
  for (const auto& rp : reps_) {
    std::int64_t v = pv[rp.alice_row];
    for (auto [p, mult] : rp.columns) v += mult * std::max<std::int64_t>(pv[p], 0);
    if (!best || v > *best) best = v;
  }
  return *best;
}

IterationState gilbert_run(const CorrelationPoint<double>& target, const LocalOracle& oracle,
                           const GilbertConfig& config) {
  const auto& space = oracle.space();
  auto means = space.project(target.table);
  const auto side = target.settings() + 1;
  for (std::size_t r = 0; r < side; ++r)
    for (std::size_t c = 0; c < side; ++c)
      if (r + c > 0 && std::abs(target.table(r, c) - means[space.orbit(r, c)]) > 1e-12)
        throw std::invalid_argument("target is not invariant under the symmetry group");

  IterationState st;
  const auto k = static_cast<Eigen::Index>(space.dimension());
  st.target = Eigen::Map<Eigen::VectorXd>(means.data(), k);
  st.point = Eigen::VectorXd::Zero(k);  // the all-zeros vertex is already invariant
  const Eigen::VectorXd& sizes = space.sizes();
  Eigen::VectorXd diff = st.target - st.point;
  st.distance = std::sqrt(space.inner(diff, diff));
  for (; st.iterations < config.max_iterations; ++st.iterations) {
    diff = st.target - st.point;
    auto vertex = oracle.maximize(diff);
    Eigen::VectorXd counts(k);
    for (Eigen::Index o = 0; o < k; ++o) counts[o] = static_cast<double>(vertex.counts[static_cast<std::size_t>(o)]);
    // <d, S - s> and ||S - s||^2 in full coordinates, S unsymmetrized.
    double gain = diff.dot(counts) - space.inner(diff, st.point);
    if (gain <= 0) {
      st.converged = true;
      break;
    }
    double spread = static_cast<double>(vertex.ones) - 2 * st.point.dot(counts) + space.inner(st.point, st.point);
    double step = std::min(gain / spread, 1.0);
    st.min_step = std::min(st.min_step, step);
    st.max_step = std::max(st.max_step, step);
    double raw = std::sqrt(std::max(0.0, space.inner(diff, diff) - 2 * step * gain + step * step * spread));
    st.point = (1 - step) * st.point + step * counts.cwiseQuotient(sizes);
    diff = st.target - st.point;
    double next = std::sqrt(space.inner(diff, diff));
    if (next > raw * (1 + 1e-12) + 1e-15) st.symmetrization_contracts = false;
    if (next > st.distance * (1 + 1e-12) + 1e-15) st.monotone = false;
    st.history.push_back(next);
    double improvement = st.distance - next;
    st.distance = next;
    if (improvement < config.tolerance) {
      ++st.iterations;
      st.converged = true;
      break;
    }
  }
  return st;
}

namespace {

constexpr std::int64_t kCoefficientLimit = std::int64_t{1} << 40;

// Integer orbit coefficients for direction / max|direction|, each ratio rounded
// by continued fractions under the cap. Empty when the common scale overflows.
std::vector<std::int64_t> round_direction(const Eigen::VectorXd& direction, std::int64_t cap) {
  double scale = direction.cwiseAbs().maxCoeff();
  std::vector<Rational> r;
  BigInt lcm = 1;
  for (Eigen::Index o = 0; o < direction.size(); ++o) {
    r.push_back(approximate(direction[o] / scale, cap));
    BigInt d = r.back().denominator();
    lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
  }
  if (lcm > kCoefficientLimit) return {};
  std::vector<std::int64_t> out;
  BigInt g = 0;
  for (const auto& x : r) {
    BigInt v = x.numerator() * (lcm / x.denominator());
    g = boost::multiprecision::gcd(g, v);
    out.push_back(to_int64(v));
  }
  if (g > 1)
    for (auto& v : out) v /= to_int64(g);
  return out;
}

// Fixed-point fallback: round(direction / max * resolution).
std::vector<std::int64_t> fixed_point(const Eigen::VectorXd& direction, std::int64_t resolution) {
  double scale = direction.cwiseAbs().maxCoeff();
  std::vector<std::int64_t> out;
  for (Eigen::Index o = 0; o < direction.size(); ++o)
    out.push_back(std::llround(direction[o] / scale * static_cast<double>(resolution)));
  return out;
}

BellFunctional functional_from_orbits(const InvariantSpace& space, const std::vector<std::int64_t>& coefficients) {
  std::vector<Rational> values(coefficients.begin(), coefficients.end());
  BellFunctional f(space.expand(values, Rational(0)));
  return f;
}

}  // namespace

SeparatingInequality extract_inequality(const IterationState& state, const LocalOracle& oracle,
                                        const CorrelationPoint<Rational>& clean, const ExtractOptions& options) {
  const auto& space = oracle.space();
  Eigen::VectorXd direction = state.target - state.point;
  if (state.distance <= 0 || direction.cwiseAbs().maxCoeff() == 0)
    throw std::runtime_error("target lies in the local polytope; nothing to separate");
  auto clean_values = invariant_values(clean, space);
  const Eigen::VectorXd& sizes = space.sizes();

  SeparatingInequality out{BellFunctional(space.settings()), 0, 0, true, 0, 0, std::nullopt};
  out.iterations = state.iterations;
  out.distance = state.distance;
  out.margin = space.inner(direction, state.target) - oracle.maximize(direction).value;

  std::optional<std::vector<std::int64_t>> chosen;
  std::int64_t bound = 0;
  for (std::int64_t cap = options.denominator_cap; cap <= options.max_denominator_cap; cap *= 2) {
    auto coefficients = round_direction(direction, cap);
    if (coefficients.empty()) continue;
    std::int64_t c = oracle.maximize_exact(coefficients);
    double at_target = 0;
    Rational at_clean(0);
    for (std::size_t o = 0; o < coefficients.size(); ++o) {
      at_target += static_cast<double>(coefficients[o]) * sizes[static_cast<Eigen::Index>(o)] *
                   state.target[static_cast<Eigen::Index>(o)];
      at_clean += Rational(coefficients[o]) * Rational(static_cast<long long>(sizes[static_cast<Eigen::Index>(o)])) *
                  clean_values[o];
    }
    if (at_target > static_cast<double>(c) + 1e-9 && at_clean > Rational(c)) {
      chosen = coefficients;
      bound = c;
      out.denominator_cap = cap;
      break;
    }
  }
  if (!chosen) {
    out.rounded = false;
    chosen = fixed_point(direction, std::int64_t{1} << 30);
    bound = oracle.maximize_exact(*chosen);
    out.denominator_cap = std::int64_t{1} << 30;
  }
  out.functional = functional_from_orbits(space, *chosen);
  out.functional.local_bound = Rational(bound);
  out.functional.bound_certified = true;
  out.functional.origin = "gilbert";
  out.report = efficiency_report(out.functional, clean);
  return out;
}

OptimizeResult gilbert_optimize(const CorrelationPoint<Rational>& clean, const LocalOracle& oracle,
                                const OptimizeOptions& options) {
  OptimizeResult result{SeparatingInequality{BellFunctional(oracle.space().settings()), 0, 0, true, 0, 0, std::nullopt},
                        {}, {}, 0};
  const auto clean_double = to_double(clean);
  double visibility = 1.0;
  bool have_best = false;
  for (std::size_t round = 0; round < options.rounds; ++round) {
    auto target = visibility < 1 ? apply_werner(clean_double, visibility) : clean_double;
    auto state = gilbert_run(target, oracle, options.gilbert);
    result.total_iterations += state.iterations;
    result.target_visibilities.push_back(visibility);
    if (state.distance < 1e-9) break;  // target already local
    auto ineq = extract_inequality(state, oracle, clean, options.extract);
    if (!ineq.report || !ineq.report->eta_crit) break;
    double eta = ineq.report->eta_crit->to_double();
    result.etas.push_back(eta);
    if (!have_best || eta < result.best.report->eta_crit->to_double()) {
      result.best = ineq;
      have_best = true;
    }
    if (!ineq.report->w_crit) break;
    double next = ineq.report->w_crit->to_double() - options.visibility_step;
    if (next >= visibility || next <= 0) break;
    visibility = next;
  }
  if (!have_best) throw std::runtime_error("no separating inequality found");
  return result;
}

LpCertificate certify_lp(const CorrelationPoint<Rational>& point, const BellFunctional& f, const LocalOracle& oracle) {
  if (!f.local_bound) throw std::logic_error("certification needs a local bound");
  const auto& space = oracle.space();
  const auto& ctx = oracle.context();
  auto coefficients = orbit_coefficients(f, space);
  BigInt den = common_denominator(coefficients.data(), coefficients.data() + coefficients.size());
  den = den / boost::multiprecision::gcd(den, f.local_bound->denominator()) * f.local_bound->denominator();
  den = den / boost::multiprecision::gcd(den, f.corner().denominator()) * f.corner().denominator();
  std::vector<std::int64_t> scaled;
  for (const auto& c : coefficients) scaled.push_back(to_int64(c.numerator() * (den / c.denominator())));
  const std::int64_t bound = to_int64(f.local_bound->numerator() * (den / f.local_bound->denominator())) -
                             to_int64(f.corner().numerator() * (den / f.corner().denominator()));
  auto dot = [&](const Counts& c) { return std::inner_product(c.begin(), c.end(), scaled.begin(), std::int64_t{0}); };

  LpCertificate cert;
  std::set<Counts> vertices;
  for (std::size_t k = 0; k < ctx.reps.size(); ++k) {
    const Assignment a = ctx.reps[k];
    auto base = alice_counts(space, a);
    std::int64_t v = dot(base);
    std::map<Counts, int> ties;
    for (std::size_t j = 0; j < ctx.settings; ++j) {
      auto col = column_counts(space, a, j);
      auto cv = dot(col);
      if (cv > 0) {
        v += cv;
        for (std::size_t o = 0; o < base.size(); ++o) base[o] += col[o];
      } else if (cv == 0) {
        ++ties[col];
      }
    }
    if (v > bound) throw std::logic_error("local bound is not an upper bound");
    if (v < bound) continue;
    std::size_t free_columns = 0;
    for (auto& [col, n] : ties) free_columns += static_cast<std::size_t>(n);
    cert.optimal_pairs += BigInt(ctx.sizes[k]) << free_columns;
    // Tied columns with equal patterns are interchangeable: choose how many of each.
    std::vector<std::pair<Counts, int>> groups(ties.begin(), ties.end());
    std::vector<int> pick(groups.size(), 0);
    while (true) {
      Counts c = base;
      for (std::size_t g = 0; g < groups.size(); ++g)
        for (std::size_t o = 0; o < c.size(); ++o) c[o] += pick[g] * groups[g].first[o];
      vertices.insert(std::move(c));
      std::size_t g = 0;
      while (g < groups.size() && pick[g] == groups[g].second) pick[g++] = 0;
      if (g == groups.size()) break;
      ++pick[g];
    }
  }
  cert.symmetrized_vertices = vertices.size();

  auto target = invariant_values(point, space);
  const auto n = static_cast<Eigen::Index>(vertices.size());
  const auto rows = static_cast<Eigen::Index>(space.dimension() + 1);
  LinearProgram<Rational> lp(n);
  lp.eq_lhs = LinearProgram<Rational>::Matrix::Constant(rows, n, Rational(0));
  lp.eq_rhs = LinearProgram<Rational>::Vector::Constant(rows, Rational(0));
  Eigen::Index col = 0;
  for (const auto& c : vertices) {
    for (std::size_t o = 0; o < c.size(); ++o)
      lp.eq_lhs(static_cast<Eigen::Index>(o), col) =
          Rational(BigInt(c[o]), BigInt(static_cast<long long>(space.sizes()[static_cast<Eigen::Index>(o)])));
    lp.eq_lhs(rows - 1, col) = 1;
    ++col;
  }
  for (std::size_t o = 0; o < target.size(); ++o) lp.eq_rhs(static_cast<Eigen::Index>(o)) = target[o];
  lp.eq_rhs(rows - 1) = 1;
  auto r = solve(lp);
  cert.feasible = r.status == LpStatus::Optimal;
  if (cert.feasible)
    for (Eigen::Index k = 0; k < n; ++k) cert.weights.push_back(r.x(k));
  return cert;
}

ScanResult parameter_scan(const CorrelationPoint<Rational>& clean, const LocalOracle& oracle,
                          const std::vector<std::int64_t>& values, const std::vector<std::size_t>& pinned) {
  const auto& space = oracle.space();
  const auto k = space.dimension();
  if (values.empty()) throw std::invalid_argument("empty value grid");
  auto q = invariant_values(clean, space);
  auto mixed = space.project(apply_werner(clean, Rational(0)).table);
  std::vector<bool> marginal(k, false);
  for (std::size_t i = 1; i <= space.settings(); ++i) {
    marginal[space.orbit(0, i)] = true;
    marginal[space.orbit(i, 0)] = true;
  }
  // Per-orbit totals: value = sum_o c_o weight_o.
  std::vector<double> joint_w(k, 0), marginal_w(k, 0), mixed_w(k, 0);
  for (std::size_t o = 0; o < k; ++o) {
    double w = (Rational(static_cast<long long>(space.sizes()[static_cast<Eigen::Index>(o)])) * q[o]).to_double();
    (marginal[o] ? marginal_w : joint_w)[o] = w;
    mixed_w[o] = (Rational(static_cast<long long>(space.sizes()[static_cast<Eigen::Index>(o)])) * mixed[o]).to_double();
  }
  std::vector<std::size_t> free;
  for (std::size_t o = 0; o < k; ++o)
    if (std::find(pinned.begin(), pinned.end(), o) == pinned.end()) free.push_back(o);

  ScanResult result;
  std::optional<std::vector<std::int64_t>> best;
  double best_eta = 2, best_w = 2;
  std::vector<std::size_t> idx(free.size(), 0);
  std::vector<std::int64_t> c(k, 0);
  while (true) {
    for (std::size_t f = 0; f < free.size(); ++f) c[free[f]] = values[idx[f]];
    ++result.candidates;
    double joint = 0, marg = 0, mix = 0;
    for (std::size_t o = 0; o < k; ++o) {
      joint += static_cast<double>(c[o]) * joint_w[o];
      marg += static_cast<double>(c[o]) * marginal_w[o];
      mix += static_cast<double>(c[o]) * mixed_w[o];
    }
    double quantum = joint + marg;
    if (std::any_of(c.begin(), c.end(), [](auto x) { return x != 0; })) {
      auto bound = static_cast<double>(oracle.maximize_exact(c));
      if (quantum > bound + 1e-9) {
        ++result.violating;
        // joint eta^2 + marg eta = bound, largest root below 1.
        double eta;
        if (std::abs(joint) < 1e-12) eta = bound / marg;
        else {
          double disc = marg * marg + 4 * joint * bound;
          double r1 = (-marg + std::sqrt(std::max(disc, 0.0))) / (2 * joint);
          double r2 = (-marg - std::sqrt(std::max(disc, 0.0))) / (2 * joint);
          eta = -1;
          for (double r : {r1, r2})
            if (r >= -1e-15 && r < 1) eta = std::max(eta, r);
        }
        double w = quantum > mix ? (bound - mix) / (quantum - mix) : 2;
        if (eta >= 0 && (eta < best_eta - 1e-12 || (eta < best_eta + 1e-12 && w < best_w - 1e-12))) {
          best_eta = eta;
          best_w = w;
          best = c;
        }
      }
    }
    std::size_t f = 0;
    while (f < free.size() && idx[f] + 1 == values.size()) idx[f++] = 0;
    if (f == free.size()) break;
    ++idx[f];
  }
  if (best) {
    auto fn = functional_from_orbits(space, *best);
    fn.local_bound = Rational(oracle.maximize_exact(*best));
    fn.bound_certified = true;
    fn.origin = "scan";
    result.report = efficiency_report(fn, clean);
    result.functional = std::move(fn);
  }
  return result;
}

}  // namespace graphbell
