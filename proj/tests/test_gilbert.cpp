#include "doctest.h"

#include "graphbell/automorphisms.hpp"
#include "graphbell/fixtures.hpp"
#include "graphbell/gilbert.hpp"
#include "graphbell/states.hpp"

#include <bit>
#include <random>
#include <set>

using namespace graphbell;

namespace {

// Oracle: every group element by closure over the generators.
std::set<Permutation> group_elements(const PermutationGroup& g) {
  std::set<Permutation> seen{identity_permutation(g.degree())};
  std::vector<Permutation> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    auto x = frontier.back();
    frontier.pop_back();
    for (const auto& gen : g.generators()) {
      auto y = compose(gen, x);
      if (seen.insert(y).second) frontier.push_back(std::move(y));
    }
  }
  return seen;
}

// Burnside: orbits of subsets = mean over elements of 2^(cycles).
BigInt burnside_subset_orbits(const std::set<Permutation>& elements) {
  BigInt total = 0;
  for (const auto& p : elements) {
    std::vector<bool> done(p.size(), false);
    int cycles = 0;
    for (std::size_t s = 0; s < p.size(); ++s) {
      if (done[s]) continue;
      ++cycles;
      for (auto x = s; !done[x]; x = p[x]) done[x] = true;
    }
    total += BigInt(1) << cycles;
  }
  return total / static_cast<long long>(elements.size());
}

CgMatrix<double> vertex_table(std::size_t m, Assignment a, Assignment b) {
  CgMatrix<double> t = CgMatrix<double>::Zero(static_cast<Eigen::Index>(m + 1), static_cast<Eigen::Index>(m + 1));
  t(0, 0) = 1;
  for (std::size_t i = 0; i < m; ++i) {
    t(0, static_cast<Eigen::Index>(1 + i)) = static_cast<double>(a >> i & 1U);
    t(static_cast<Eigen::Index>(1 + i), 0) = static_cast<double>(b >> i & 1U);
    for (std::size_t j = 0; j < m; ++j)
      t(static_cast<Eigen::Index>(1 + j), static_cast<Eigen::Index>(1 + i)) = static_cast<double>((a >> i & 1U) & (b >> j & 1U));
  }
  return t;
}

Eigen::VectorXd as_vector(const std::vector<double>& v) { return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())); }

Permutation rotation(std::size_t m) {
  Permutation p(m);
  for (std::size_t k = 0; k < m; ++k) p[k] = static_cast<Vertex>((k + 1) % m);
  return p;
}

struct Pauli24 {
  VectorSet rays = pauli_states(2, Field::Real);
  PermutationGroup group = automorphism_group(orthogonality_graph(rays));
  SymmetryContext ctx = enumerate_classes(24, group, true);
  InvariantSpace space{ctx};
  LocalOracle oracle{ctx, space};
};

const Pauli24& pauli24() {
  static const Pauli24 instance;
  return instance;
}

}  // namespace

TEST_CASE("class enumeration on small groups") {
  auto trivial = enumerate_classes(3, PermutationGroup(3));
  CHECK(trivial.class_count() == 8);
  CHECK(trivial.total() == 8);

  Permutation swap01{1, 0, 2, 3, 4};
  auto sym = enumerate_classes(5, PermutationGroup(5, {swap01, rotation(5)}));
  CHECK(sym.class_count() == 6);  // one class per Hamming weight
  CHECK(sym.total() == 32);
  CHECK(sym.reps == std::vector<Assignment>{0, 1, 3, 7, 15, 31});
  CHECK(sym.sizes == std::vector<std::uint64_t>{1, 5, 10, 10, 5, 1});

  for (std::size_t m : {6, 9, 10, 12}) {
    std::vector<PermutationGroup> groups{PermutationGroup(m, {rotation(m)}),
                                         automorphism_group(circulant(m, {1, 3})),
                                         automorphism_group(petersen())};
    for (const auto& g : groups) {
      if (g.degree() != m) continue;
      auto ctx = enumerate_classes(m, g);
      auto elements = group_elements(g);
      CHECK(BigInt(ctx.class_count()) == burnside_subset_orbits(elements));
      CHECK(ctx.total() == BigInt(1) << m);
      // Representatives are orbit minima and sizes are orbit lengths.
      for (std::size_t k = 0; k < ctx.reps.size(); k += 1 + ctx.reps.size() / 40) {
        std::set<Assignment> orbit;
        for (const auto& p : elements) orbit.insert(permute_assignment(p, ctx.reps[k]));
        CHECK(*orbit.begin() == ctx.reps[k]);
        CHECK(orbit.size() == ctx.sizes[k]);
      }
    }
  }
  ClassOptions tight;
  tight.max_classes = 10;
  CHECK_THROWS_AS(enumerate_classes(12, PermutationGroup(12), false, tight), ClassExplosion);
}

TEST_CASE("Pauli-24 classes and invariant coordinates") {
  const auto& p = pauli24();
  auto elements = group_elements(p.group);
  CHECK(elements.size() == 1152);
  CHECK(BigInt(p.ctx.class_count()) == burnside_subset_orbits(elements));
  CHECK(p.ctx.class_count() == 18685);
  CHECK(p.ctx.total() == BigInt(1) << 24);
  CHECK(p.space.dimension() == 6);  // one marginal orbit and five joint orbits
  // Without the party swap: corner, split Alice and Bob marginals, and the joint
  // orbits are the orbits on ordered pairs (Burnside: mean of fix(g)^2).
  BigInt pair_orbits = 0;
  for (const auto& g : elements) {
    long long fixed = 0;
    for (std::size_t k = 0; k < g.size(); ++k) fixed += g[k] == k;
    pair_orbits += fixed * fixed;
  }
  pair_orbits /= static_cast<long long>(elements.size());
  CHECK(BigInt(coordinate_orbits(24, p.group, false).size()) == pair_orbits + 3);
  CHECK(p.space.sizes().sum() == doctest::Approx(25.0 * 25.0 - 1.0));
}

TEST_CASE("oracle dominates and attains the vertex maximum") {
  auto m = std::size_t{6};
  auto ctx = enumerate_classes(m, PermutationGroup(m, {rotation(m)}), true);
  InvariantSpace space(ctx);
  LocalOracle oracle(ctx, space);
  std::mt19937 rng(2);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 25; ++trial) {
    Eigen::VectorXd dir(static_cast<Eigen::Index>(space.dimension()));
    for (auto& x : dir) x = gauss(rng);
    double best = -1e300;
    for (Assignment a = 0; a < 64; ++a)
      for (Assignment b = 0; b < 64; ++b) best = std::max(best, space.inner(dir, as_vector(space.project(vertex_table(m, a, b)))));
    auto r = oracle.maximize(dir);
    CHECK(r.value == doctest::Approx(best));
    CHECK(space.inner(dir, as_vector(space.project(vertex_table(m, r.alice, r.bob)))) == doctest::Approx(r.value));
  }
}

TEST_CASE("exact oracle equals the local bound of the expanded functional") {
  const auto& p = pauli24();
  std::mt19937 rng(6);
  std::uniform_int_distribution<std::int64_t> coef(-6, 6);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<std::int64_t> c(p.space.dimension());
    for (auto& x : c) x = coef(rng);
    std::vector<Rational> r(c.begin(), c.end());
    BellFunctional f(p.space.expand(r, Rational(0)));
    CHECK(Rational(p.oracle.maximize_exact(c)) == local_bound(f, p.ctx).value);
  }
  auto fx = optimized_pauli24();
  CHECK(local_bound(fx.functional, 24).value == 0);
}

TEST_CASE("Gilbert iterations on the clean Pauli-24 point") {
  const auto& p = pauli24();
  auto q = quantum_point(p.rays);
  GilbertConfig cfg;
  cfg.max_iterations = 1500;
  auto st = gilbert_run(to_double(q), p.oracle, cfg);
  CHECK(st.iterations == 1500);
  CHECK_FALSE(st.converged);
  CHECK(st.monotone);
  CHECK(st.symmetrization_contracts);
  CHECK(st.min_step >= 0.0);
  CHECK(st.max_step <= 1.0);
  CHECK(st.distance > 0.1);
  for (std::size_t k = 1; k < st.history.size(); ++k) CHECK(st.history[k] <= st.history[k - 1] + 1e-12);

  auto ineq = extract_inequality(st, p.oracle, q);
  CHECK(ineq.margin > 0);
  CHECK(ineq.functional.party_symmetric());
  for (const auto& g : p.group.generators()) CHECK(ineq.functional.invariant_under(g));
  REQUIRE(ineq.report);
  CHECK(ineq.report->status == ViolationStatus::Violation);
  CHECK(*ineq.functional.local_bound == local_bound(ineq.functional, p.ctx).value);
  // Rounding is deterministic: a second extraction gives the same table.
  auto again = extract_inequality(st, p.oracle, q);
  CHECK(again.functional.cg == ineq.functional.cg);
  CHECK(again.denominator_cap == ineq.denominator_cap);
}

TEST_CASE("Gilbert converges to a local target") {
  const auto& p = pauli24();
  auto mixed = apply_werner(to_double(quantum_point(p.rays)), 0.0);
  GilbertConfig cfg;
  cfg.max_iterations = 4000;
  cfg.tolerance = 1e-6;
  auto st = gilbert_run(mixed, p.oracle, cfg);
  CHECK(st.distance < 1e-3);
  CHECK(st.monotone);
  CHECK_THROWS(extract_inequality(IterationState{}, p.oracle, quantum_point(p.rays)));

  // A non-invariant target is refused.
  auto broken = to_double(quantum_point(p.rays));
  broken.table(0, 1) = 0.5;
  CHECK_THROWS(gilbert_run(broken, p.oracle, cfg));
}

TEST_CASE("LP certificate on the CHSH face") {
  const std::size_t m = 2;
  auto ctx = enumerate_classes(m, PermutationGroup(m));
  InvariantSpace space(ctx);
  LocalOracle oracle(ctx, space);
  BellFunctional chsh(m);
  chsh.alice(0) = chsh.bob(0) = -1;
  chsh.joint(0, 0) = chsh.joint(0, 1) = chsh.joint(1, 0) = 1;
  chsh.joint(1, 1) = -1;
  chsh.local_bound = local_bound(chsh).value;
  CHECK(*chsh.local_bound == 0);

  // PR box mixed with uniform noise at visibility v.
  auto noisy_pr = [&](const Rational& v) {
    CorrelationPoint<Rational> p;
    p.dimension = 2;
    p.table = CgMatrix<Rational>::Constant(3, 3, Rational(1, 2));
    p.table(0, 0) = 1;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Rational pr = i * j == 1 ? Rational(0) : Rational(1, 2);
        p.table(1 + j, 1 + i) = v * pr + (Rational(1) - v) * Rational(1, 4);
      }
    return p;
  };
  CHECK(value(chsh, noisy_pr(Rational(1, 2))) == 0);
  auto on_face = certify_lp(noisy_pr(Rational(1, 2)), chsh, oracle);
  CHECK(on_face.optimal_pairs == 8);
  CHECK(on_face.feasible);
  Rational sum(0);
  for (const auto& w : on_face.weights) {
    CHECK(w >= 0);
    sum += w;
  }
  CHECK(sum == 1);
  CHECK_FALSE(certify_lp(noisy_pr(Rational(1)), chsh, oracle).feasible);
  CHECK_FALSE(certify_lp(noisy_pr(Rational(1, 2) + Rational(1, 1000000)), chsh, oracle).feasible);
}

TEST_CASE("optimized fixture certificate") {
  const auto& p = pauli24();
  auto fx = optimized_pauli24();
  fx.functional.local_bound = Rational(0);
  auto group = automorphism_group(orthogonality_graph(fx.rays));
  auto ctx = enumerate_classes(24, group, true);
  InvariantSpace space(ctx);
  LocalOracle oracle(ctx, space);
  auto q = quantum_point(fx.rays);
  auto at_w = certify_lp(apply_werner(q, Rational(7, 9)), fx.functional, oracle);
  CHECK(at_w.optimal_pairs == 452929);
  CHECK(at_w.symmetrized_vertices == 132);
  CHECK(at_w.feasible);
  CHECK(certify_lp(apply_detection(q, Rational(4, 5)), fx.functional, oracle).feasible);
  CHECK_FALSE(certify_lp(apply_werner(q, Rational(7, 9) + Rational(1, 1000000)), fx.functional, oracle).feasible);
  CHECK(p.ctx.class_count() == ctx.class_count());
}

TEST_CASE("parameter scan recovers the optimized inequality") {
  auto fx = optimized_pauli24();
  auto group = automorphism_group(orthogonality_graph(fx.rays));
  auto ctx = enumerate_classes(24, group, true);
  InvariantSpace space(ctx);
  LocalOracle oracle(ctx, space);
  // Pin the orbits on which the fixture vanishes: the same-block joints.
  auto coefficients = space.project(fx.functional.cg);
  std::vector<std::size_t> pinned;
  for (std::size_t o = 0; o < coefficients.size(); ++o)
    if (coefficients[o] == 0) pinned.push_back(o);
  CHECK(pinned.size() == 3);
  std::vector<std::int64_t> values;
  for (std::int64_t v = -6; v <= 6; ++v) values.push_back(v);
  auto r = parameter_scan(quantum_point(fx.rays), oracle, values, pinned);
  CHECK(r.candidates == 13 * 13 * 13);
  CHECK(r.violating > 0);
  REQUIRE(r.report);
  REQUIRE(r.report->eta_crit);
  CHECK(*r.report->eta_crit == QuadraticSurd(Rational(4, 5)));
  CHECK(r.report->w_crit == Rational(7, 9));
}
