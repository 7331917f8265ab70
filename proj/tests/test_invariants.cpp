#include "doctest.h"

#include "graphbell/invariants.hpp"
#include "graphbell/states.hpp"

#include <bit>
#include <random>

using namespace graphbell;

namespace {

Graph random_graph(std::size_t n, double p, std::mt19937& rng) {
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

// Oracle: maximum weight over all vertex subsets, for n <= 20.
std::int64_t brute_alpha(const Graph& g, const std::vector<std::int64_t>& w = {}) {
  const auto n = g.vertex_count();
  std::int64_t best = 0;
  for (std::uint32_t s = 0; s < (1U << n); ++s) {
    bool ok = true;
    std::int64_t total = 0;
    for (Vertex u = 0; u < n && ok; ++u) {
      if (!(s >> u & 1U)) continue;
      total += w.empty() ? 1 : w[u];
      for (Vertex v = u + 1; v < n; ++v)
        if ((s >> v & 1U) && g.adjacent(u, v)) ok = false;
    }
    if (ok) best = std::max(best, total);
  }
  return best;
}

// Oracle: Xi by scanning every (alpha+1)-subset.
std::size_t brute_xi(const Graph& g, std::size_t alpha) {
  const auto n = g.vertex_count();
  std::size_t best = n;
  for (std::uint32_t s = 0; s < (1U << n); ++s) {
    if (static_cast<std::size_t>(std::popcount(s)) != alpha + 1) continue;
    std::size_t worst = 0;
    for (Vertex u = 0; u < n; ++u) {
      if (!(s >> u & 1U)) continue;
      std::size_t d = 0;
      for (Vertex v = 0; v < n; ++v)
        if ((s >> v & 1U) && g.adjacent(u, v)) ++d;
      worst = std::max(worst, d);
    }
    best = std::min(best, worst);
  }
  return best;
}

std::int64_t as_int(const Rational& r) { return to_int64(r.numerator()); }

}  // namespace

TEST_CASE("alpha of named graphs") {
  CHECK(independence_number(cycle(5)).value == 2);
  CHECK(independence_number(complete(4)).value == 1);
  CHECK(independence_number(petersen()).value == 4);
  CHECK(independence_number(Graph(3)).value == 3);
  auto p24 = orthogonality_graph(pauli_states(2, Field::Real));
  auto a = independence_number(p24);
  CHECK(a.value == 5);
  CHECK(a.exact);
  CHECK(p24.is_independent(a.witness));
  CHECK(a.witness.size() == 5);
}

TEST_CASE("alpha agrees with exhaustive search on random graphs") {
  std::mt19937 rng(1);
  for (int trial = 0; trial < 150; ++trial) {
    auto g = random_graph(4 + trial % 11, 0.15 + 0.05 * (trial % 12), rng);
    auto r = independence_number(g);
    CHECK(as_int(r.value) == brute_alpha(g));
    CHECK(g.is_independent(r.witness));
    CHECK(static_cast<std::int64_t>(r.witness.size()) == brute_alpha(g));
    CHECK(clique_number(complement(g)).value == r.value);
  }
}

TEST_CASE("orbit decomposition matches plain branch and bound") {
  AlphaOptions forced;
  forced.orbit_threshold = 0;
  AlphaOptions plain;
  plain.use_symmetry = false;
  std::mt19937 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = trial % 3 == 0 ? circulant(9 + trial % 7, {1, 3}) : random_graph(12, 0.3, rng);
    auto a = independence_number(g, forced);
    auto b = independence_number(g, plain);
    CHECK(a.value == b.value);
    CHECK(g.is_independent(a.witness));
  }
  auto y8 = newman_graph(8);
  CHECK(independence_number(y8, forced).value == 8);
  CHECK(independence_number(y8, plain).value == 8);
}

TEST_CASE("weighted alpha") {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> wd(1, 5);
  for (int trial = 0; trial < 60; ++trial) {
    auto g = random_graph(11, 0.3, rng);
    std::vector<std::int64_t> w(11);
    std::vector<Rational> wr;
    for (auto& x : w) {
      x = wd(rng);
      wr.emplace_back(Rational(x, 3));
    }
    AlphaOptions forced;
    forced.orbit_threshold = 0;
    auto r = independence_number(WeightedGraph(g, wr), forced);
    CHECK(r.value == Rational(brute_alpha(g, w), 3));
  }
  auto c5 = cycle(5);
  CHECK(independence_number(WeightedGraph(c5, std::vector<Rational>(5, Rational(1)))).value ==
        independence_number(c5).value);
  auto gap = weighted_gap(WeightedGraph(c5, std::vector<Rational>(5, Rational(1))), 3);
  CHECK_FALSE(gap.gap);
  CHECK(gap.quantum == Rational(5, 3));
}

TEST_CASE("multiplicativity of alpha under products") {
  std::vector<Graph> small{cycle(5), complete(3), petersen()};
  for (const auto& g : small)
    for (const auto& h : small)
      for (auto kind : {ProductKind::Or, ProductKind::Lexicographic}) {
        auto p = product(g, h, kind);
        CHECK(independence_number(p).value == independence_number(g).value * independence_number(h).value);
      }
  CHECK(brute_alpha(product(cycle(5), cycle(5), ProductKind::Lexicographic)) == 4);
}

TEST_CASE("Xi cap") {
  CHECK(xi_cap(circulant(10, {2, 3}), as_int(independence_number(circulant(10, {2, 3})).value)).value == 2);
  CHECK(xi_cap(complete(6), 1).value == 1);
  auto p24 = orthogonality_graph(pauli_states(2, Field::Real));
  auto x = xi_cap(p24, 5);
  CHECK(x.value == 1);
  CHECK(x.exact);
  CHECK(x.witness.size() == 6);
  std::mt19937 rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    auto g = random_graph(5 + trial % 8, 0.4, rng);
    auto alpha = static_cast<std::size_t>(brute_alpha(g));
    if (alpha == g.vertex_count()) continue;
    auto r = xi_cap(g, alpha);
    CHECK(r.value == brute_xi(g, alpha));
    CHECK(r.value >= 1);
  }
  auto starved = xi_cap(petersen(), 4, 3);
  CHECK_FALSE(starved.exact);
  CHECK(starved.value == 1);
}

TEST_CASE("fractional packing and chromatic numbers") {
  CHECK(fractional_packing(cycle(5)).value == Rational(5, 2));
  CHECK(fractional_packing(cycle(5), false).value == Rational(5, 2));
  CHECK(fractional_chromatic(cycle(5)).value == Rational(5, 2));
  CHECK(fractional_chromatic(cycle(5), false).value == Rational(5, 2));
  CHECK(fractional_chromatic(complete(4)).value == 4);
  CHECK(fractional_packing(path(3)).value == 2);
  auto p24 = orthogonality_graph(pauli_states(2, Field::Real));
  auto vt = fractional_packing(p24);
  CHECK(vt.value == 6);
  CHECK(vt.method == "vertex-transitive");
  CHECK(fractional_packing(p24, false).value == 6);
  // Both routes agree on vertex-transitive graphs.
  for (auto g : {circulant(7, {1}), circulant(9, {1, 2}), circulant(12, {1, 4}), petersen(), circulant(14, {2, 5})}) {
    CHECK(fractional_chromatic(g, true).value == fractional_chromatic(g, false).value);
    CHECK(fractional_packing(g, true).value == fractional_packing(g, false).value);
  }
}

TEST_CASE("Newman alpha formula") {
  CHECK(newman_alpha(28).value == 397594);
  CHECK(newman_alpha(32).value == 3572224);
  CHECK(newman_alpha(4).value == 1);
  CHECK(newman_alpha(8).value == 8);
  CHECK(newman_alpha(28).proven);
  CHECK(newman_alpha(36).proven);
  CHECK_FALSE(newman_alpha(24).proven);
  CHECK_FALSE(newman_alpha(40).proven);
  CHECK_THROWS(newman_alpha(10));
  // alpha(Omega_n) = 4 alpha(Y_n) by direct search for n = 4, 8.
  CHECK(independence_number(hadamard_graph(4, Parity::All)).value == 4 * newman_alpha(4).value);
  CHECK(independence_number(hadamard_graph(8, Parity::All)).value == 4 * newman_alpha(8).value);
}

TEST_CASE("invariant report and table scan") {
  auto p24 = orthogonality_graph(pauli_states(2, Field::Real));
  auto r = invariant_report(p24, 4);
  CHECK(r.alpha.value == 5);
  CHECK(r.omega.value == 4);
  CHECK(r.xi.value == 1);
  CHECK(r.alpha_star.value == 6);
  CHECK(r.xi_rank_lower == 4);
  CHECK(r.xi_rank_upper == 4);
  CHECK(r.vertex_transitive);
  CHECK(r.alpha.value <= r.alpha_star.value);

  auto scan = vt_scan({cycle(5), p24, circulant(5, {1, 2})});
  REQUIRE(scan.rows.size() == 2);
  CHECK(scan.rows[0].vertices == 5);
  CHECK(scan.rows[0].minimum == doctest::Approx(std::sqrt(0.8)));
  CHECK(scan.rows[0].witness == 0);
  CHECK(scan.rows[1].minimum == doctest::Approx(std::sqrt(5.0 / 6.0)));
}

TEST_CASE("clique witnesses and maximal cliques") {
  auto p24 = orthogonality_graph(pauli_states(2, Field::Real));
  auto w = clique_number(p24);
  CHECK(w.value == 4);
  CHECK(p24.is_clique(w.witness));
  auto cliques = maximal_cliques(cycle(5), 100);
  CHECK(cliques.size() == 5);
  CHECK(greedy_chromatic_bound(cycle(5)) == 3);
}
