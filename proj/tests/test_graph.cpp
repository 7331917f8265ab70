#include "doctest.h"

#include "graphbell/automorphisms.hpp"
#include "graphbell/graph.hpp"
#include "graphbell/graph_io.hpp"

#include <random>
#include <sstream>

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

// Group order by closing the generators under composition; only for tiny groups.
std::size_t brute_order(const PermutationGroup& grp) {
  std::set<Permutation> seen{identity_permutation(grp.degree())};
  std::vector<Permutation> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& p : frontier)
      for (const auto& g : grp.generators()) {
        auto q = compose(g, p);
        if (seen.insert(q).second) next.push_back(q);
      }
    frontier = std::move(next);
  }
  return seen.size();
}

// Number of automorphisms by exhaustive permutation search (n <= 8).
std::size_t brute_automorphism_count(const Graph& g) {
  auto p = identity_permutation(g.vertex_count());
  std::size_t count = 0;
  do {
    if (preserves(g, p)) ++count;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

}  // namespace

TEST_CASE("circulant constructors") {
  auto ci = circulant(10, {2, 3});
  CHECK(ci.vertex_count() == 10);
  CHECK(ci.edge_count() == 20);
  CHECK(cycle(5).edge_count() == 5);
  CHECK(circulant(4, {1, 2}).edge_count() == 6);
  CHECK(circulant(4, {1, 2}) == complete(4));
  CHECK_THROWS(circulant(10, {0}));
  CHECK_THROWS(circulant(10, {6}));
}

TEST_CASE("complement and induced subgraph") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = random_graph(12, 0.4, rng);
    auto c = complement(g);
    CHECK(c.edge_count() == 66 - g.edge_count());
    CHECK(complement(c) == g);
    std::vector<Vertex> sub{1, 3, 4, 8, 11};
    auto s = induced_subgraph(g, std::span<const Vertex>(sub));
    for (std::size_t a = 0; a < sub.size(); ++a)
      for (std::size_t b = 0; b < sub.size(); ++b)
        if (a != b) CHECK(s.adjacent(a, b) == g.adjacent(sub[a], sub[b]));
  }
}

TEST_CASE("lexicographic product is a spanning subgraph of the OR product") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    auto g = random_graph(5, 0.5, rng);
    auto h = random_graph(4, 0.5, rng);
    auto lex = product(g, h, ProductKind::Lexicographic);
    auto orp = product(g, h, ProductKind::Or);
    REQUIRE(lex.vertex_count() == orp.vertex_count());
    for (auto [u, v] : lex.edges()) CHECK(orp.adjacent(u, v));
  }
  CHECK(product(cycle(5), cycle(5), ProductKind::Or).vertex_count() == 25);
  // row-major: (a, b) -> a * |V(h)| + b
  auto p = product(complete(2), Graph(3), ProductKind::Lexicographic);
  CHECK(p.adjacent(0, 3));
  CHECK(!p.adjacent(0, 1));
}

TEST_CASE("automorphisms of small named graphs") {
  auto c5 = automorphisms(cycle(5));
  CHECK(c5.status == SearchStatus::Complete);
  CHECK(c5.group.order() == BigInt(10));
  CHECK(c5.group.orbits().size() == 1);

  auto k4 = automorphisms(complete(4));
  CHECK(k4.group.order() == BigInt(24));
  CHECK(k4.group.orbits().size() == 1);

  CHECK(is_vertex_transitive(cycle(5)));
  CHECK_FALSE(is_vertex_transitive(path(3)));
  CHECK(automorphisms(petersen()).group.order() == BigInt(120));
  CHECK(automorphisms(Graph(4)).group.order() == BigInt(24));
}

TEST_CASE("automorphism order matches exhaustive search on random graphs") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = random_graph(7, trial % 2 ? 0.3 : 0.5, rng);
    auto r = automorphisms(g);
    REQUIRE(r.status == SearchStatus::Complete);
    for (const auto& p : r.group.generators()) CHECK(preserves(g, p));
    auto expected = brute_automorphism_count(g);
    CHECK(r.group.order() == BigInt(expected));
    CHECK(brute_order(r.group) == expected);
  }
}

TEST_CASE("circulants are vertex-transitive") {
  for (std::size_t n = 5; n <= 13; ++n) CHECK(is_vertex_transitive(circulant(n, {1, 2})));
}

TEST_CASE("automorphism budget exhaustion is reported, not silently trivial") {
  AutomorphismOptions tight;
  tight.node_budget = 2;
  auto r = automorphisms(petersen(), tight);
  CHECK(r.status == SearchStatus::Timeout);
  CHECK_THROWS_AS(automorphism_group(petersen(), tight), AutomorphismTimeout);
}

TEST_CASE("edge-list round trip is byte-deterministic") {
  auto g = circulant(10, {2, 3});
  std::ostringstream a;
  write_edge_list(a, g);
  std::istringstream in(a.str());
  auto back = read_edge_list(in);
  CHECK(back == g);
  std::ostringstream b;
  write_edge_list(b, back);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("p 10 20\n", 0) == 0);
}

TEST_CASE("permutation file round trip") {
  auto grp = automorphism_group(petersen());
  std::ostringstream out;
  write_permutations(out, grp.generators());
  std::istringstream in(out.str());
  auto gens = read_permutations(in);
  CHECK(gens == grp.generators());
}
