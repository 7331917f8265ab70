#pragma once

#include "graphbell/automorphisms.hpp"
#include "graphbell/graph.hpp"
#include "graphbell/permutation_group.hpp"
#include "graphbell/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace graphbell {

struct AlphaOptions {
  /// Below this many vertices the orbit decomposition hands over to plain branch and bound.
  std::size_t orbit_threshold = 150;
  /// Branch-and-bound node budget across the whole computation.
  std::size_t node_budget = 200'000'000;
  bool use_symmetry = true;
  AutomorphismOptions automorphism;
};

struct IndependentSet {
  Rational value;  // size, or total weight
  std::vector<Vertex> witness;
  bool exact = true;
};

/// Maximum (weighted) independent set. `group`, when given, must act on g and
/// fix the weights; otherwise automorphisms are computed as needed.
IndependentSet independence_number(const Graph& g, const AlphaOptions& options = {},
                                   const PermutationGroup* group = nullptr);
IndependentSet independence_number(const WeightedGraph& g, const AlphaOptions& options = {},
                                   const PermutationGroup* group = nullptr);

/// Plain bitset branch and bound with clique-cover bounds; no symmetry.
IndependentSet max_independent_set(const Graph& g, const std::vector<std::int64_t>& weights, std::size_t node_budget);

IndependentSet clique_number(const Graph& g, const AlphaOptions& options = {});

struct XiResult {
  std::size_t value = 1;
  std::vector<Vertex> witness;  // an (alpha+1)-subset attaining the value
  bool exact = true;
};
/// Minimum over (alpha+1)-subsets of the maximum in-subset degree.
XiResult xi_cap(const Graph& g, std::size_t alpha, std::size_t node_budget = 50'000'000);

struct FractionalValue {
  Rational value;
  std::string method;  // "lp" or "vertex-transitive"
  bool exact = true;
};
/// Fractional packing number over maximal-clique constraints.
FractionalValue fractional_packing(const Graph& g, bool allow_vertex_transitive_shortcut = true,
                                   std::size_t clique_limit = 200'000);
/// Fractional chromatic number via the independent-set covering LP.
FractionalValue fractional_chromatic(const Graph& g, bool allow_vertex_transitive_shortcut = true,
                                     std::size_t set_limit = 200'000);

std::vector<std::vector<Vertex>> maximal_cliques(const Graph& g, std::size_t limit);

/// Greedy colouring size; an upper bound on the chromatic number.
std::size_t greedy_chromatic_bound(const Graph& g);

struct NewmanAlpha {
  BigInt value;      // alpha(Y_n)
  bool proven = true;  // n = 4 p^k or n = 2^k
};
NewmanAlpha newman_alpha(int n);

struct InvariantReport {
  IndependentSet alpha;
  IndependentSet omega;
  XiResult xi;
  FractionalValue alpha_star;
  std::size_t xi_rank_lower = 0;
  std::size_t xi_rank_upper = 0;
  std::optional<FractionalValue> chi_fractional;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  bool vertex_transitive = false;
};
/// `representation_dimension` is the dimension of a verified orthonormal representation, if any.
InvariantReport invariant_report(const Graph& g, std::optional<std::size_t> representation_dimension = std::nullopt,
                                 const AlphaOptions& options = {});

struct ScanRow {
  std::size_t vertices = 0;
  double minimum = 0;
  std::size_t witness = 0;
};
struct ScanReport {
  std::vector<ScanRow> rows;
  std::vector<std::size_t> skipped;
};
/// Per vertex count, the minimum of sqrt(alpha / (|V| / omega)).
ScanReport vt_scan(const std::vector<Graph>& graphs, const AlphaOptions& options = {});

struct WeightedGap {
  Rational alpha;
  Rational quantum;  // sum of weights / xi
  bool gap = false;
  std::vector<Vertex> witness;
};
WeightedGap weighted_gap(const WeightedGraph& g, std::size_t xi, const AlphaOptions& options = {});

}  // namespace graphbell
