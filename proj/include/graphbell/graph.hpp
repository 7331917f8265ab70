#pragma once

#include "graphbell/bitset.hpp"
#include "graphbell/rational.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace graphbell {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph with per-vertex bitset adjacency.
/// Invariants: no self-loops, symmetric adjacency, bitset width == vertex count.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t vertex_count);
  Graph(std::size_t vertex_count, std::span<const Edge> edges);

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const;
  bool empty() const { return adjacency_.empty(); }

  bool adjacent(Vertex u, Vertex v) const { return adjacency_[u].test(v); }
  const Bitset& neighbors(Vertex v) const { return adjacency_[v]; }
  std::size_t degree(Vertex v) const { return adjacency_[v].count(); }
  /// Common degree if every vertex has it.
  std::optional<std::size_t> regular_degree() const;

  /// Edges (u, v) with u < v, lexicographically sorted.
  std::vector<Edge> edges() const;

  void add_edge(Vertex u, Vertex v);
  void remove_edge(Vertex u, Vertex v);

  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels);

  bool is_independent(std::span<const Vertex> set) const;
  bool is_clique(std::span<const Vertex> set) const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.adjacency_ == b.adjacency_; }

 private:
  std::vector<Bitset> adjacency_;
  std::vector<std::string> labels_;
};

/// Graph with nonnegative rational vertex weights.
struct WeightedGraph {
  Graph graph;
  std::vector<Rational> weights;

  WeightedGraph(Graph g, std::vector<Rational> w);
  Rational total_weight() const;
};

enum class ProductKind { Or, Lexicographic };

Graph circulant(std::size_t n, const std::set<std::size_t>& offsets);
Graph cycle(std::size_t n);
Graph complete(std::size_t n);
Graph path(std::size_t n);
Graph petersen();
Graph complement(const Graph& g);
/// Subgraph on `vertices` (in the given order) keeping exactly internal edges.
Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);
Graph induced_subgraph(const Graph& g, const Bitset& vertices);
/// Vertex (a, b) has index a * |V(h)| + b.
Graph product(const Graph& g, const Graph& h, ProductKind kind);
/// Disjoint union of the connected components, as lists of sorted vertices.
std::vector<std::vector<Vertex>> connected_components(const Graph& g);

}  // namespace graphbell
