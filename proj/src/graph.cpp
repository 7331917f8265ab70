#include "graphbell/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace graphbell {

Graph::Graph(std::size_t vertex_count) : adjacency_(vertex_count, Bitset(vertex_count)) {}

Graph::Graph(std::size_t vertex_count, std::span<const Edge> edges) : Graph(vertex_count) {
  for (auto [u, v] : edges) add_edge(u, v);
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& row : adjacency_) twice += row.count();
  return twice / 2;
}

std::optional<std::size_t> Graph::regular_degree() const {
  if (adjacency_.empty()) return 0;
  std::size_t d = degree(0);
  for (Vertex v = 1; v < vertex_count(); ++v)
    if (degree(v) != d) return std::nullopt;
  return d;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (Vertex u = 0; u < vertex_count(); ++u)
    for (Vertex v = adjacency_[u].next(u); v < vertex_count(); v = adjacency_[u].next(v)) out.emplace_back(u, v);
  return out;
}

void Graph::add_edge(Vertex u, Vertex v) {
  if (u >= vertex_count() || v >= vertex_count()) throw std::out_of_range("edge endpoint out of range");
  if (u == v) throw std::invalid_argument("self-loop rejected");
  adjacency_[u].set(v);
  adjacency_[v].set(u);
}

void Graph::remove_edge(Vertex u, Vertex v) {
  adjacency_[u].reset(v);
  adjacency_[v].reset(u);
}

void Graph::set_labels(std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != vertex_count()) throw std::invalid_argument("label count mismatch");
  labels_ = std::move(labels);
}

bool Graph::is_independent(std::span<const Vertex> set) const {
  for (std::size_t a = 0; a < set.size(); ++a)
    for (std::size_t b = a + 1; b < set.size(); ++b)
      if (set[a] == set[b] || adjacent(set[a], set[b])) return false;
  return true;
}

bool Graph::is_clique(std::span<const Vertex> set) const {
  for (std::size_t a = 0; a < set.size(); ++a)
    for (std::size_t b = a + 1; b < set.size(); ++b)
      if (!adjacent(set[a], set[b])) return false;
  return true;
}

WeightedGraph::WeightedGraph(Graph g, std::vector<Rational> w) : graph(std::move(g)), weights(std::move(w)) {
  if (weights.size() != graph.vertex_count()) throw std::invalid_argument("weight count mismatch");
  for (const auto& x : weights)
    if (x.sign() < 0) throw std::invalid_argument("negative vertex weight");
}

Rational WeightedGraph::total_weight() const {
  Rational s;
  for (const auto& x : weights) s += x;
  return s;
}

Graph circulant(std::size_t n, const std::set<std::size_t>& offsets) {
  if (n == 0) throw std::invalid_argument("circulant needs n >= 1");
  Graph g(n);
  for (auto k : offsets) {
    if (k == 0 || 2 * k > n) throw std::invalid_argument("circulant offset must lie in 1..n/2");
    for (Vertex i = 0; i < n; ++i) g.add_edge(i, (i + k) % n);
  }
  return g;
}

Graph cycle(std::size_t n) { return circulant(n, {1}); }

Graph complete(std::size_t n) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph path(std::size_t n) {
  Graph g(n);
  for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph petersen() {
  Graph g(10);
  for (Vertex i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

Graph complement(const Graph& g) {
  const auto n = g.vertex_count();
  Graph c(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (!g.adjacent(u, v)) c.add_edge(u, v);
  return c;
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  Graph s(vertices.size());
  for (std::size_t a = 0; a < vertices.size(); ++a)
    for (std::size_t b = a + 1; b < vertices.size(); ++b)
      if (g.adjacent(vertices[a], vertices[b])) s.add_edge(a, b);
  return s;
}

Graph induced_subgraph(const Graph& g, const Bitset& vertices) {
  auto list = vertices.indices();
  return induced_subgraph(g, std::span<const Vertex>(list));
}

Graph product(const Graph& g, const Graph& h, ProductKind kind) {
  if (g.empty() || h.empty()) throw std::invalid_argument("product of empty graphs");
  const auto ng = g.vertex_count(), nh = h.vertex_count();
  Graph p(ng * nh);
  for (Vertex a = 0; a < ng; ++a)
    for (Vertex b = 0; b < nh; ++b)
      for (Vertex c = a; c < ng; ++c)
        for (Vertex d = (c == a ? b + 1 : 0); d < nh; ++d) {
          bool adj = kind == ProductKind::Or ? (g.adjacent(a, c) || h.adjacent(b, d))
                                             : (g.adjacent(a, c) || (a == c && h.adjacent(b, d)));
          if (adj) p.add_edge(a * nh + b, c * nh + d);
        }
  return p;
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  const auto n = g.vertex_count();
  std::vector<std::vector<Vertex>> out;
  Bitset seen(n);
  for (Vertex s = 0; s < n; ++s) {
    if (seen.test(s)) continue;
    std::vector<Vertex> comp{s};
    seen.set(s);
    for (std::size_t k = 0; k < comp.size(); ++k) {
      Bitset fresh = g.neighbors(comp[k]);
      fresh.subtract(seen);
      fresh.for_each([&](std::size_t v) {
        seen.set(v);
        comp.push_back(v);
      });
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace graphbell
