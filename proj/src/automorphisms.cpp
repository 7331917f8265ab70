#include "graphbell/automorphisms.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>

namespace graphbell {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return h ^ x;
}

struct Node {
  std::vector<std::vector<Vertex>> cells;  // ordered partition; each cell sorted
  std::uint64_t trace = 0;

  bool discrete() const { return std::all_of(cells.begin(), cells.end(), [](const auto& c) { return c.size() == 1; }); }
  std::size_t target() const {
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (cells[i].size() > 1) return i;
    return cells.size();
  }
};

struct Timeout {};

class Search {
 public:
  Search(const Graph& g, std::size_t budget) : g_(g), n_(g.vertex_count()), budget_(budget) {}

  // Refines to the coarsest equitable partition finer than `node`, splitting by
  // the cells in `queue`. Pieces are ordered by neighbour count, so the result
  // is label-invariant; the trace hash records every split.
  void refine(Node& node, std::deque<Bitset> queue) const {
    std::vector<std::size_t> counts;
    while (!queue.empty()) {
      Bitset splitter = std::move(queue.front());
      queue.pop_front();
      for (std::size_t ci = 0; ci < node.cells.size(); ++ci) {
        auto& cell = node.cells[ci];
        if (cell.size() == 1) continue;
        counts.resize(cell.size());
        bool uniform = true;
        for (std::size_t k = 0; k < cell.size(); ++k) {
          counts[k] = g_.neighbors(cell[k]).intersect_count(splitter);
          uniform = uniform && counts[k] == counts[0];
        }
        if (uniform) continue;
        std::map<std::size_t, std::vector<Vertex>> pieces;
        for (std::size_t k = 0; k < cell.size(); ++k) pieces[counts[k]].push_back(cell[k]);
        std::vector<std::vector<Vertex>> replaced;
        replaced.reserve(pieces.size());
        for (auto& [count, members] : pieces) {
          node.trace = mix(node.trace, (std::uint64_t{ci} << 40) ^ (std::uint64_t{count} << 20) ^ members.size());
          Bitset b(n_);
          for (auto v : members) b.set(v);
          queue.push_back(std::move(b));
          replaced.push_back(std::move(members));
        }
        node.cells.erase(node.cells.begin() + static_cast<std::ptrdiff_t>(ci));
        node.cells.insert(node.cells.begin() + static_cast<std::ptrdiff_t>(ci), std::make_move_iterator(replaced.begin()),
                          std::make_move_iterator(replaced.end()));
        ci += replaced.size() - 1;
      }
    }
    node.trace = mix(node.trace, node.cells.size());
  }

  Node individualize(const Node& parent, std::size_t cell_index, Vertex v) {
    if (++nodes_ > budget_) throw Timeout{};
    Node child = parent;
    auto& cell = child.cells[cell_index];
    cell.erase(std::find(cell.begin(), cell.end(), v));
    child.cells.insert(child.cells.begin() + static_cast<std::ptrdiff_t>(cell_index), std::vector<Vertex>{v});
    child.trace = mix(parent.trace, 0xA5A5ULL + cell_index);
    Bitset single(n_);
    single.set(v);
    refine(child, {std::move(single)});
    return child;
  }

  Node root(std::span<const int> colors) {
    Node node;
    if (colors.empty()) {
      node.cells.emplace_back(n_);
      std::iota(node.cells[0].begin(), node.cells[0].end(), Vertex{0});
    } else {
      std::map<int, std::vector<Vertex>> by_color;
      for (Vertex v = 0; v < n_; ++v) by_color[colors[v]].push_back(v);
      for (auto& [c, members] : by_color) {
        node.trace = mix(node.trace, static_cast<std::uint64_t>(c) ^ (members.size() << 32));
        node.cells.push_back(std::move(members));
      }
    }
    std::deque<Bitset> queue;
    for (const auto& cell : node.cells) {
      Bitset b(n_);
      for (auto v : cell) b.set(v);
      queue.push_back(std::move(b));
    }
    refine(node, std::move(queue));
    return node;
  }

  bool matches(const Node& node, std::size_t level) const {
    const Node& base = base_path_[level];
    if (node.trace != base.trace || node.cells.size() != base.cells.size()) return false;
    for (std::size_t i = 0; i < node.cells.size(); ++i)
      if (node.cells[i].size() != base.cells[i].size()) return false;
    return true;
  }

  std::optional<Permutation> leaf_map(const Node& leaf) const {
    Permutation p(n_);
    const auto& base = base_path_.back();
    for (std::size_t k = 0; k < n_; ++k) p[base.cells[k][0]] = leaf.cells[k][0];
    if (!colors_.empty())
      for (Vertex v = 0; v < n_; ++v)
        if (colors_[v] != colors_[p[v]]) return std::nullopt;
    if (preserves(g_, p)) return p;
    return std::nullopt;
  }

  std::optional<Permutation> explore(const Node& node, std::size_t level) {
    if (node.discrete()) return leaf_map(node);
    auto t = node.target();
    for (auto x : node.cells[t]) {
      Node child = individualize(node, t, x);
      if (!matches(child, level + 1)) continue;
      if (auto p = explore(child, level + 1)) return p;
    }
    return std::nullopt;
  }

  AutomorphismResult run(std::span<const int> colors) {
    colors_ = colors;
    AutomorphismResult result;
    std::vector<Permutation> gens;
    try {
      base_path_.push_back(root(colors));
      while (!base_path_.back().discrete()) {
        const Node& cur = base_path_.back();
        auto t = cur.target();
        targets_.push_back(t);
        base_points_.push_back(cur.cells[t].front());
        Node child = individualize(cur, t, base_points_.back());
        base_path_.push_back(std::move(child));
      }
      BigInt order = 1;
      for (std::size_t level = base_points_.size(); level-- > 0;) {
        const Node& node = base_path_[level];
        const Vertex b = base_points_[level];
        std::vector<std::size_t> orbit_id(n_);
        auto relabel = [&] {
          auto orbits = orbit_partition(n_, gens);
          for (std::size_t k = 0; k < orbits.size(); ++k)
            for (auto v : orbits[k]) orbit_id[v] = k;
        };
        relabel();
        std::vector<Vertex> failed;
        for (auto w : node.cells[targets_[level]]) {
          if (w == b || orbit_id[w] == orbit_id[b]) continue;
          if (std::any_of(failed.begin(), failed.end(), [&](Vertex f) { return orbit_id[w] == orbit_id[f]; })) continue;
          Node child = individualize(node, targets_[level], w);
          std::optional<Permutation> found;
          if (matches(child, level + 1)) found = explore(child, level + 1);
          if (found) {
            gens.push_back(std::move(*found));
            relabel();
          } else {
            failed.push_back(w);
          }
        }
        auto orbits = orbit_partition(n_, gens);
        for (const auto& o : orbits)
          if (std::binary_search(o.begin(), o.end(), b)) order *= o.size();
      }
      result.group = PermutationGroup(n_, std::move(gens), order);
    } catch (const Timeout&) {
      result.status = SearchStatus::Timeout;
      result.group = PermutationGroup(n_, std::move(gens));
    }
    result.nodes = nodes_;
    return result;
  }

 private:
  const Graph& g_;
  std::size_t n_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::span<const int> colors_;
  std::vector<Node> base_path_;
  std::vector<std::size_t> targets_;
  std::vector<Vertex> base_points_;
};

}  // namespace

AutomorphismResult automorphisms(const Graph& g, const AutomorphismOptions& options, std::span<const int> colors) {
  if (g.vertex_count() > options.vertex_limit) throw std::invalid_argument("graph exceeds automorphism vertex limit");
  if (!colors.empty() && colors.size() != g.vertex_count()) throw std::invalid_argument("colour count mismatch");
  if (g.vertex_count() == 0) return {};
  return Search(g, options.node_budget).run(colors);
}

PermutationGroup automorphism_group(const Graph& g, const AutomorphismOptions& options) {
  auto r = automorphisms(g, options);
  if (r.status == SearchStatus::Timeout) throw AutomorphismTimeout("automorphism search exceeded its node budget");
  return std::move(r.group);
}

bool is_vertex_transitive(const Graph& g, const AutomorphismOptions& options) {
  return automorphism_group(g, options).is_transitive();
}

}  // namespace graphbell
