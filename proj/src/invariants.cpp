#include "graphbell/invariants.hpp"

#include "graphbell/simplex.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace graphbell {

namespace {

struct BudgetExhausted {};

// Tomita-style branch and bound for maximum weight cliques of the complement,
// i.e. maximum weight independent sets of g. Colour classes of the complement
// are cliques of g, so each class contributes at most its heaviest vertex.
class IndependentSetSearch {
 public:
  IndependentSetSearch(const Graph& g, const std::vector<std::int64_t>& weights, std::size_t budget)
      : g_(g), weights_(weights), budget_(budget), n_(g.vertex_count()) {
    non_neighbors_.reserve(n_);
    for (Vertex v = 0; v < n_; ++v) {
      Bitset nn = g.neighbors(v).complement();
      nn.reset(v);
      non_neighbors_.push_back(std::move(nn));
    }
  }

  IndependentSet run() {
    greedy_start();
    Bitset all(n_);
    all.set_all();
    std::vector<Vertex> current;
    bool exact = true;
    try {
      expand(all, 0, current);
    } catch (const BudgetExhausted&) {
      exact = false;
    }
    return {Rational(best_), best_set_, exact};
  }

  std::size_t nodes() const { return nodes_; }

 private:
  void greedy_start() {
    std::vector<Vertex> order(n_);
    std::iota(order.begin(), order.end(), Vertex{0});
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return g_.degree(a) < g_.degree(b); });
    Bitset blocked(n_);
    std::vector<Vertex> set;
    std::int64_t w = 0;
    for (auto v : order) {
      if (blocked.test(v)) continue;
      set.push_back(v);
      w += weights_[v];
      blocked |= g_.neighbors(v);
      blocked.set(v);
    }
    best_ = w;
    best_set_ = set;
  }

  void expand(Bitset candidates, std::int64_t weight, std::vector<Vertex>& current) {
    if (++nodes_ > budget_) throw BudgetExhausted{};
    std::vector<Vertex> order;
    std::vector<std::int64_t> bound;
    order.reserve(candidates.count());
    bound.reserve(order.capacity());
    Bitset uncoloured = candidates;
    std::int64_t cumulative = 0;
    while (uncoloured.any()) {
      Bitset open = uncoloured;
      std::int64_t heaviest = 0;
      const std::size_t start = order.size();
      for (std::size_t v = open.first(); v < n_; v = open.first()) {
        order.push_back(v);
        heaviest = std::max(heaviest, weights_[v]);
        uncoloured.reset(v);
        open.reset(v);
        open &= g_.neighbors(v);
      }
      cumulative += heaviest;
      bound.insert(bound.end(), order.size() - start, cumulative);
    }
    for (std::size_t k = order.size(); k-- > 0;) {
      if (weight + bound[k] <= best_) return;
      const Vertex v = order[k];
      current.push_back(v);
      Bitset next = candidates & non_neighbors_[v];
      const std::int64_t w = weight + weights_[v];
      if (next.none()) {
        if (w > best_) {
          best_ = w;
          best_set_ = current;
        }
      } else {
        expand(std::move(next), w, current);
      }
      current.pop_back();
      candidates.reset(v);
    }
  }

  const Graph& g_;
  const std::vector<std::int64_t>& weights_;
  std::size_t budget_;
  std::size_t n_;
  std::vector<Bitset> non_neighbors_;
  std::size_t nodes_ = 0;
  std::int64_t best_ = 0;
  std::vector<Vertex> best_set_;
};

struct IntResult {
  std::int64_t value = 0;
  std::vector<Vertex> witness;
};

// The orbit decomposition: for the largest orbit O and v = min O, either v
// lies in a maximum set (remove N[v]) or no vertex of O does (remove O).
class OrbitSolver {
 public:
  explicit OrbitSolver(const AlphaOptions& options) : options_(options) {}

  IntResult solve(const Graph& g, const std::vector<std::int64_t>& w, const PermutationGroup* group) {
    const auto n = g.vertex_count();
    if (n == 0) return {};
    auto components = connected_components(g);
    if (components.size() > 1) {
      IntResult total;
      for (const auto& comp : components) {
        auto part = solve_subset(g, w, comp);
        total.value += part.value;
        total.witness.insert(total.witness.end(), part.witness.begin(), part.witness.end());
      }
      std::sort(total.witness.begin(), total.witness.end());
      return total;
    }
    if (!options_.use_symmetry || n <= options_.orbit_threshold) return branch_and_bound(g, w);

    std::optional<PermutationGroup> computed;
    if (!group) {
      std::map<std::int64_t, int> ids;
      for (auto x : w) ids.emplace(x, 0);
      int next = 0;
      for (auto& [x, id] : ids) id = next++;
      std::vector<int> colors(n);
      for (Vertex v = 0; v < n; ++v) colors[v] = ids[w[v]];
      auto r = automorphisms(g, options_.automorphism, colors);
      if (r.status == SearchStatus::Timeout) return branch_and_bound(g, w);
      computed = std::move(r.group);
      group = &*computed;
    }
    if (group->is_trivial()) return branch_and_bound(g, w);

    const auto& orbits = group->orbits();
    const auto largest = std::max_element(orbits.begin(), orbits.end(),
                                          [](const auto& a, const auto& b) { return a.size() < b.size(); });
    const Vertex v = largest->front();

    std::vector<Vertex> keep;
    for (Vertex u = 0; u < n; ++u)
      if (u != v && !g.adjacent(u, v)) keep.push_back(u);
    IntResult with = solve_subset(g, w, keep);
    with.value += w[v];
    with.witness.push_back(v);
    std::sort(with.witness.begin(), with.witness.end());

    Bitset orbit(n);
    for (auto u : *largest) orbit.set(u);
    keep.clear();
    for (Vertex u = 0; u < n; ++u)
      if (!orbit.test(u)) keep.push_back(u);
    IntResult without = solve_subset(g, w, keep);
    return without.value > with.value ? without : with;
  }

  bool exact() const { return exact_; }

 private:
  IntResult solve_subset(const Graph& g, const std::vector<std::int64_t>& w, const std::vector<Vertex>& keep) {
    auto sub = induced_subgraph(g, std::span<const Vertex>(keep));
    std::vector<std::int64_t> sw(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) sw[i] = w[keep[i]];
    auto r = solve(sub, sw, nullptr);
    for (auto& x : r.witness) x = keep[x];
    return r;
  }

  IntResult branch_and_bound(const Graph& g, const std::vector<std::int64_t>& w) {
    const std::size_t remaining = options_.node_budget > used_ ? options_.node_budget - used_ : 0;
    IndependentSetSearch search(g, w, std::max<std::size_t>(remaining, 1));
    auto r = search.run();
    used_ += search.nodes();
    exact_ = exact_ && r.exact;
    return {to_int64(r.value.numerator()), r.witness};
  }

  const AlphaOptions& options_;
  std::size_t used_ = 0;
  bool exact_ = true;
};

IndependentSet solve_weighted(const Graph& g, const std::vector<std::int64_t>& w, const BigInt& scale,
                              const AlphaOptions& options, const PermutationGroup* group) {
  if (group) {
    if (!group->acts_on(g)) throw std::invalid_argument("supplied group does not act on the graph");
    for (const auto& p : group->generators())
      for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (w[p[v]] != w[v]) throw std::invalid_argument("supplied group does not fix the vertex weights");
  }
  OrbitSolver solver(options);
  auto r = solver.solve(g, w, group);
  if (!g.is_independent(r.witness)) throw std::logic_error("independence witness has an internal edge");
  return {Rational(BigInt(r.value), scale), r.witness, solver.exact()};
}

}  // namespace

IndependentSet max_independent_set(const Graph& g, const std::vector<std::int64_t>& weights, std::size_t node_budget) {
  return IndependentSetSearch(g, weights, node_budget).run();
}

IndependentSet independence_number(const Graph& g, const AlphaOptions& options, const PermutationGroup* group) {
  return solve_weighted(g, std::vector<std::int64_t>(g.vertex_count(), 1), BigInt(1), options, group);
}

IndependentSet independence_number(const WeightedGraph& wg, const AlphaOptions& options, const PermutationGroup* group) {
  const BigInt scale = common_denominator(wg.weights.data(), wg.weights.data() + wg.weights.size());
  std::vector<std::int64_t> w;
  w.reserve(wg.weights.size());
  for (const auto& x : wg.weights) w.push_back(to_int64(x.numerator() * (scale / x.denominator())));
  return solve_weighted(wg.graph, w, scale, options, group);
}

IndependentSet clique_number(const Graph& g, const AlphaOptions& options) {
  auto r = independence_number(complement(g), options);
  if (!g.is_clique(r.witness)) throw std::logic_error("clique witness is not complete");
  return r;
}

namespace {
struct XiDone {};
struct XiBudget {};
}  // namespace

XiResult xi_cap(const Graph& g, std::size_t alpha, std::size_t node_budget) {
  const std::size_t n = g.vertex_count();
  const std::size_t k = alpha + 1;
  if (k > n) throw std::invalid_argument("alpha + 1 exceeds the vertex count");
  std::vector<std::size_t> degree(n, 0);
  std::vector<Vertex> subset;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::vector<Vertex> witness;
  std::size_t nodes = 0;

  // In-subset degrees only grow as the subset grows, so a partial subset whose
  // maximum already reaches the incumbent cannot improve it.
  auto dfs = [&](auto&& self, Vertex start, std::size_t current_max) -> void {
    if (++nodes > node_budget) throw XiBudget{};
    if (subset.size() == k) {
      if (current_max < best) {
        best = current_max;
        witness = subset;
        if (best <= 1) throw XiDone{};
      }
      return;
    }
    for (Vertex v = start; v + (k - subset.size()) <= n; ++v) {
      std::size_t inc = 0, next_max = current_max;
      for (auto u : subset)
        if (g.adjacent(u, v)) {
          ++inc;
          next_max = std::max(next_max, degree[u] + 1);
        }
      next_max = std::max(next_max, inc);
      if (next_max >= best) continue;
      for (auto u : subset)
        if (g.adjacent(u, v)) ++degree[u];
      degree[v] = inc;
      subset.push_back(v);
      self(self, v + 1, next_max);
      subset.pop_back();
      degree[v] = 0;
      for (auto u : subset)
        if (g.adjacent(u, v)) --degree[u];
    }
  };
  try {
    dfs(dfs, 0, 0);
  } catch (const XiDone&) {
  } catch (const XiBudget&) {
    return {1, {}, false};
  }
  return {best, witness, true};
}

std::vector<std::vector<Vertex>> maximal_cliques(const Graph& g, std::size_t limit) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> r;
  auto bk = [&](auto&& self, Bitset p, Bitset x) -> void {
    if (p.none()) {
      if (x.none()) {
        if (out.size() >= limit) throw std::runtime_error("maximal clique count exceeds limit");
        auto c = r;
        std::sort(c.begin(), c.end());
        out.push_back(std::move(c));
      }
      return;
    }
    Bitset px = p | x;
    std::size_t pivot = px.first(), best = 0;
    px.for_each([&](std::size_t u) {
      auto c = p.intersect_count(g.neighbors(u));
      if (c > best) best = c, pivot = u;
    });
    Bitset branch = p;
    branch.subtract(g.neighbors(pivot));
    branch.for_each([&](std::size_t v) {
      r.push_back(v);
      self(self, p & g.neighbors(v), x & g.neighbors(v));
      r.pop_back();
      p.reset(v);
      x.set(v);
    });
  };
  Bitset all(n);
  all.set_all();
  bk(bk, all, Bitset(n));
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t greedy_chromatic_bound(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> color(n, 0);
  std::size_t used = 0;
  for (Vertex v = 0; v < n; ++v) {
    std::vector<bool> taken(used + 1, false);
    g.neighbors(v).for_each([&](std::size_t u) {
      if (u < v) taken[color[u]] = true;
    });
    std::size_t c = 0;
    while (taken[c]) ++c;
    color[v] = c;
    used = std::max(used, c + 1);
  }
  return used;
}

namespace {

std::optional<PermutationGroup> try_group(const Graph& g) {
  try {
    return automorphism_group(g);
  } catch (const AutomorphismTimeout&) {
    return std::nullopt;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

}  // namespace

FractionalValue fractional_packing(const Graph& g, bool allow_vertex_transitive_shortcut, std::size_t clique_limit) {
  const auto n = g.vertex_count();
  if (n == 0) return {Rational(0), "lp", true};
  auto via_shortcut = [&]() -> std::optional<FractionalValue> {
    auto grp = try_group(g);
    if (!grp || !grp->is_transitive()) return std::nullopt;
    auto omega = clique_number(g);
    if (!omega.exact) return std::nullopt;
    return FractionalValue{Rational(static_cast<long long>(n)) / omega.value, "vertex-transitive", true};
  };
  if (allow_vertex_transitive_shortcut)
    if (auto r = via_shortcut()) return *r;
  std::vector<std::vector<Vertex>> cliques;
  try {
    cliques = maximal_cliques(g, clique_limit);
  } catch (const std::runtime_error&) {
    if (!allow_vertex_transitive_shortcut)
      if (auto r = via_shortcut()) return *r;
    return {Rational(static_cast<long long>(n)), "trivial-bound", false};
  }
  LinearProgram<Rational> lp(static_cast<Eigen::Index>(n));
  lp.objective.setConstant(Rational(1));
  lp.le_lhs = LinearProgram<Rational>::Matrix::Zero(static_cast<Eigen::Index>(cliques.size()), n);
  lp.le_rhs = LinearProgram<Rational>::Vector::Constant(static_cast<Eigen::Index>(cliques.size()), Rational(1));
  for (std::size_t c = 0; c < cliques.size(); ++c)
    for (auto v : cliques[c]) lp.le_lhs(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(v)) = Rational(1);
  auto r = solve(lp);
  if (r.status != LpStatus::Optimal) throw std::logic_error("packing LP not optimal");
  return {r.value, "lp", true};
}

FractionalValue fractional_chromatic(const Graph& g, bool allow_vertex_transitive_shortcut, std::size_t set_limit) {
  const auto n = g.vertex_count();
  if (n == 0) return {Rational(0), "lp", true};
  if (allow_vertex_transitive_shortcut) {
    auto grp = try_group(g);
    if (grp && grp->is_transitive()) {
      auto alpha = independence_number(g);
      if (alpha.exact) return {Rational(static_cast<long long>(n)) / alpha.value, "vertex-transitive", true};
    }
  }
  auto sets = maximal_cliques(complement(g), set_limit);
  // minimize sum y_I subject to sum_{I contains v} y_I >= 1, written as a maximization.
  const auto m = static_cast<Eigen::Index>(sets.size());
  LinearProgram<Rational> lp(m);
  lp.objective.setConstant(Rational(-1));
  lp.le_lhs = LinearProgram<Rational>::Matrix::Zero(static_cast<Eigen::Index>(n), m);
  lp.le_rhs = LinearProgram<Rational>::Vector::Constant(static_cast<Eigen::Index>(n), Rational(-1));
  for (Eigen::Index s = 0; s < m; ++s)
    for (auto v : sets[s]) lp.le_lhs(static_cast<Eigen::Index>(v), s) = Rational(-1);
  auto r = solve(lp);
  if (r.status != LpStatus::Optimal) throw std::logic_error("covering LP not optimal");
  return {-r.value, "lp", true};
}

NewmanAlpha newman_alpha(int n) {
  if (n < 4 || n % 4 != 0) throw std::invalid_argument("Newman alpha needs n to be a positive multiple of 4");
  BigInt sum = 0, binom = 1;  // C(n-1, i)
  for (int i = 0; i < n / 4; ++i) {
    sum += binom;
    binom = binom * (n - 1 - i) / (i + 1);
  }
  auto prime_power = [](int x) {
    if (x < 2) return false;
    int p = 2;
    while (x % p) ++p;
    while (x % p == 0) x /= p;
    return x == 1;
  };
  const bool proven = std::has_single_bit(static_cast<unsigned>(n)) || n == 4 || prime_power(n / 4);
  return {sum, proven};
}

InvariantReport invariant_report(const Graph& g, std::optional<std::size_t> representation_dimension,
                                 const AlphaOptions& options) {
  InvariantReport r;
  r.vertices = g.vertex_count();
  r.edges = g.edge_count();
  auto grp = try_group(g);
  r.vertex_transitive = grp && grp->is_transitive();
  r.alpha = independence_number(g, options, grp ? &*grp : nullptr);
  r.omega = clique_number(g, options);
  if (r.alpha.exact && to_int64(r.alpha.value.numerator()) < static_cast<std::int64_t>(r.vertices))
    r.xi = xi_cap(g, static_cast<std::size_t>(to_int64(r.alpha.value.numerator())));
  else
    r.xi = {1, {}, false};
  r.alpha_star = fractional_packing(g);
  r.xi_rank_lower = static_cast<std::size_t>(to_int64(r.omega.value.numerator()));
  r.xi_rank_upper = greedy_chromatic_bound(g);
  if (representation_dimension) r.xi_rank_upper = std::min(r.xi_rank_upper, *representation_dimension);
  if (r.vertex_transitive || r.vertices <= 30) r.chi_fractional = fractional_chromatic(g);
  return r;
}

ScanReport vt_scan(const std::vector<Graph>& graphs, const AlphaOptions& options) {
  ScanReport report;
  std::map<std::size_t, ScanRow> best;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const auto& g = graphs[i];
    auto alpha = independence_number(g, options);
    auto omega = clique_number(g, options);
    if (!alpha.exact || !omega.exact) {
      report.skipped.push_back(i);
      continue;
    }
    const double value = std::sqrt(alpha.value.to_double() * omega.value.to_double() / static_cast<double>(g.vertex_count()));
    auto [it, inserted] = best.try_emplace(g.vertex_count(), ScanRow{g.vertex_count(), value, i});
    if (!inserted && value < it->second.minimum) it->second = {g.vertex_count(), value, i};
  }
  for (auto& [n, row] : best) report.rows.push_back(row);
  return report;
}

WeightedGap weighted_gap(const WeightedGraph& g, std::size_t xi, const AlphaOptions& options) {
  if (xi == 0) throw std::invalid_argument("xi must be positive");
  auto alpha = independence_number(g, options);
  WeightedGap r;
  r.alpha = alpha.value;
  r.quantum = g.total_weight() / Rational(static_cast<long long>(xi));
  r.gap = r.quantum > r.alpha;
  r.witness = alpha.witness;
  return r;
}

}  // namespace graphbell
