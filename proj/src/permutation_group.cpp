#include "graphbell/permutation_group.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace graphbell {

Permutation identity_permutation(std::size_t degree) {
  Permutation p(degree);
  std::iota(p.begin(), p.end(), Vertex{0});
  return p;
}

bool is_bijection(const Permutation& p) {
  std::vector<char> hit(p.size(), 0);
  for (auto x : p) {
    if (x >= p.size() || hit[x]) return false;
    hit[x] = 1;
  }
  return true;
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  Permutation r(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) r[i] = outer[inner[i]];
  return r;
}

Permutation inverse(const Permutation& p) {
  Permutation r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = i;
  return r;
}

bool preserves(const Graph& g, const Permutation& p) {
  if (p.size() != g.vertex_count()) return false;
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    if (g.degree(u) != g.degree(p[u])) return false;
    bool ok = true;
    g.neighbors(u).for_each([&](std::size_t v) { ok = ok && g.adjacent(p[u], p[v]); });
    if (!ok) return false;
  }
  return true;
}

std::vector<std::vector<Vertex>> orbit_partition(std::size_t degree, const std::vector<Permutation>& generators) {
  std::vector<Vertex> parent(degree);
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& g : generators)
    for (Vertex x = 0; x < degree; ++x) {
      auto a = find(x), b = find(g[x]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::vector<Vertex>> orbits;
  std::vector<std::size_t> slot(degree, degree);
  for (Vertex x = 0; x < degree; ++x) {
    auto r = find(x);
    if (slot[r] == degree) {
      slot[r] = orbits.size();
      orbits.emplace_back();
    }
    orbits[slot[r]].push_back(x);
  }
  return orbits;
}

PermutationGroup::PermutationGroup(std::size_t degree, std::vector<Permutation> generators, std::optional<BigInt> order)
    : degree_(degree), generators_(std::move(generators)), order_(std::move(order)) {
  for (const auto& g : generators_)
    if (g.size() != degree_ || !is_bijection(g)) throw std::invalid_argument("generator is not a permutation of the point set");
  std::erase_if(generators_, [&](const Permutation& g) { return g == identity_permutation(degree_); });
  std::sort(generators_.begin(), generators_.end());
  generators_.erase(std::unique(generators_.begin(), generators_.end()), generators_.end());
  if (generators_.empty()) order_ = BigInt(1);
  orbits_ = orbit_partition(degree_, generators_);
  orbit_of_.assign(degree_, 0);
  for (std::size_t k = 0; k < orbits_.size(); ++k)
    for (auto v : orbits_[k]) orbit_of_[v] = k;
}

PermutationGroup PermutationGroup::symmetric(std::size_t degree) {
  std::vector<Permutation> gens;
  BigInt order = 1;
  for (std::size_t k = 2; k <= degree; ++k) order *= k;
  if (degree >= 2) {
    auto swap = identity_permutation(degree);
    std::swap(swap[0], swap[1]);
    gens.push_back(swap);
    Permutation cyc(degree);
    for (std::size_t i = 0; i < degree; ++i) cyc[i] = (i + 1) % degree;
    gens.push_back(cyc);
  }
  return PermutationGroup(degree, std::move(gens), order);
}

bool PermutationGroup::acts_on(const Graph& g) const {
  if (g.vertex_count() != degree_) return false;
  return std::all_of(generators_.begin(), generators_.end(), [&](const Permutation& p) { return preserves(g, p); });
}

}  // namespace graphbell
