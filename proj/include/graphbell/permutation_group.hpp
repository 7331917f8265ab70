#pragma once

#include "graphbell/graph.hpp"
#include "graphbell/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace graphbell {

using Permutation = std::vector<Vertex>;

Permutation identity_permutation(std::size_t degree);
bool is_bijection(const Permutation& p);
Permutation compose(const Permutation& outer, const Permutation& inner);  // outer(inner(x))
Permutation inverse(const Permutation& p);
/// True if p maps every edge of g onto an edge of g.
bool preserves(const Graph& g, const Permutation& p);

/// Permutation group given by generators, with its orbit partition.
/// Invariants: generators are bijections of {0..degree-1}; orbits partition
/// the points and are listed by increasing minimum element.
class PermutationGroup {
 public:
  PermutationGroup() = default;
  explicit PermutationGroup(std::size_t degree) : PermutationGroup(degree, {}) {}
  PermutationGroup(std::size_t degree, std::vector<Permutation> generators,
                   std::optional<BigInt> order = std::nullopt);

  static PermutationGroup symmetric(std::size_t degree);

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  /// Known order (from a base and strong generating set) or nullopt.
  const std::optional<BigInt>& order() const { return order_; }

  const std::vector<std::vector<Vertex>>& orbits() const { return orbits_; }
  std::size_t orbit_index(Vertex v) const { return orbit_of_[v]; }
  bool is_transitive() const { return degree_ == 0 || orbits_.size() == 1; }
  bool is_trivial() const { return generators_.empty(); }

  /// Every generator is an automorphism of g.
  bool acts_on(const Graph& g) const;

 private:
  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::optional<BigInt> order_;
  std::vector<std::vector<Vertex>> orbits_;
  std::vector<std::size_t> orbit_of_;
};

/// Orbits of the group generated by `generators` (union-find), each sorted,
/// listed by minimum element.
std::vector<std::vector<Vertex>> orbit_partition(std::size_t degree, const std::vector<Permutation>& generators);

}  // namespace graphbell
