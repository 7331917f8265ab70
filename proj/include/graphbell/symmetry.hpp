#pragma once

#include "graphbell/permutation_group.hpp"
#include "graphbell/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace graphbell {

/// Assignment of outcome 1 to a subset of settings; bit i is setting i.
using Assignment = std::uint64_t;

/// Image of an assignment: bit i moves to bit perm[i].
Assignment permute_assignment(const Permutation& perm, Assignment a);

struct ClassOptions {
  std::size_t max_classes = 20'000'000;
};

class ClassExplosion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Alice assignments up to a group acting on the settings of both parties.
/// Invariants: representatives are orbit minima, sorted by (popcount, value);
/// sizes[k] is the orbit size of reps[k]; sizes sum to 2^settings.
struct SymmetryContext {
  std::size_t settings = 0;
  PermutationGroup group;
  bool party_swap = false;
  std::vector<Assignment> reps;
  std::vector<std::uint64_t> sizes;

  std::size_t class_count() const { return reps.size(); }
  BigInt total() const;
};

/// Layered enumeration: promotions of the weight-k representatives reach every
/// weight-(k+1) orbit; each new orbit is walked under the generators once.
SymmetryContext enumerate_classes(std::size_t settings, const PermutationGroup& group, bool party_swap = false,
                                  const ClassOptions& options = {});

/// Orbit partition of the (m+1)^2 Collins-Gisin coordinates (row-major, row
/// index first) under the settings group, plus the party swap (transpose).
/// Orbits are listed by minimum coordinate; the corner is always its own orbit.
std::vector<std::vector<std::size_t>> coordinate_orbits(std::size_t settings, const PermutationGroup& group,
                                                        bool party_swap);

}  // namespace graphbell
