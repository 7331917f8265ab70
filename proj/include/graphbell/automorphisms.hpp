#pragma once

#include "graphbell/graph.hpp"
#include "graphbell/permutation_group.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>

namespace graphbell {

struct AutomorphismOptions {
  std::size_t vertex_limit = 5000;
  std::size_t node_budget = 2'000'000;
};

enum class SearchStatus { Complete, Timeout };

struct AutomorphismResult {
  PermutationGroup group;  // on timeout: the generators found so far
  SearchStatus status = SearchStatus::Complete;
  std::size_t nodes = 0;
};

class AutomorphismTimeout : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Generators (sorted) and orbits of Aut(g), preserving the optional vertex
/// colouring. The group order is exact on completion.
AutomorphismResult automorphisms(const Graph& g, const AutomorphismOptions& options = {},
                                 std::span<const int> colors = {});

/// Throws AutomorphismTimeout when the search does not complete.
PermutationGroup automorphism_group(const Graph& g, const AutomorphismOptions& options = {});

bool is_vertex_transitive(const Graph& g, const AutomorphismOptions& options = {});

}  // namespace graphbell
