#pragma once

#include "graphbell/graph.hpp"
#include "graphbell/permutation_group.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace graphbell {

/// `p <n> <m>` header then `e <u> <v>` lines (0-indexed, u < v, sorted).
void write_edge_list(std::ostream& out, const Graph& g);
Graph read_edge_list(std::istream& in);

/// One permutation per line as space-separated images.
void write_permutations(std::ostream& out, const std::vector<Permutation>& perms);
std::vector<Permutation> read_permutations(std::istream& in);

Graph load_edge_list(const std::string& path);
void save_edge_list(const std::string& path, const Graph& g);
std::vector<Permutation> load_permutations(const std::string& path);

}  // namespace graphbell
