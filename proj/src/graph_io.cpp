#include "graphbell/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace graphbell {

void write_edge_list(std::ostream& out, const Graph& g) {
  auto edges = g.edges();
  out << "p " << g.vertex_count() << ' ' << edges.size() << '\n';
  for (auto [u, v] : edges) out << "e " << u << ' ' << v << '\n';
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::optional<Graph> g;
  std::size_t declared = 0;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == 'c' || line[0] == '#') continue;
    std::istringstream ls(line);
    char tag = 0;
    ls >> tag;
    if (tag == 'p') {
      std::size_t n = 0;
      if (!(ls >> n >> declared)) throw std::runtime_error("bad header at line " + std::to_string(lineno));
      g.emplace(n);
    } else if (tag == 'e') {
      if (!g) throw std::runtime_error("edge before header at line " + std::to_string(lineno));
      std::size_t u = 0, v = 0;
      if (!(ls >> u >> v)) throw std::runtime_error("bad edge at line " + std::to_string(lineno));
      g->add_edge(u, v);
    } else {
      throw std::runtime_error("unknown record at line " + std::to_string(lineno));
    }
  }
  if (!g) throw std::runtime_error("missing `p` header");
  if (g->edge_count() != declared) throw std::runtime_error("edge count differs from header");
  return std::move(*g);
}

void write_permutations(std::ostream& out, const std::vector<Permutation>& perms) {
  for (const auto& p : perms) {
    for (std::size_t i = 0; i < p.size(); ++i) out << (i ? " " : "") << p[i];
    out << '\n';
  }
}

std::vector<Permutation> read_permutations(std::istream& in) {
  std::vector<Permutation> out;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    Permutation p;
    Vertex x = 0;
    while (ls >> x) p.push_back(x);
    if (p.empty()) continue;
    if (!is_bijection(p)) throw std::runtime_error("permutation file contains a non-bijection");
    if (!out.empty() && out.front().size() != p.size()) throw std::runtime_error("permutations of mixed degree");
    out.push_back(std::move(p));
  }
  return out;
}

namespace {
template <class Stream>
Stream open(const std::string& path) {
  Stream s(path);
  if (!s) throw std::runtime_error("cannot open " + path);
  return s;
}
}  // namespace

Graph load_edge_list(const std::string& path) {
  auto in = open<std::ifstream>(path);
  return read_edge_list(in);
}

void save_edge_list(const std::string& path, const Graph& g) {
  auto out = open<std::ofstream>(path);
  write_edge_list(out, g);
}

std::vector<Permutation> load_permutations(const std::string& path) {
  auto in = open<std::ifstream>(path);
  return read_permutations(in);
}

}  // namespace graphbell
