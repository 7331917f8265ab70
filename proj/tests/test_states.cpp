#include "doctest.h"

#include "graphbell/graph.hpp"
#include "graphbell/hadamard.hpp"
#include "graphbell/states.hpp"

#include <algorithm>
#include <bit>
#include <set>

using namespace graphbell;

namespace {

std::int64_t binomial(int n, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Ray real_ray(std::initializer_list<int> xs) {
  std::vector<GaussInt> c;
  for (int x : xs) c.emplace_back(x);
  return Ray(std::move(c));
}

// Orthonormal bases hidden in a set: maximal groups of d mutually orthogonal rays
// found greedily from each ray; enough to locate one basis.
std::vector<std::size_t> find_basis(const Graph& g, std::size_t d) {
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    std::vector<Vertex> clique{s};
    for (Vertex v = 0; v < g.vertex_count() && clique.size() < d; ++v)
      if (std::all_of(clique.begin(), clique.end(), [&](Vertex u) { return g.adjacent(u, v); })) clique.push_back(v);
    if (clique.size() == d) return clique;
  }
  return {};
}

}  // namespace

TEST_CASE("ray canonical phase is idempotent and phase-blind") {
  Ray a({GaussInt(0, 1), GaussInt(1), GaussInt(0), GaussInt(-1, 0)});
  CHECK(a[0] == GaussInt(1));
  CHECK(Ray(a.components()) == a);
  Ray b({GaussInt(0, -3), GaussInt(-3), GaussInt(0), GaussInt(3)});
  CHECK(a == b);
  CHECK(real_ray({-2, 0, 2}) == real_ray({1, 0, -1}));
  CHECK_THROWS(real_ray({0, 0}));
}

TEST_CASE("Pauli state counts") {
  CHECK(pauli_states(2, Field::Real).size() == 24);
  CHECK(pauli_states(2, Field::Complex).size() == 60);
  CHECK(lagrangian_count(2) == 15);
  CHECK(pauli_states(3, Field::Real).size() == 240);
  CHECK(pauli_states(3, Field::Complex).size() == lagrangian_count(3) * 8);
  CHECK_THROWS(pauli_states(1, Field::Real));
  CHECK_THROWS(pauli_states(5, Field::Real));
}

TEST_CASE("Pauli rays are flat on their support") {
  // Stabilizer states have equal-modulus entries on a support of size 2^k.
  auto vs = pauli_states(3, Field::Complex);
  for (const auto& r : vs.rays()) {
    std::size_t support = 0;
    for (auto z : r.components())
      if (!z.is_zero()) {
        CHECK(z.norm() == 1);
        ++support;
      }
    CHECK(std::has_single_bit(support));
  }
}

TEST_CASE("Pauli-24 orthogonality graph") {
  auto vs = pauli_states(2, Field::Real);
  auto g = orthogonality_graph(vs);
  CHECK(g.vertex_count() == 24);
  CHECK(g.edge_count() == 108);
  CHECK(g.regular_degree() == std::optional<std::size_t>(9));
  CHECK(verify_orthonormal_representation(vs, g));
  CHECK(verify_orthonormal_representation(vs, Graph(24)));
}

TEST_CASE("complex Pauli graph splits into 15 bases") {
  auto vs = pauli_states(2, Field::Complex);
  auto g = orthogonality_graph(vs);
  std::size_t four_cliques = 0;
  for (Vertex a = 0; a < 60; ++a)
    for (Vertex b = a + 1; b < 60; ++b)
      for (Vertex c = b + 1; c < 60; ++c)
        for (Vertex d = c + 1; d < 60; ++d)
          if (g.adjacent(a, b) && g.adjacent(a, c) && g.adjacent(a, d) && g.adjacent(b, c) && g.adjacent(b, d) &&
              g.adjacent(c, d))
            ++four_cliques;
  CHECK(four_cliques >= 15);
}

TEST_CASE("Pauli-4320 graph holds a full 16-dimensional basis") {
  auto vs = pauli_states(4, Field::Real);
  CHECK(vs.size() == 4320);
  auto g = orthogonality_graph(vs);
  auto basis = find_basis(g, 16);
  REQUIRE(basis.size() == 16);
  CHECK(g.is_clique(basis));
}

TEST_CASE("orthogonality graph ignores global phases and follows relabelling") {
  auto vs = pauli_states(2, Field::Complex);
  std::vector<Ray> twisted;
  for (auto it = vs.rays().rbegin(); it != vs.rays().rend(); ++it) {
    auto c = it->components();
    for (auto& z : c) z = z * GaussInt(0, 1);
    twisted.emplace_back(std::move(c));
  }
  auto g = orthogonality_graph(vs);
  auto h = orthogonality_graph(VectorSet(4, twisted, Family::User));
  for (Vertex u = 0; u < 60; ++u)
    for (Vertex v = 0; v < 60; ++v)
      if (u != v) CHECK(g.adjacent(u, v) == h.adjacent(59 - u, 59 - v));
  auto tol = orthogonality_graph(vs, 1e-9);
  CHECK(tol == g);
}

TEST_CASE("Newman states") {
  auto n4 = newman_states(4);
  std::set<Ray> expected{real_ray({1, 1, 1, 1}), real_ray({1, 1, -1, -1}), real_ray({1, -1, 1, -1}),
                         real_ray({1, -1, -1, 1})};
  CHECK(std::set<Ray>(n4.rays().begin(), n4.rays().end()) == expected);
  CHECK(orthogonality_graph(n4) == complete(4));
  CHECK(newman_states(8).size() == 64);
  CHECK_THROWS(newman_states(6));
  for (int d : {4, 8, 12}) {
    auto g = orthogonality_graph(newman_states(d));
    CHECK(g.vertex_count() == (std::size_t{1} << (d - 2)));
    CHECK(static_cast<std::int64_t>(g.edge_count()) == (std::int64_t{1} << (d - 4)) * binomial(d, d / 2));
    CHECK(g == newman_graph(d));
  }
}

TEST_CASE("Y_8 lex co-K2 matches the even Hadamard graph") {
  auto lex = product(newman_graph(8), complement(complete(2)), ProductKind::Lexicographic);
  auto even = hadamard_graph(8, Parity::Even);
  auto masks = sign_masks(8, Parity::Even);
  std::vector<std::uint32_t> newman_masks;
  for (auto m : masks)
    if (!(m & 1U)) newman_masks.push_back(m);
  // (y, s) -> y for s = 0 and -y for s = 1.
  std::vector<Vertex> image(lex.vertex_count());
  for (std::size_t y = 0; y < newman_masks.size(); ++y)
    for (std::uint32_t s = 0; s < 2; ++s) {
      auto m = s ? newman_masks[y] ^ 0xFFU : newman_masks[y];
      image[2 * y + s] = std::lower_bound(masks.begin(), masks.end(), m) - masks.begin();
    }
  REQUIRE(lex.edge_count() == even.edge_count());
  for (auto [u, v] : lex.edges()) CHECK(even.adjacent(image[u], image[v]));
}

TEST_CASE("frame identities") {
  auto f12 = sic_frame_check(newman_states(12));
  CHECK(f12.tight);
  CHECK(f12.constant == Rational(1024, 12));
  auto f16 = sic_frame_check(newman_states(16));
  CHECK(f16.tight);
  CHECK(f16.constant == Rational(1024));
  auto basis = sic_frame_check(VectorSet(3, {real_ray({1, 0, 0}), real_ray({0, 1, 0}), real_ray({0, 0, 1})}, Family::User));
  CHECK(basis.tight);
  CHECK(basis.constant == 1);
  auto lopsided = sic_frame_check(VectorSet(2, {real_ray({1, 0}), real_ray({1, 1})}, Family::User));
  CHECK_FALSE(lopsided.tight);
  auto p24 = sic_frame_check(pauli_states(2, Field::Real));
  CHECK(p24.tight);
  CHECK(p24.constant == 6);
  for (int n : {4, 8, 12}) {
    for (auto parity : {Parity::Even, Parity::Odd}) {
      auto s = signed_vector_sum(n, parity);
      CHECK(std::all_of(s.begin(), s.end(), [](std::int64_t x) { return x == 0; }));
    }
  }
}

TEST_CASE("Sylvester matrices") {
  Eigen::MatrixXi h2(2, 2);
  h2 << 1, 1, 1, -1;
  CHECK(sylvester(1).entries() == h2);
  auto h32 = sylvester(5);
  CHECK(h32.order() == 32);
  CHECK(h32.rows_even());
  auto rays = rays_from_rows(h32.entries(), Family::HadamardRows);
  CHECK(orthogonality_graph(rays) == complete(32));

  std::set<Ray> tensor;
  auto n4 = newman_states(4);
  const int v[2][2] = {{1, 1}, {1, -1}};
  for (const auto& ui : n4.rays())
    for (const auto& uj : n4.rays())
      for (const auto& vk : v) {
        std::vector<GaussInt> c;
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b)
            for (int k = 0; k < 2; ++k) c.push_back(ui[a] * uj[b] * GaussInt(vk[k]));
        tensor.insert(Ray(std::move(c)));
      }
  CHECK(std::set<Ray>(rays.rays().begin(), rays.rays().end()) == tensor);
}

TEST_CASE("Paley H_28") {
  auto h = paley_h28();
  const auto& m = h.entries();
  CHECK(h.order() == 28);
  for (int a = 0; a < 28; ++a)
    for (int b = a + 1; b < 28; ++b) CHECK((m.row(a).array() == m.row(b).array()).count() == 14);
  CHECK(h.rows_even());
  auto rays = rays_from_rows(m, Family::HadamardRows);
  CHECK(orthogonality_graph(rays) == complete(28));
  CHECK(HadamardMatrix::from_text(h.to_text()).entries() == m);
}
