#include "graphbell/fixtures.hpp"

#include <stdexcept>

namespace graphbell {

const std::array<std::array<int, 12>, 12> kPauli24CrossBlock{{
    {5, 5, -4, -4, 5, 5, -4, -4, 5, 5, -4, -4},
    {5, 5, -4, -4, -4, -4, 5, 5, -4, -4, 5, 5},
    {-4, -4, 5, 5, 5, 5, -4, -4, -4, -4, 5, 5},
    {-4, -4, 5, 5, -4, -4, 5, 5, 5, 5, -4, -4},
    {5, -4, 5, -4, 5, -4, 5, -4, 5, -4, 5, -4},
    {5, -4, 5, -4, -4, 5, -4, 5, -4, 5, -4, 5},
    {-4, 5, -4, 5, 5, -4, 5, -4, -4, 5, -4, 5},
    {-4, 5, -4, 5, -4, 5, -4, 5, 5, -4, 5, -4},
    {5, -4, -4, 5, 5, -4, -4, 5, -4, 5, 5, -4},
    {5, -4, -4, 5, -4, 5, 5, -4, 5, -4, -4, 5},
    {-4, 5, 5, -4, 5, -4, -4, 5, 5, -4, -4, 5},
    {-4, 5, 5, -4, -4, 5, 5, -4, -4, 5, 5, -4},
}};

namespace {

// Positions in the sorted Pauli-24 list, found by matching the printed block
// against the orthogonality pattern.
constexpr std::array<std::size_t, 24> kSettingOrder{0, 2,  6,  16, 9,  13, 20, 22, 23, 19, 12, 10,
                                                   3, 1, 11, 21, 7,  5,  14, 18, 15, 17, 8,  4};

std::size_t support(const Ray& r) {
  std::size_t s = 0;
  for (auto c : r.components()) s += c.is_zero() ? 0 : 1;
  return s;
}

}  // namespace

OptimizedPauli24 optimized_pauli24() {
  auto sorted = pauli_states(2, Field::Real);
  std::vector<Ray> ordered;
  for (auto k : kSettingOrder) ordered.push_back(sorted[k]);
  VectorSet rays(4, ordered, Family::PauliReal);

  BellFunctional f(24);
  for (std::size_t k = 0; k < 24; ++k) {
    f.alice(k) = -6;
    f.bob(k) = -6;
  }
  for (std::size_t r = 0; r < 12; ++r)
    for (std::size_t c = 0; c < 12; ++c) {
      // Upper-right and lower-left blocks both print the same matrix.
      f.cg(1 + r, 1 + 12 + c) = kPauli24CrossBlock[r][c];
      f.cg(1 + 12 + r, 1 + c) = kPauli24CrossBlock[r][c];
    }
  for (std::size_t i = 0; i < 24; ++i) {
    bool outer = support(rays[i]) != 2;
    if (outer != (i < 12)) throw std::logic_error("fixture block assignment broken");
    for (std::size_t j = 0; j < 24; ++j) {
      if ((i < 12) == (j < 12)) continue;
      bool orthogonal = inner_product(rays[i], rays[j]).is_zero();
      if (f.joint(i, j) != (orthogonal ? -4 : 5)) throw std::logic_error("fixture block disagrees with the rays");
    }
  }
  f.origin = "fixture";
  return {std::move(rays), std::move(f)};
}

WeightedGraph yu_oh_weighted() {
  std::vector<Ray> rays;
  auto add = [&](std::int64_t x, std::int64_t y, std::int64_t z) { rays.emplace_back(std::vector<GaussInt>{x, y, z}); };
  add(1, 0, 0), add(0, 1, 0), add(0, 0, 1);
  add(0, 1, 1), add(0, 1, -1), add(1, 0, 1), add(1, 0, -1), add(1, 1, 0), add(1, -1, 0);
  add(-1, 1, 1), add(1, -1, 1), add(1, 1, -1), add(1, 1, 1);
  VectorSet vs(3, rays, Family::User);
  auto g = orthogonality_graph(vs);
  std::vector<Rational> w(13, Rational(3));
  for (std::size_t k = 9; k < 13; ++k) w[k] = 2;
  return WeightedGraph(std::move(g), std::move(w));
}

}  // namespace graphbell
