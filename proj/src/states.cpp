#include "graphbell/states.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace graphbell {

Ray::Ray(std::vector<GaussInt> components) : components_(std::move(components)) {
  auto lead = std::find_if(components_.begin(), components_.end(), [](GaussInt z) { return !z.is_zero(); });
  if (lead == components_.end()) throw std::invalid_argument("zero vector is not a ray");
  const GaussInt phase = lead->conj();
  std::int64_t g = 0;
  for (auto& z : components_) {
    z = z * phase;
    g = std::gcd(g, std::gcd(std::abs(z.re), std::abs(z.im)));
  }
  for (auto& z : components_) z = {z.re / g, z.im / g};
}

std::int64_t Ray::norm2() const {
  std::int64_t s = 0;
  for (auto z : components_) s += z.norm();
  return s;
}

bool Ray::is_real() const {
  return std::all_of(components_.begin(), components_.end(), [](GaussInt z) { return z.im == 0; });
}

GaussInt inner_product(const Ray& a, const Ray& b) {
  GaussInt s;
  for (std::size_t k = 0; k < a.dimension(); ++k) s += a[k].conj() * b[k];
  return s;
}

std::string to_string(Family f) {
  switch (f) {
    case Family::PauliReal: return "pauli_real";
    case Family::PauliComplex: return "pauli_complex";
    case Family::Newman: return "newman";
    case Family::HadamardRows: return "hadamard_rows";
    case Family::User: return "user";
  }
  return "user";
}

Family family_from_string(const std::string& s) {
  for (auto f : {Family::PauliReal, Family::PauliComplex, Family::Newman, Family::HadamardRows, Family::User})
    if (to_string(f) == s) return f;
  throw std::invalid_argument("unknown family tag: " + s);
}

VectorSet::VectorSet(std::size_t dimension, std::vector<Ray> rays, Family family)
    : dimension_(dimension), rays_(std::move(rays)), family_(family) {
  for (const auto& r : rays_)
    if (r.dimension() != dimension_) throw std::invalid_argument("mixed-dimension vector set");
  auto sorted = rays_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("vector set contains a repeated ray");
}

bool VectorSet::is_real() const {
  return std::all_of(rays_.begin(), rays_.end(), [](const Ray& r) { return r.is_real(); });
}

// Pauli operators on n qubits are encoded as 2n-bit words: x in the low n
// bits, z in the high n bits, with Hermitian phase i^{|x & z|}.
namespace {

int symplectic(std::uint32_t a, std::uint32_t b, int n) {
  const std::uint32_t mask = (1U << n) - 1;
  return (std::popcount((a & mask) & (b >> n)) + std::popcount((a >> n) & (b & mask))) & 1;
}

// One Lagrangian subspace: its element set (width 4^n) and n generators.
struct Lagrangian {
  Bitset elements;
  std::vector<std::uint32_t> generators;
};

std::vector<Lagrangian> lagrangians(int n) {
  const std::uint32_t universe = 1U << (2 * n);
  Bitset trivial(universe);
  trivial.set(0);
  std::vector<Lagrangian> layer{{trivial, {}}};
  for (int k = 0; k < n; ++k) {
    std::vector<Lagrangian> next;
    std::set<std::vector<Bitset::Word>> seen;
    for (const auto& s : layer) {
      for (std::uint32_t v = 1; v < universe; ++v) {
        if (s.elements.test(v)) continue;
        if (std::any_of(s.generators.begin(), s.generators.end(), [&](std::uint32_t g) { return symplectic(g, v, n); }))
          continue;
        Bitset grown = s.elements;
        s.elements.for_each([&](std::size_t e) { grown.set(e ^ v); });
        std::vector<Bitset::Word> key(grown.data(), grown.data() + grown.word_count());
        if (!seen.insert(key).second) continue;
        auto gens = s.generators;
        gens.push_back(v);
        next.push_back({std::move(grown), std::move(gens)});
      }
    }
    layer = std::move(next);
  }
  return layer;
}

std::vector<GaussInt> apply_pauli(std::uint32_t op, int n, const std::vector<GaussInt>& v) {
  const std::uint32_t mask = (1U << n) - 1;
  const std::uint32_t x = op & mask, z = op >> n;
  static constexpr GaussInt kPowI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const GaussInt phase = kPowI[std::popcount(x & z) & 3];
  std::vector<GaussInt> out(v.size());
  for (std::uint32_t b = 0; b < v.size(); ++b) {
    if (v[b].is_zero()) continue;
    GaussInt term = phase * v[b];
    if (std::popcount(z & b) & 1) term = -term;
    out[b ^ x] += term;
  }
  return out;
}

}  // namespace

BigInt lagrangian_count(int n) {
  BigInt l = 1;
  for (int j = 1; j <= n; ++j) l *= (BigInt(1) << j) + 1;
  return l;
}

VectorSet pauli_states(int n, Field field, int max_qubits) {
  if (n < 2) throw std::invalid_argument("Pauli states need n >= 2");
  if (n > max_qubits) throw std::invalid_argument("n exceeds the configured Pauli ceiling");
  const std::size_t dim = std::size_t{1} << n;
  std::set<Ray> rays;
  for (const auto& lag : lagrangians(n)) {
    for (std::uint32_t signs = 0; signs < (1U << n); ++signs) {
      for (std::uint32_t b = 0; b < dim; ++b) {
        std::vector<GaussInt> v(dim);
        v[b] = 1;
        for (int k = 0; k < n; ++k) {
          auto gv = apply_pauli(lag.generators[k], n, v);
          for (std::size_t i = 0; i < dim; ++i) v[i] = (signs >> k & 1) ? v[i] - gv[i] : v[i] + gv[i];
        }
        if (std::any_of(v.begin(), v.end(), [](GaussInt z) { return !z.is_zero(); })) {
          Ray r(std::move(v));
          if (field == Field::Complex || r.is_real()) rays.insert(std::move(r));
          break;
        }
      }
    }
  }
  return VectorSet(dim, {rays.begin(), rays.end()}, field == Field::Real ? Family::PauliReal : Family::PauliComplex);
}

std::vector<std::uint32_t> sign_masks(int n, Parity parity) {
  if (n < 1 || n > 24) throw std::invalid_argument("sign-vector length out of range");
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < (1U << n); ++m) {
    bool even = std::popcount(m) % 2 == 0;
    if (parity == Parity::All || (parity == Parity::Even) == even) out.push_back(m);
  }
  return out;
}

VectorSet newman_states(int d, int max_dimension) {
  if (d < 4 || d % 4 != 0) throw std::invalid_argument("Newman states need d to be a positive multiple of 4");
  if (d > max_dimension) throw std::invalid_argument("d exceeds the materialization ceiling");
  std::vector<Ray> rays;
  for (auto m : sign_masks(d, Parity::Even)) {
    if (m & 1U) continue;
    std::vector<GaussInt> c(d);
    for (int k = 0; k < d; ++k) c[k] = (m >> k & 1U) ? -1 : 1;
    rays.emplace_back(std::move(c));
  }
  return VectorSet(d, std::move(rays), Family::Newman);
}

VectorSet rays_from_rows(const Eigen::MatrixXi& rows, Family family) {
  std::vector<Ray> rays;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    std::vector<GaussInt> c(rows.cols());
    for (Eigen::Index k = 0; k < rows.cols(); ++k) c[k] = rows(i, k);
    rays.emplace_back(std::move(c));
  }
  return VectorSet(rows.cols(), std::move(rays), family);
}

Graph orthogonality_graph(const VectorSet& vs, double tolerance) {
  if (tolerance < 0) throw std::invalid_argument("negative tolerance");
  const auto n = vs.size();
  Graph g(n);
  std::vector<double> norms(n);
  for (std::size_t i = 0; i < n; ++i) norms[i] = std::sqrt(static_cast<double>(vs[i].norm2()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      auto ip = inner_product(vs[i], vs[j]);
      bool orth = tolerance == 0.0 ? ip.is_zero()
                                   : std::sqrt(static_cast<double>(ip.norm())) <= tolerance * norms[i] * norms[j];
      if (orth) g.add_edge(i, j);
    }
  return g;
}

Graph newman_graph(int d) {
  if (d < 4 || d % 4 != 0) throw std::invalid_argument("Newman graph needs d to be a positive multiple of 4");
  std::vector<std::uint32_t> masks;
  for (auto m : sign_masks(d, Parity::Even))
    if (!(m & 1U)) masks.push_back(m);
  Graph g(masks.size());
  for (std::size_t i = 0; i < masks.size(); ++i)
    for (std::size_t j = i + 1; j < masks.size(); ++j)
      if (std::popcount(masks[i] ^ masks[j]) == d / 2) g.add_edge(i, j);
  return g;
}

Graph hadamard_graph(int n, Parity parity) {
  if (n % 2 != 0) throw std::invalid_argument("Hadamard graph needs even n");
  auto masks = sign_masks(n, parity);
  Graph g(masks.size());
  for (std::size_t i = 0; i < masks.size(); ++i)
    for (std::size_t j = i + 1; j < masks.size(); ++j)
      if (std::popcount(masks[i] ^ masks[j]) == n / 2) g.add_edge(i, j);
  return g;
}

bool verify_orthonormal_representation(const VectorSet& vs, const Graph& g) {
  if (vs.size() != g.vertex_count()) throw std::invalid_argument("ray count differs from vertex count");
  for (auto [u, v] : g.edges())
    if (!inner_product(vs[u], vs[v]).is_zero()) return false;
  return true;
}

FrameCheck sic_frame_check(const VectorSet& vs) {
  const auto d = vs.dimension();
  // Integer frame operators grouped by squared norm keep the sum exact.
  std::map<std::int64_t, std::vector<GaussInt>> by_norm;
  for (const auto& r : vs.rays()) {
    auto& acc = by_norm.try_emplace(r.norm2(), d * d).first->second;
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) acc[a * d + b] += r[a] * r[b].conj();
  }
  std::vector<Rational> re(d * d), im(d * d);
  for (const auto& [norm, acc] : by_norm)
    for (std::size_t k = 0; k < d * d; ++k) {
      re[k] += Rational(acc[k].re, norm);
      im[k] += Rational(acc[k].im, norm);
    }
  FrameCheck out;
  out.constant = re[0];
  out.tight = true;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      const auto& expect = a == b ? out.constant : Rational(0);
      if (re[a * d + b] != expect || im[a * d + b] != 0) out.tight = false;
    }
  return out;
}

std::vector<std::int64_t> signed_vector_sum(int n, Parity parity) {
  std::vector<std::int64_t> sum(n, 0);
  for (auto m : sign_masks(n, parity))
    for (int k = 0; k < n; ++k) sum[k] += (m >> k & 1U) ? -1 : 1;
  return sum;
}

}  // namespace graphbell
