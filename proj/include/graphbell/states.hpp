#pragma once

#include "graphbell/graph.hpp"
#include "graphbell/rational.hpp"

#include <Eigen/Core>

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace graphbell {

/// Gaussian integer a + bi.
struct GaussInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  constexpr GaussInt() = default;
  constexpr GaussInt(std::int64_t r, std::int64_t i = 0) : re(r), im(i) {}

  constexpr GaussInt conj() const { return {re, -im}; }
  constexpr std::int64_t norm() const { return re * re + im * im; }
  constexpr bool is_zero() const { return re == 0 && im == 0; }

  friend constexpr GaussInt operator+(GaussInt a, GaussInt b) { return {a.re + b.re, a.im + b.im}; }
  friend constexpr GaussInt operator-(GaussInt a, GaussInt b) { return {a.re - b.re, a.im - b.im}; }
  friend constexpr GaussInt operator-(GaussInt a) { return {-a.re, -a.im}; }
  friend constexpr GaussInt operator*(GaussInt a, GaussInt b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
  GaussInt& operator+=(GaussInt b) { return *this = *this + b; }
  friend constexpr bool operator==(GaussInt, GaussInt) = default;
  friend constexpr auto operator<=>(GaussInt, GaussInt) = default;
};

/// Ray with exact Gaussian-integer components, stored unnormalized.
/// Invariant: nonzero; canonical phase (first nonzero component real and
/// positive) and primitive (components share no common integer factor).
class Ray {
 public:
  explicit Ray(std::vector<GaussInt> components);

  std::size_t dimension() const { return components_.size(); }
  const std::vector<GaussInt>& components() const { return components_; }
  const GaussInt& operator[](std::size_t k) const { return components_[k]; }
  /// Squared norm.
  std::int64_t norm2() const;
  bool is_real() const;

  friend bool operator==(const Ray&, const Ray&) = default;
  friend auto operator<=>(const Ray& a, const Ray& b) { return a.components_ <=> b.components_; }

 private:
  std::vector<GaussInt> components_;
};

/// <a|b> with the first argument conjugated.
GaussInt inner_product(const Ray& a, const Ray& b);

enum class Family { PauliReal, PauliComplex, Newman, HadamardRows, User };
std::string to_string(Family f);
Family family_from_string(const std::string& s);

/// Rays of one dimension, pairwise distinct up to phase.
class VectorSet {
 public:
  VectorSet(std::size_t dimension, std::vector<Ray> rays, Family family);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return rays_.size(); }
  const std::vector<Ray>& rays() const { return rays_; }
  const Ray& operator[](std::size_t i) const { return rays_[i]; }
  Family family() const { return family_; }
  bool is_real() const;

 private:
  std::size_t dimension_;
  std::vector<Ray> rays_;
  Family family_;
};

enum class Field { Real, Complex };

/// Common eigenstates of the maximal commuting subsets of the n-qubit Pauli
/// group, sorted by component tuple. n in [2, max_qubits].
VectorSet pauli_states(int n, Field field, int max_qubits = 4);

/// Number of maximal commuting Pauli subsets: prod_{j=1..n} (2^j + 1).
BigInt lagrangian_count(int n);

/// Even-parity +-1 rays with first entry +1. Ray i is the i-th sign mask
/// (bit k set means entry k is -1) in increasing order.
VectorSet newman_states(int d, int max_dimension = 16);

/// Rays from rows of a +-1 matrix.
VectorSet rays_from_rows(const Eigen::MatrixXi& rows, Family family);

/// Exact when tolerance == 0 (edge iff <v_i|v_j> == 0); otherwise edge iff
/// |<v_i|v_j>| <= tolerance * |v_i| |v_j|.
Graph orthogonality_graph(const VectorSet& vs, double tolerance = 0.0);

/// Newman graph Y_d straight from sign masks: adjacent iff the masks differ in d/2 places.
Graph newman_graph(int d);

enum class Parity { Even, Odd, All };
/// Hadamard graph on all +-1 vectors of length n with the requested number of
/// -1 entries (v and -v are distinct vertices). Vertex order: increasing sign mask.
Graph hadamard_graph(int n, Parity parity);
std::vector<std::uint32_t> sign_masks(int n, Parity parity);

bool verify_orthonormal_representation(const VectorSet& vs, const Graph& g);

struct FrameCheck {
  bool tight = false;
  Rational constant;
};
/// Whether sum_v |v><v| / <v|v> is a multiple of the identity, exactly.
FrameCheck sic_frame_check(const VectorSet& vs);

/// Sum over all +-1 vectors of the given parity (component-wise).
std::vector<std::int64_t> signed_vector_sum(int n, Parity parity);

}  // namespace graphbell
