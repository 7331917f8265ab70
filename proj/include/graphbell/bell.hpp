#pragma once

#include "graphbell/graph.hpp"
#include "graphbell/rational.hpp"
#include "graphbell/states.hpp"
#include "graphbell/symmetry.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace graphbell {

/// Collins-Gisin table of side m+1. Row index is Bob's setting plus one,
/// column index Alice's: (0,0) corner, (0,1+i) Alice marginal i,
/// (1+j,0) Bob marginal j, (1+j,1+i) joint of Alice i with Bob j.
template <class Scalar>
using CgMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

struct BellFunctional {
  CgMatrix<Rational> cg;
  std::optional<Rational> local_bound;
  bool bound_certified = false;
  /// "graph", "fixture", "gilbert", "file", ...
  std::string origin;

  explicit BellFunctional(std::size_t settings);
  explicit BellFunctional(CgMatrix<Rational> table);

  std::size_t settings() const { return static_cast<std::size_t>(cg.rows()) - 1; }
  Rational& corner() { return cg(0, 0); }
  const Rational& corner() const { return cg(0, 0); }
  Rational& alice(std::size_t i) { return cg(0, 1 + i); }
  const Rational& alice(std::size_t i) const { return cg(0, 1 + i); }
  Rational& bob(std::size_t j) { return cg(1 + j, 0); }
  const Rational& bob(std::size_t j) const { return cg(1 + j, 0); }
  Rational& joint(std::size_t i, std::size_t j) { return cg(1 + j, 1 + i); }
  const Rational& joint(std::size_t i, std::size_t j) const { return cg(1 + j, 1 + i); }

  bool zero_marginals() const;
  /// Entry (r,c) equals (c,r): invariant under exchanging the parties.
  bool party_symmetric() const { return cg == cg.transpose(); }
  /// Invariant under the settings permutation applied to both parties.
  bool invariant_under(const Permutation& p) const;
};

/// Correlations in the same layout, corner fixed at 1, so that the value of a
/// functional is the entrywise product summed.
template <class Scalar>
struct CorrelationPoint {
  CgMatrix<Scalar> table;
  std::size_t dimension = 0;
  Scalar visibility = Scalar(1);
  Scalar efficiency = Scalar(1);

  std::size_t settings() const { return static_cast<std::size_t>(table.rows()) - 1; }
  const Scalar& alice(std::size_t i) const { return table(0, 1 + i); }
  const Scalar& bob(std::size_t j) const { return table(1 + j, 0); }
  const Scalar& joint(std::size_t i, std::size_t j) const { return table(1 + j, 1 + i); }
  /// Entries in [0,1] and joints bounded by both marginals.
  bool is_consistent() const;
};

template <class Scalar>
bool CorrelationPoint<Scalar>::is_consistent() const {
  const auto m = settings();
  for (Eigen::Index r = 0; r < table.rows(); ++r)
    for (Eigen::Index c = 0; c < table.cols(); ++c)
      if (table(r, c) < Scalar(0) || table(r, c) > Scalar(1)) return false;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (joint(i, j) > alice(i) || joint(i, j) > bob(j)) return false;
  return true;
}

/// Floating-point copy of an exact point.
inline CorrelationPoint<double> to_double(const CorrelationPoint<Rational>& p) {
  CorrelationPoint<double> out;
  out.table = p.table.cast<double>();
  out.dimension = p.dimension;
  out.visibility = p.visibility.to_double();
  out.efficiency = p.efficiency.to_double();
  return out;
}

template <class Scalar>
Scalar value(const BellFunctional& f, const CorrelationPoint<Scalar>& p) {
  if (f.cg.rows() != p.table.rows()) throw std::invalid_argument("functional and point differ in settings");
  if constexpr (std::is_same_v<Scalar, Rational>)
    return f.cg.cwiseProduct(p.table).sum();
  else
    return f.cg.template cast<Scalar>().cwiseProduct(p.table).sum();
}

/// Diagonal +1, -1/(2 xi_cap) on both positions of every edge, marginals 0.
/// `alpha`, when known exactly, becomes the certified local bound.
BellFunctional graph_bell_functional(const Graph& g, std::size_t xi_cap,
                                     std::optional<std::size_t> alpha = std::nullopt);

/// Maximally entangled state with projectors on v_i for Alice and on the
/// conjugate of v_j for Bob: marginals 1/d, joints |<v_i|v_j>|^2 / d.
CorrelationPoint<Rational> quantum_point(const VectorSet& vs);

/// Joints -> W p + (1-W)/d^2; marginals stay 1/d. Requires an undegraded efficiency.
template <class Scalar>
CorrelationPoint<Scalar> apply_werner(const CorrelationPoint<Scalar>& p, const Scalar& visibility) {
  if (visibility < Scalar(0) || visibility > Scalar(1)) throw std::domain_error("visibility outside [0,1]");
  if (p.efficiency != Scalar(1)) throw std::logic_error("noise must be applied before detection losses");
  if (p.dimension == 0) throw std::logic_error("point has no local dimension");
  CorrelationPoint<Scalar> out = p;
  const Scalar d = Scalar(static_cast<long long>(p.dimension));
  const Scalar mixed = Scalar(1) / (d * d);
  auto body = out.table.bottomRightCorner(out.table.rows() - 1, out.table.cols() - 1);
  for (Eigen::Index r = 0; r < body.rows(); ++r)
    for (Eigen::Index c = 0; c < body.cols(); ++c) body(r, c) = visibility * body(r, c) + (Scalar(1) - visibility) * mixed;
  out.visibility = p.visibility * visibility;
  return out;
}

/// Marginals scale by eta, joints by eta^2 (no-click maps to outcome 0).
template <class Scalar>
CorrelationPoint<Scalar> apply_detection(const CorrelationPoint<Scalar>& p, const Scalar& efficiency) {
  if (efficiency < Scalar(0) || efficiency > Scalar(1)) throw std::domain_error("efficiency outside [0,1]");
  CorrelationPoint<Scalar> out = p;
  const auto n = out.table.rows();
  for (Eigen::Index k = 1; k < n; ++k) {
    out.table(0, k) = out.table(0, k) * efficiency;
    out.table(k, 0) = out.table(k, 0) * efficiency;
  }
  auto body = out.table.bottomRightCorner(n - 1, n - 1);
  for (Eigen::Index r = 0; r < body.rows(); ++r)
    for (Eigen::Index c = 0; c < body.cols(); ++c) body(r, c) = body(r, c) * efficiency * efficiency;
  out.efficiency = p.efficiency * efficiency;
  return out;
}

class EnumerationRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LocalBound {
  Rational value;
  Assignment alice = 0;  // witness; Bob answers 1 only on strictly positive columns
  Assignment bob = 0;
  std::uint64_t assignments = 0;  // Alice assignments evaluated
  bool symmetry_reduced = false;
};

/// Exact maximum over deterministic strategies, all 2^m Alice assignments in
/// Gray-code order. Refuses m > max_settings.
LocalBound local_bound(const BellFunctional& f, std::size_t max_settings = 30);
/// One Alice assignment per class; f must be invariant under ctx.
LocalBound local_bound(const BellFunctional& f, const SymmetryContext& ctx);

/// Value of f at the deterministic vertex (alice, bob).
Rational vertex_value(const BellFunctional& f, Assignment alice, Assignment bob);

/// rational + coefficient * sqrt(radicand), radicand >= 0 and square-free of
/// rational squares (folded into `rational` when it is one).
struct QuadraticSurd {
  Rational rational;
  Rational coefficient;
  Rational radicand;

  QuadraticSurd() = default;
  QuadraticSurd(Rational r, Rational c = Rational(0), Rational t = Rational(0));

  double to_double() const;
  bool is_rational() const { return coefficient == 0; }
  std::string str() const;
  friend bool operator==(const QuadraticSurd&, const QuadraticSurd&) = default;
};

/// sqrt(x) for x >= 0 as a surd.
QuadraticSurd surd_sqrt(const Rational& x);

enum class FormulaPath { Protocol1, Protocol2, Theorem3, Theorem3b, Theorem4 };
std::string to_string(FormulaPath p);

enum class ViolationStatus { Violation, NoViolation };

struct EfficiencyOptions {
  /// Value when neither side detects; defaults to the corner coefficient.
  std::optional<Rational> no_detection_value;
};

struct EfficiencyReport {
  ViolationStatus status = ViolationStatus::NoViolation;
  Rational local_bound;    // C
  Rational quantum;        // Q
  Rational quantum_alice;  // Q_A: only Alice detects
  Rational quantum_bob;    // Q_B
  Rational no_detection;   // X
  std::optional<Rational> quantum_mixed;  // value at the maximally mixed point
  std::optional<QuadraticSurd> eta_crit;
  std::optional<Rational> w_crit;
  FormulaPath eta_path = FormulaPath::Protocol1;
  std::optional<FormulaPath> w_path;
};

/// Critical efficiency solves eta^2 (Q - Q_A - Q_B + X) + eta (Q_A + Q_B - 2X) + X = C
/// for its largest root below 1; critical visibility solves W Q + (1-W) Q_mix = C.
/// f needs a local bound.
EfficiencyReport efficiency_report(const BellFunctional& f, const CorrelationPoint<Rational>& p,
                                   const EfficiencyOptions& options = {});

/// sqrt(alpha xi / |V|), the graph-functional efficiency bound.
QuadraticSurd graph_eta(const Rational& alpha, const Rational& vertices_over_xi);
/// (alpha - Q_mix)/(|V|/xi - Q_mix), Q_mix = (|V| - |E|/Xi)/d^2.
Rational graph_visibility(const Rational& alpha, std::size_t vertices, std::size_t edges, std::size_t xi_cap,
                          std::size_t xi, std::size_t dimension);
/// (alpha / (|V|/xi))^(n/2) for n copies under the OR or lexicographic product.
double product_eta(const Rational& alpha, const Rational& vertices_over_xi, int copies);
/// sqrt(alpha(G,w) / (sum w / xi)).
double weighted_eta(const Rational& weighted_alpha, const Rational& weight_sum, std::size_t xi);
/// Graph-functional bound for Y_n: sqrt(alpha(Y_n) n / 2^(n-2)).
double newman_eta(int n);

}  // namespace graphbell
