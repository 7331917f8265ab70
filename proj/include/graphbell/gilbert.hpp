#pragma once

#include "graphbell/bell.hpp"
#include "graphbell/symmetry.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace graphbell {

/// Group-invariant subspace of the Collins-Gisin coordinates (corner
/// excluded). An invariant vector is stored as one value per coordinate
/// orbit; its squared norm is sum_o size_o x_o^2.
class InvariantSpace {
 public:
  explicit InvariantSpace(const SymmetryContext& ctx);

  std::size_t settings() const { return settings_; }
  std::size_t dimension() const { return sizes_.size(); }
  const Eigen::VectorXd& sizes() const { return sizes_; }
  /// Orbit of Collins-Gisin entry (row, col); not defined for the corner.
  std::size_t orbit(std::size_t row, std::size_t col) const { return orbit_of_[row * side_ + col]; }

  double inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  /// Orbit means of a table (group average); the corner is dropped.
  template <class Scalar>
  std::vector<Scalar> project(const CgMatrix<Scalar>& table) const;
  /// Table whose entries are the orbit values; corner set to `corner`.
  template <class Scalar>
  CgMatrix<Scalar> expand(const std::vector<Scalar>& values, const Scalar& corner) const;

 private:
  std::size_t settings_ = 0;
  std::size_t side_ = 0;
  std::vector<std::size_t> orbit_of_;
  Eigen::VectorXd sizes_;
};

/// Deterministic vertex in orbit-sum form: counts[o] is the number of
/// coordinates in orbit o equal to 1.
struct OracleResult {
  Assignment alice = 0;
  Assignment bob = 0;
  double value = 0;
  std::vector<std::int64_t> counts;
  std::int64_t ones = 0;  // squared norm of the unsymmetrized vertex
};

/// Linear maximization over the local polytope for invariant directions.
/// For each class representative, Bob's columns are grouped into distinct
/// orbit-count patterns so a direction costs one small matrix product plus a
/// pass over the compressed patterns.
class LocalOracle {
 public:
  LocalOracle(const SymmetryContext& ctx, const InvariantSpace& space);

  /// argmax_p <direction, p>, direction given as orbit values. Ties go to the
  /// first representative; Bob answers 1 only on strictly positive columns.
  OracleResult maximize(const Eigen::VectorXd& direction) const;
  /// Exact maximum for integer orbit coefficients.
  std::int64_t maximize_exact(const std::vector<std::int64_t>& direction) const;

  const SymmetryContext& context() const { return *ctx_; }
  const InvariantSpace& space() const { return *space_; }

  /// Orbit counts of the vertex (a, bob).
  std::vector<std::int64_t> vertex_counts(Assignment alice, Assignment bob) const;

 private:
  struct RepPatterns {
    std::size_t alice_row = 0;  // pattern index of Alice's marginal counts
    std::vector<std::pair<std::size_t, std::int64_t>> columns;  // (pattern, multiplicity)
  };
  const SymmetryContext* ctx_;
  const InvariantSpace* space_;
  Eigen::MatrixXd patterns_;                       // distinct orbit-count rows
  std::vector<std::vector<std::int64_t>> exact_;  // same rows, integer
  std::map<std::vector<std::int64_t>, std::size_t> index_;
  std::vector<RepPatterns> reps_;
};

struct GilbertConfig {
  std::size_t max_iterations = 1'000'000;
  /// Stop once an iteration improves the distance by less than this.
  double tolerance = 1e-10;
};

struct IterationState {
  Eigen::VectorXd point;   // s_k, orbit values
  Eigen::VectorXd target;  // q, orbit values
  double distance = 0;
  std::size_t iterations = 0;
  std::vector<double> history;  // distance after each iteration, symmetrized
  double min_step = 1;          // lambda range seen
  double max_step = 0;
  bool monotone = true;          // history non-increasing
  bool symmetrization_contracts = true;  // ||q - s_bar|| <= ||q - s|| every step
  bool converged = false;        // stopped by tolerance rather than budget
};

/// Symmetrized Gilbert iteration from the all-zeros vertex toward q.
IterationState gilbert_run(const CorrelationPoint<double>& target, const LocalOracle& oracle,
                           const GilbertConfig& config = {});

struct SeparatingInequality {
  BellFunctional functional;
  double margin = 0;  // <q - s, q> - max over the polytope of <q - s, p>
  std::int64_t denominator_cap = 0;
  bool rounded = true;  // false when no capped rounding kept the separation
  std::size_t iterations = 0;
  double distance = 0;
  std::optional<EfficiencyReport> report;
};

struct ExtractOptions {
  std::int64_t denominator_cap = 64;
  std::int64_t max_denominator_cap = 1 << 16;
};

/// Rounds the direction q - s to small rationals, certifies the local bound
/// over the classes, and reports critical efficiency and visibility at
/// `clean`, the undegraded quantum point.
SeparatingInequality extract_inequality(const IterationState& state, const LocalOracle& oracle,
                                        const CorrelationPoint<Rational>& clean, const ExtractOptions& options = {});

struct OptimizeOptions {
  GilbertConfig gilbert;
  std::size_t rounds = 4;
  /// Next target visibility sits this far below the last critical visibility.
  double visibility_step = 0.01;
  ExtractOptions extract;
};

struct OptimizeResult {
  SeparatingInequality best;
  std::vector<double> target_visibilities;
  std::vector<double> etas;
  std::size_t total_iterations = 0;
};

/// Repeated runs toward Werner-degraded targets: each round aims below the
/// critical visibility of the previous inequality. Keeps the lowest eta_crit.
OptimizeResult gilbert_optimize(const CorrelationPoint<Rational>& clean, const LocalOracle& oracle,
                                const OptimizeOptions& options = {});

struct LpCertificate {
  BigInt optimal_pairs = 0;
  std::size_t symmetrized_vertices = 0;
  bool feasible = false;
  std::vector<Rational> weights;  // convex weights over the symmetrized vertices
};

/// Whether `point` is a convex combination of the symmetrized deterministic
/// vertices that attain f's local bound. Exact rational LP.
LpCertificate certify_lp(const CorrelationPoint<Rational>& point, const BellFunctional& f, const LocalOracle& oracle);

struct ScanResult {
  std::optional<BellFunctional> functional;
  std::optional<EfficiencyReport> report;
  std::size_t candidates = 0;
  std::size_t violating = 0;
};

/// Exhaustive grid over orbit coefficients: each free orbit takes every value
/// in `values`, pinned orbits stay 0. Best eta_crit, then W_crit.
ScanResult parameter_scan(const CorrelationPoint<Rational>& clean, const LocalOracle& oracle,
                          const std::vector<std::int64_t>& values, const std::vector<std::size_t>& pinned = {});

}  // namespace graphbell
