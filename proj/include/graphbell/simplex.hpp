#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace graphbell {

enum class LpStatus { Optimal, Infeasible, Unbounded };

/// maximize c^T x  subject to  A_le x <= b_le,  A_eq x = b_eq,  x >= 0.
template <class Scalar>
struct LinearProgram {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Vector objective;
  Matrix le_lhs;
  Vector le_rhs;
  Matrix eq_lhs;
  Vector eq_rhs;

  explicit LinearProgram(Eigen::Index variables)
      : objective(Vector::Zero(variables)), le_lhs(0, variables), le_rhs(0), eq_lhs(0, variables), eq_rhs(0) {}

  Eigen::Index variables() const { return objective.size(); }
};

template <class Scalar>
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
  Scalar value{};
};

/// Two-phase dense tableau simplex with Bland's rule. Exact when Scalar is
/// exact; Bland's rule guarantees termination.
template <class Scalar>
LpResult<Scalar> solve(const LinearProgram<Scalar>& lp) {
  using Matrix = typename LinearProgram<Scalar>::Matrix;
  const Eigen::Index n = lp.variables();
  const Eigen::Index m_le = lp.le_lhs.rows(), m_eq = lp.eq_lhs.rows();
  if (lp.le_lhs.cols() != n || lp.eq_lhs.cols() != n || lp.le_rhs.size() != m_le || lp.eq_rhs.size() != m_eq)
    throw std::invalid_argument("linear program dimensions disagree");
  const Eigen::Index m = m_le + m_eq;

  // Columns: x (n), slack/surplus per <= row (m_le), artificial per row needing one, rhs.
  std::vector<Eigen::Index> artificial_row;
  std::vector<int> sign(m, 1);
  for (Eigen::Index i = 0; i < m_le; ++i)
    if (lp.le_rhs(i) < Scalar(0)) sign[i] = -1;
  for (Eigen::Index i = 0; i < m_eq; ++i)
    if (lp.eq_rhs(i) < Scalar(0)) sign[m_le + i] = -1;
  for (Eigen::Index i = 0; i < m; ++i)
    if (i >= m_le || sign[i] < 0) artificial_row.push_back(i);
  const Eigen::Index n_art = static_cast<Eigen::Index>(artificial_row.size());
  const Eigen::Index cols = n + m_le + n_art;
  const Eigen::Index rhs = cols;

  Matrix t = Matrix::Zero(m + 1, cols + 1);  // last row: objective (reduced costs)
  std::vector<Eigen::Index> basis(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Scalar s(sign[i]);
    if (i < m_le) {
      t.row(i).head(n) = lp.le_lhs.row(i) * s;
      t(i, n + i) = s;
      t(i, rhs) = lp.le_rhs(i) * s;
      basis[i] = n + i;
    } else {
      t.row(i).head(n) = lp.eq_lhs.row(i - m_le) * s;
      t(i, rhs) = lp.eq_rhs(i - m_le) * s;
    }
  }
  for (Eigen::Index k = 0; k < n_art; ++k) {
    t(artificial_row[k], n + m_le + k) = Scalar(1);
    basis[artificial_row[k]] = n + m_le + k;
  }

  auto pivot = [&](Eigen::Index r, Eigen::Index c) {
    const Scalar p = t(r, c);
    t.row(r) /= p;
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i == r || t(i, c) == Scalar(0)) continue;
      const Scalar f = t(i, c);
      t.row(i) -= f * t.row(r);
    }
    basis[r] = c;
  };

  // Minimizes the objective row over columns [0, active); returns false if unbounded.
  auto run = [&](Eigen::Index active) {
    while (true) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < active; ++j)
        if (t(m, j) < Scalar(0)) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      std::optional<Scalar> best;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (!(t(i, enter) > Scalar(0))) continue;
        Scalar ratio = t(i, rhs) / t(i, enter);
        if (!best || ratio < *best || (ratio == *best && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  };

  LpResult<Scalar> result;
  // Phase 1: minimize the sum of artificials.
  if (n_art > 0) {
    t.row(m).setZero();
    for (Eigen::Index k = 0; k < n_art; ++k) t.row(m) -= t.row(artificial_row[k]);
    for (Eigen::Index k = 0; k < n_art; ++k) t(m, n + m_le + k) = Scalar(0);
    run(cols);
    if (t(m, rhs) != Scalar(0)) {
      result.status = LpStatus::Infeasible;
      return result;
    }
    // Drive remaining (zero-valued) artificials out of the basis.
    std::vector<bool> drop(m, false);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (basis[i] < n + m_le) continue;
      Eigen::Index c = -1;
      for (Eigen::Index j = 0; j < n + m_le; ++j)
        if (t(i, j) != Scalar(0)) {
          c = j;
          break;
        }
      if (c >= 0)
        pivot(i, c);
      else
        drop[i] = true;  // redundant row
    }
    for (Eigen::Index i = 0; i < m; ++i)
      if (drop[i]) t.row(i).setZero(), basis[i] = cols;  // never selected again
  }

  // Phase 2 over the original columns.
  t.row(m).setZero();
  for (Eigen::Index j = 0; j < n; ++j) t(m, j) = -lp.objective(j);
  for (Eigen::Index i = 0; i < m; ++i)
    if (basis[i] < cols && t(m, basis[i]) != Scalar(0)) {
      const Scalar f = t(m, basis[i]);
      t.row(m) -= f * t.row(i);
    }
  const Eigen::Index active = n + m_le;
  for (Eigen::Index i = 0; i < m; ++i)
    if (basis[i] >= active && basis[i] < cols) throw std::logic_error("artificial variable left in basis");
  if (!run(active)) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  result.status = LpStatus::Optimal;
  result.x = LinearProgram<Scalar>::Vector::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i)
    if (basis[i] < n) result.x(basis[i]) = t(i, rhs);
  result.value = t(m, rhs);
  return result;
}

}  // namespace graphbell
