// SPDX-License-Identifier: Apache-2.0
#pragma once

// Dense two-phase tableau simplex for
//
//     minimize c^T x   subject to   A x = b,  x >= 0.
//
// The solver is templated on the scalar so the same code runs in exact
// rational arithmetic (convex body queries) and in double precision (the
// Chebyshev min-max problems). Artificial columns stay in the tableau after
// phase one so the optimal simplex multipliers can be read off their reduced
// costs.

#include <Eigen/Core>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <type_traits>
#include <vector>

namespace ctdiam {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

enum class PivotRule {
  Bland,    // lowest-index entering column; never cycles
  Dantzig,  // most negative reduced cost, Bland after a run of degenerate pivots
};

struct SimplexOptions {
  PivotRule rule = PivotRule::Bland;
  long max_iterations = 2'000'000;
  /// Zero tolerance for floating scalars; ignored for exact scalars.
  double tolerance = 1e-10;
  /// Dantzig only: consecutive degenerate pivots before switching to Bland.
  int degenerate_switch = 50;
  /// Floating scalars only: relative size of a deterministic right-hand side
  /// perturbation that breaks degeneracy. The optimal basis is then cleaned up
  /// against the true right-hand side with dual simplex pivots. Zero disables.
  double perturbation = 0.0;
};

template <typename Scalar>
struct LpResult {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  LpStatus status = LpStatus::Infeasible;
  Vector x;          // primal solution (Optimal)
  Scalar objective{};  // c^T x (Optimal)
  Vector duals;      // multipliers pi with A^T pi <= c (Optimal)
  Vector ray;        // A ray = 0, ray >= 0, c^T ray < 0 (Unbounded)
  long iterations = 0;
};

namespace detail {

template <typename Scalar>
inline constexpr bool is_exact_v = !std::is_floating_point_v<Scalar>;

template <typename Scalar>
Scalar zero_tolerance(const SimplexOptions& options) {
  if constexpr (is_exact_v<Scalar>) {
    return Scalar(0);
  } else {
    return static_cast<Scalar>(options.tolerance);
  }
}

template <typename Scalar>
class Tableau {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  Tableau(Eigen::Index rows, Eigen::Index vars)
      : m_(rows), n_(vars), t_(rows + 1, vars + rows + 1), basis_(static_cast<std::size_t>(rows)) {
    t_.setZero();
  }

  Scalar& at(Eigen::Index i, Eigen::Index j) { return t_(i, j); }
  const Scalar& at(Eigen::Index i, Eigen::Index j) const { return t_(i, j); }
  Scalar& rhs(Eigen::Index i) { return t_(i, rhs_col()); }
  Scalar& cost(Eigen::Index j) { return t_(m_, j); }
  Eigen::Index rhs_col() const { return n_ + m_; }
  Eigen::Index rows() const { return m_; }
  Eigen::Index vars() const { return n_; }
  Eigen::Index cols() const { return n_ + m_; }
  std::vector<Eigen::Index>& basis() { return basis_; }

  void pivot(Eigen::Index r, Eigen::Index c) {
    const Scalar p = t_(r, c);
    t_.row(r) /= p;
    t_(r, c) = Scalar(1);
    for (Eigen::Index i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const Scalar f = t_(i, c);
      if (f == Scalar(0)) continue;
      t_.row(i) -= f * t_.row(r);
      t_(i, c) = Scalar(0);
    }
    basis_[static_cast<std::size_t>(r)] = c;
  }

 private:
  Eigen::Index m_;
  Eigen::Index n_;
  Matrix t_;
  std::vector<Eigen::Index> basis_;
};

enum class PhaseOutcome { Optimal, Unbounded, IterationLimit };

// Runs simplex iterations on the cost row currently stored in the tableau.
// Columns at or beyond `entering_limit` are never allowed to enter.
template <typename Scalar>
PhaseOutcome run_phase(Tableau<Scalar>& tab, Eigen::Index entering_limit, const SimplexOptions& options,
                       long& iterations, Eigen::Index& unbounded_col, bool pin_artificials) {
  using std::abs;
  const Scalar tol = zero_tolerance<Scalar>(options);
  int degenerate_run = 0;
  while (true) {
    if (iterations >= options.max_iterations) return PhaseOutcome::IterationLimit;
    const bool bland = options.rule == PivotRule::Bland || degenerate_run >= options.degenerate_switch;

    Eigen::Index entering = -1;
    Scalar best = -tol;
    for (Eigen::Index j = 0; j < entering_limit; ++j) {
      const Scalar d = tab.cost(j);
      if (d < best) {
        entering = j;
        if (bland) break;
        best = d;
      }
    }
    if (entering < 0) return PhaseOutcome::Optimal;

    Eigen::Index leaving = -1;
    Scalar best_ratio{};
    for (Eigen::Index i = 0; i < tab.rows(); ++i) {
      const Scalar a = tab.at(i, entering);
      // A zero-level artificial still in the basis must stay at zero, so it
      // blocks the entering column whatever the sign of its entry.
      const bool pinned = pin_artificials && tab.basis()[static_cast<std::size_t>(i)] >= tab.vars() &&
                          (a > tol || a < -tol);
      if (a <= tol && !pinned) continue;
      const Scalar ratio = pinned ? Scalar(0) : Scalar(tab.rhs(i) / a);
      if (leaving < 0 || ratio < best_ratio ||
          (ratio == best_ratio && tab.basis()[static_cast<std::size_t>(i)] <
                                      tab.basis()[static_cast<std::size_t>(leaving)])) {
        leaving = i;
        best_ratio = ratio;
      }
    }
    if (leaving < 0) {
      unbounded_col = entering;
      return PhaseOutcome::Unbounded;
    }
    degenerate_run = (best_ratio <= tol) ? degenerate_run + 1 : 0;
    tab.pivot(leaving, entering);
    ++iterations;
  }
}

// Restores the unperturbed right-hand side b_flipped = B^{-1} b from the
// artificial block and runs dual simplex pivots until it is feasible again.
// The basis stays dual feasible throughout, so the end point is optimal.
template <typename Scalar, typename Vector>
PhaseOutcome dual_cleanup(Tableau<Scalar>& tab, const Vector& b_flipped, const SimplexOptions& options, long& iterations) {
  const Scalar tol = zero_tolerance<Scalar>(options);
  const Eigen::Index m = tab.rows();
  const Eigen::Index n = tab.vars();
  for (Eigen::Index i = 0; i < m; ++i) {
    Scalar v(0);
    for (Eigen::Index r = 0; r < m; ++r) v += tab.at(i, n + r) * b_flipped(r);
    tab.rhs(i) = v;
  }
  while (true) {
    if (iterations >= options.max_iterations) return PhaseOutcome::IterationLimit;
    Eigen::Index leaving = -1;
    Scalar worst = -tol;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (tab.rhs(i) < worst) {
        worst = tab.rhs(i);
        leaving = i;
      }
    }
    if (leaving < 0) return PhaseOutcome::Optimal;
    Eigen::Index entering = -1;
    Scalar best_ratio{};
    for (Eigen::Index j = 0; j < n; ++j) {
      const Scalar a = tab.at(leaving, j);
      if (a >= -tol) continue;
      const Scalar ratio = std::max(tab.cost(j), Scalar(0)) / -a;
      if (entering < 0 || ratio < best_ratio) {
        entering = j;
        best_ratio = ratio;
      }
    }
    // Dual unbounded: the true problem is infeasible.
    if (entering < 0) return PhaseOutcome::Unbounded;
    tab.pivot(leaving, entering);
    ++iterations;
  }
}

template <typename DerivedA, typename DerivedB, typename DerivedC>
auto resolve_unperturbed(const Eigen::MatrixBase<DerivedA>& A, const Eigen::MatrixBase<DerivedB>& b,
                         const Eigen::MatrixBase<DerivedC>& c, const SimplexOptions& options, long spent)
    -> LpResult<typename DerivedA::Scalar>;

}  // namespace detail

/// Solves min c^T x s.t. A x = b, x >= 0 with the two-phase tableau method.
template <typename DerivedA, typename DerivedB, typename DerivedC>
auto minimize_standard_form(const Eigen::MatrixBase<DerivedA>& A, const Eigen::MatrixBase<DerivedB>& b,
                            const Eigen::MatrixBase<DerivedC>& c, const SimplexOptions& options = {})
    -> LpResult<typename DerivedA::Scalar> {
  using Scalar = typename DerivedA::Scalar;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using std::abs;

  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  const Scalar tol = detail::zero_tolerance<Scalar>(options);

  LpResult<Scalar> result;
  detail::Tableau<Scalar> tab(m, n);
  std::vector<int> sign(static_cast<std::size_t>(m), 1);
  Vector b_flipped(m);
  bool perturbed = false;

  for (Eigen::Index i = 0; i < m; ++i) {
    const int s = b(i) < Scalar(0) ? -1 : 1;
    sign[static_cast<std::size_t>(i)] = s;
    for (Eigen::Index j = 0; j < n; ++j) tab.at(i, j) = s == 1 ? Scalar(A(i, j)) : Scalar(-A(i, j));
    tab.at(i, n + i) = Scalar(1);
    tab.rhs(i) = s == 1 ? Scalar(b(i)) : Scalar(-b(i));
    b_flipped(i) = tab.rhs(i);
    tab.basis()[static_cast<std::size_t>(i)] = n + i;
  }
  if constexpr (!detail::is_exact_v<Scalar>) {
    if (options.perturbation > 0.0 && m > 0) {
      const Scalar size = std::max<Scalar>(Scalar(1), b.cwiseAbs().maxCoeff());
      // Distinct per-row offsets in [1, 2) from the golden-ratio sequence.
      for (Eigen::Index i = 0; i < m; ++i) {
        const double spread = 1.0 + std::fmod(0.6180339887498949 * static_cast<double>(i + 1), 1.0);
        tab.rhs(i) += static_cast<Scalar>(options.perturbation * spread) * size;
      }
      perturbed = true;
    }
  }

  // Phase one: minimize the sum of artificials.
  for (Eigen::Index j = 0; j <= tab.rhs_col(); ++j) {
    if (j >= n && j < n + m) continue;
    Scalar s(0);
    for (Eigen::Index i = 0; i < m; ++i) s += tab.at(i, j);
    tab.cost(j) = -s;
  }
  Eigen::Index unbounded_col = -1;
  auto outcome = detail::run_phase(tab, n, options, result.iterations, unbounded_col, false);
  if (outcome == detail::PhaseOutcome::IterationLimit) {
    result.status = LpStatus::IterationLimit;
    return result;
  }
  const Scalar infeasibility = -tab.cost(tab.rhs_col());
  Scalar scale(1);
  if constexpr (!detail::is_exact_v<Scalar>) scale = std::max<Scalar>(Scalar(1), b.cwiseAbs().sum());
  if (infeasibility > tol * scale) {
    // Redundant equality rows turn inconsistent once perturbed.
    if (perturbed) return detail::resolve_unperturbed(A, b, c, options, result.iterations);
    result.status = LpStatus::Infeasible;
    return result;
  }

  // Drive zero-level artificials out of the basis where a real column allows it.
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.basis()[static_cast<std::size_t>(i)] < n) continue;
    Eigen::Index col = -1;
    Scalar best(0);
    for (Eigen::Index j = 0; j < n; ++j) {
      const Scalar a = abs(tab.at(i, j));
      if (a > tol && a > best) {
        best = a;
        col = j;
        if constexpr (detail::is_exact_v<Scalar>) break;
      }
    }
    if (col >= 0) tab.pivot(i, col);
  }

  // Phase two cost row.
  for (Eigen::Index j = 0; j <= tab.rhs_col(); ++j) {
    Scalar d = (j < n) ? Scalar(c(j)) : Scalar(0);
    for (Eigen::Index i = 0; i < m; ++i) {
      const Eigen::Index bj = tab.basis()[static_cast<std::size_t>(i)];
      if (bj < n && c(bj) != Scalar(0)) d -= Scalar(c(bj)) * tab.at(i, j);
    }
    tab.cost(j) = d;
  }
  outcome = detail::run_phase(tab, n, options, result.iterations, unbounded_col, true);
  if (outcome == detail::PhaseOutcome::IterationLimit) {
    result.status = LpStatus::IterationLimit;
    return result;
  }
  if (outcome == detail::PhaseOutcome::Unbounded) {
    result.status = LpStatus::Unbounded;
    result.ray.resize(n);
    result.ray.setZero();
    result.ray(unbounded_col) = Scalar(1);
    for (Eigen::Index i = 0; i < m; ++i) {
      const Eigen::Index bj = tab.basis()[static_cast<std::size_t>(i)];
      if (bj < n) result.ray(bj) = -tab.at(i, unbounded_col);
    }
    return result;
  }

  if (perturbed) {
    outcome = detail::dual_cleanup(tab, b_flipped, options, result.iterations);
    if (outcome == detail::PhaseOutcome::Unbounded) {
      return detail::resolve_unperturbed(A, b, c, options, result.iterations);
    }
    if (outcome != detail::PhaseOutcome::Optimal) {
      result.status = LpStatus::IterationLimit;
      return result;
    }
  }

  result.status = LpStatus::Optimal;
  result.x.resize(n);
  result.x.setZero();
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index bj = tab.basis()[static_cast<std::size_t>(i)];
    if (bj < n) result.x(bj) = tab.rhs(i);
  }
  result.duals.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Scalar pi_flipped = -tab.cost(n + i);
    result.duals(i) = sign[static_cast<std::size_t>(i)] == 1 ? pi_flipped : Scalar(-pi_flipped);
  }
  if constexpr (!detail::is_exact_v<Scalar>) {
    // Long pivot sequences accumulate rounding in the tableau; re-solve the
    // final basis against the original columns.
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    Matrix B(m, m);
    Vector cb(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const Eigen::Index bj = tab.basis()[static_cast<std::size_t>(i)];
      if (bj < n) {
        B.col(i) = A.col(bj);
        cb(i) = c(bj);
      } else {
        B.col(i).setZero();
        B(bj - n, i) = Scalar(sign[static_cast<std::size_t>(bj - n)]);
        cb(i) = Scalar(0);
      }
    }
    const Eigen::FullPivLU<Matrix> lu(B);
    if (lu.isInvertible()) {
      const Vector xb = lu.solve(b);
      result.duals = lu.transpose().solve(cb);
      result.x.setZero();
      for (Eigen::Index i = 0; i < m; ++i) {
        const Eigen::Index bj = tab.basis()[static_cast<std::size_t>(i)];
        if (bj < n) result.x(bj) = std::max(xb(i), Scalar(0));
      }
    }
  }
  result.objective = c.dot(result.x);
  return result;
}

namespace detail {

template <typename DerivedA, typename DerivedB, typename DerivedC>
auto resolve_unperturbed(const Eigen::MatrixBase<DerivedA>& A, const Eigen::MatrixBase<DerivedB>& b,
                         const Eigen::MatrixBase<DerivedC>& c, const SimplexOptions& options, long spent)
    -> LpResult<typename DerivedA::Scalar> {
  SimplexOptions plain = options;
  plain.perturbation = 0.0;
  plain.max_iterations = std::max(0L, options.max_iterations - spent);
  auto result = minimize_standard_form(A, b, c, plain);
  result.iterations += spent;
  return result;
}

}  // namespace detail

}  // namespace ctdiam
