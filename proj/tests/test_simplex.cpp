// SPDX-License-Identifier: Apache-2.0
#include "ctdiam/rational.hpp"
#include "ctdiam/simplex.hpp"

#include <doctest.h>

#include <random>

using namespace ctdiam;

namespace {

// Adds slack columns: A x <= b becomes [A I] (x, s) = b.
template <typename Scalar>
LpResult<Scalar> solve_leq(const Eigen::Matrix<Scalar, -1, -1>& A, const Eigen::Matrix<Scalar, -1, 1>& b,
                           const Eigen::Matrix<Scalar, -1, 1>& c, const SimplexOptions& options = {}) {
  const auto m = A.rows(), n = A.cols();
  Eigen::Matrix<Scalar, -1, -1> S(m, n + m);
  Eigen::Matrix<Scalar, -1, 1> cc(n + m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n + m; ++j) S(i, j) = j < n ? A(i, j) : Scalar(j - n == i ? 1 : 0);
  for (Eigen::Index j = 0; j < n + m; ++j) cc(j) = j < n ? c(j) : Scalar(0);
  return minimize_standard_form(S, b, cc, options);
}

}  // namespace

TEST_SUITE("simplex") {
  TEST_CASE("textbook LP in doubles and rationals") {
    // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), value 36
    Eigen::MatrixXd A(3, 2);
    A << 1, 0, 0, 2, 3, 2;
    Eigen::VectorXd b(3), c(2);
    b << 4, 12, 18;
    c << -3, -5;
    const auto r = solve_leq<double>(A, b, c);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.objective == doctest::Approx(-36));
    CHECK(r.x(0) == doctest::Approx(2));
    CHECK(r.x(1) == doctest::Approx(6));
    // Dual: y = (0, 3/2, 1) for the max problem, negated for the min.
    CHECK(r.duals(0) == doctest::Approx(0).epsilon(1e-12));
    CHECK(r.duals(1) == doctest::Approx(-1.5));
    CHECK(r.duals(2) == doctest::Approx(-1));

    RationalMatrix Aq(3, 2);
    Aq << Rational(1), Rational(0), Rational(0), Rational(2), Rational(3), Rational(2);
    RationalVector bq(3), cq(2);
    bq << Rational(4), Rational(12), Rational(18);
    cq << Rational(-3), Rational(-5);
    const auto q = solve_leq<Rational>(Aq, bq, cq);
    REQUIRE(q.status == LpStatus::Optimal);
    CHECK(q.objective == Rational(-36));
    CHECK(q.duals(1) == Rational(-3, 2));
  }

  TEST_CASE("infeasible and unbounded problems") {
    // x1 + x2 = -1 with x >= 0
    Eigen::MatrixXd A(1, 2);
    A << 1, 1;
    Eigen::VectorXd b(1), c(2);
    b << -1;
    c << 1, 1;
    CHECK(minimize_standard_form(A, b, c).status == LpStatus::Infeasible);

    // min -x1 s.t. x1 - x2 = 0: unbounded along (1, 1)
    A << 1, -1;
    b << 0;
    c << -1, 0;
    const auto r = minimize_standard_form(A, b, c);
    REQUIRE(r.status == LpStatus::Unbounded);
    CHECK((A * r.ray).norm() == doctest::Approx(0));
    CHECK(c.dot(r.ray) < 0);
    CHECK((r.ray.array() >= 0).all());
  }

  TEST_CASE("perturbed solves survive redundant equality rows") {
    // Row 3 = row 1 + row 2; a perturbed right-hand side breaks that identity.
    Eigen::MatrixXd A(3, 3);
    A << 1, 1, 0, 0, 1, 1, 1, 2, 1;
    Eigen::VectorXd b(3), c(3);
    b << 1, 0, 1;
    c << 1, 2, 3;
    SimplexOptions o;
    o.rule = PivotRule::Dantzig;
    o.perturbation = 1e-7;
    const auto r = minimize_standard_form(A, b, c, o);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.objective == doctest::Approx(1.0));
    CHECK(r.x(0) == doctest::Approx(1.0));
  }

  TEST_CASE("Bland's rule terminates on Beale's cycling example") {
    // Cycles under the textbook most-negative rule without anti-cycling.
    RationalMatrix A(3, 4);
    A << Rational(1, 4), Rational(-8), Rational(-1), Rational(9), Rational(1, 2), Rational(-12), Rational(-1, 2),
        Rational(3), Rational(0), Rational(0), Rational(1), Rational(0);
    RationalVector b(3), c(4);
    b << Rational(0), Rational(0), Rational(1);
    c << Rational(-3, 4), Rational(20), Rational(-1, 2), Rational(6);
    for (auto rule : {PivotRule::Bland, PivotRule::Dantzig}) {
      SimplexOptions o;
      o.rule = rule;
      o.max_iterations = 10000;
      const auto r = solve_leq<Rational>(A, b, c, o);
      REQUIRE(r.status == LpStatus::Optimal);
      CHECK(r.objective == Rational(-5, 4));
    }
  }

  TEST_CASE("perturbed floating solves agree with exact solves on random LPs") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coef(-5, 5);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
      const int m = 3 + trial % 4, n = 6 + trial % 5;
      RationalMatrix Aq(m, n);
      RationalVector bq(m), cq(n);
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) Aq(i, j) = Rational(coef(rng));
        // Degenerate right-hand sides on purpose.
        bq(i) = Rational(i == 0 ? 1 : 0);
      }
      for (int j = 0; j < n; ++j) cq(j) = Rational(coef(rng));
      const auto exact = minimize_standard_form(Aq, bq, cq);
      Eigen::MatrixXd A(m, n);
      Eigen::VectorXd b(m), c(n);
      for (int i = 0; i < m; ++i) {
        b(i) = to_double(bq(i));
        for (int j = 0; j < n; ++j) A(i, j) = to_double(Aq(i, j));
      }
      for (int j = 0; j < n; ++j) c(j) = to_double(cq(j));
      SimplexOptions o;
      o.rule = PivotRule::Dantzig;
      o.perturbation = 1e-7;
      const auto approx = minimize_standard_form(A, b, c, o);
      CAPTURE(trial);
      REQUIRE(approx.status == exact.status);
      if (exact.status != LpStatus::Optimal) continue;
      ++checked;
      CHECK(approx.objective == doctest::Approx(to_double(exact.objective)).epsilon(1e-9));
      CHECK((A * approx.x - b).cwiseAbs().maxCoeff() < 1e-9);
      CHECK((approx.x.array() >= -1e-12).all());
      // Dual feasibility: A^T pi <= c, and strong duality.
      CHECK(((A.transpose() * approx.duals - c).array() <= 1e-9).all());
      CHECK(b.dot(approx.duals) == doctest::Approx(approx.objective).epsilon(1e-9));
    }
    CHECK(checked > 10);
  }
}
