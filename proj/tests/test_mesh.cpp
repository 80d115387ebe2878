// SPDX-License-Identifier: Apache-2.0
#include "ctdiam/error.hpp"
#include "ctdiam/mesh.hpp"

#include "support.hpp"

#include <doctest.h>

#include <numbers>

using namespace ctdiam;
using namespace ctdiam::test;

namespace {

Polynomial random_poly(std::mt19937_64& rng, int dim, int terms, int max_entry) {
  std::normal_distribution<double> g;
  Polynomial p(dim);
  for (int t = 0; t < terms; ++t) p.add_term(random_exponent(rng, dim, max_entry), Complex(g(rng), g(rng)));
  return p;
}

}  // namespace

TEST_SUITE("mesh") {
  TEST_CASE("generators") {
    const auto c = circle_mesh(4);
    REQUIRE(c.size() == 4);
    const Complex expect[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (int i = 0; i < 4; ++i) CHECK(c.point(i)(0) == expect[i]);
    CHECK(c.is_unweighted());
    CHECK(!c.is_real());

    const auto u = interval_mesh(5, Spacing::Uniform);
    const double xs[] = {-1, -0.5, 0, 0.5, 1};
    for (int i = 0; i < 5; ++i) CHECK(u.point(i)(0) == Complex(xs[i]));
    CHECK(u.is_real());

    const auto ch = interval_mesh(401);
    CHECK(ch.point(0)(0).real() == -1.0);
    CHECK(ch.point(200)(0).real() == 0.0);
    CHECK(ch.point(400)(0).real() == 1.0);
    for (Eigen::Index i = 0; i < 401; ++i)
      CHECK(ch.point(i)(0).real() == doctest::Approx(-std::cos(std::numbers::pi * static_cast<double>(i) / 400)));

    const auto t = torus_mesh(4, 4);
    CHECK(t.dim() == 2);
    CHECK(t.size() == 16);
    // First factor varies slowest.
    CHECK(t.point(1)(0) == Complex(1, 0));
    CHECK(t.point(1)(1) == Complex(0, 1));
    CHECK(t.point(4)(0) == Complex(0, 1));

    auto f = std::make_shared<const MeshSpec>(MeshSpec{CircleSpec{{0, 0}, 1, 4}});
    const auto p = build_mesh(MeshSpec{ProductSpec{{f, f}}});
    CHECK(p.points() == t.points());

    const auto b = build_mesh(MeshSpec{Box2dSpec{0, 1, 0, 2, 3, 5}});
    CHECK(b.size() == 15);
    CHECK(b.is_real());
  }

  TEST_CASE("generator errors") {
    CHECK_THROWS_AS(circle_mesh(0), Error);
    CHECK_THROWS_AS(line_mesh({1.0, 2.0}, {0.0}), Error);
    const double ninf = -std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(line_mesh({1.0, 2.0}, {ninf, ninf}), Error);
    MeshSpec spec{CircleSpec{{0, 0}, 1, 3}, WeightTable{{0.0, 0.0}}};
    CHECK_THROWS_AS(build_mesh(spec), Error);
  }

  TEST_CASE("weights") {
    const auto m = build_mesh(MeshSpec{IntervalSpec{0, 2, 3, Spacing::Uniform}, WeightRadialGaussian{2.0}});
    CHECK(m.log_weights()(0) == doctest::Approx(0.0));
    CHECK(m.log_weights()(2) == doctest::Approx(-4.0 / 8.0));
    CHECK(!m.is_unweighted());
    const auto z = line_mesh({1.0, 2.0}, {0.0, -std::numeric_limits<double>::infinity()});
    CHECK(z.positive_weight_count() == 1);
  }

  TEST_CASE("norm examples") {
    CHECK(weighted_sup_norm(circle_mesh(64), Polynomial::monomial({1}), 1) == doctest::Approx(0.0));
    Polynomial cheb2 = Polynomial::monomial({2});
    cheb2.add_term({0}, -0.5);
    CHECK(std::abs(weighted_sup_norm(interval_mesh(401), cheb2, 2) - std::log(0.5)) < 1e-12);
    for (int k : {0, 1, 5}) CHECK(weighted_sup_norm(torus_mesh(3, 5), Polynomial::monomial({0, 0}), k) == 0.0);
    CHECK(weighted_sup_norm(circle_mesh(8), Polynomial(1), 1) == -std::numeric_limits<double>::infinity());
  }

  TEST_CASE("polynomial storage") {
    Polynomial p(1);
    p.add_term({1}, 2.0);
    p.add_term({1}, -2.0);
    CHECK(p.is_zero());
    p.add_term({3}, 1.0);
    CHECK(p.is_monic_for({3}));
    CHECK(p.pow(3).terms().size() == 1);
    CHECK(p.pow(3).coefficient({9}) == Complex(1.0));
  }

  TEST_CASE("submultiplicativity, refinement and homogeneity") {
    std::mt19937_64 rng(17);
    const auto mesh = build_mesh(MeshSpec{TorusSpec{{CircleSpec{{0, 0}, 1.3, 7}, CircleSpec{{0.2, 0}, 0.8, 5}}},
                                          WeightRadialGaussian{1.5}});
    const auto coarse = build_mesh(MeshSpec{IntervalSpec{-1, 1, 9, Spacing::Uniform}});
    const auto fine = build_mesh(MeshSpec{IntervalSpec{-1, 1, 17, Spacing::Uniform}});
    for (int t = 0; t < 100; ++t) {
      const auto p = random_poly(rng, 2, 4, 3), q = random_poly(rng, 2, 4, 3);
      const int k = t % 4, m = (t / 4) % 3;
      CHECK(weighted_sup_norm(mesh, p * q, k + m) <=
            weighted_sup_norm(mesh, p, k) + weighted_sup_norm(mesh, q, m) + 1e-9);
      const Complex c(0.3 + t, -1.7);
      CHECK(std::abs(weighted_sup_norm(mesh, c * p, k) - weighted_sup_norm(mesh, p, k) - std::log(std::abs(c))) <
            1e-12);
      const auto r = random_poly(rng, 1, 4, 6);
      CHECK(weighted_sup_norm(fine, r, 1) >= weighted_sup_norm(coarse, r, 1));
    }
  }

  TEST_CASE("monomial matrix") {
    const auto m = torus_mesh(3, 4);
    const std::vector<Exponent> ex{{0, 0}, {2, 1}};
    const auto v = monomial_matrix(m, ex);
    REQUIRE(v.rows() == 2);
    for (Eigen::Index j = 0; j < m.size(); ++j) {
      CHECK(v(0, j) == Complex(1.0));
      CHECK(std::abs(v(1, j) - m.point(j)(0) * m.point(j)(0) * m.point(j)(1)) < 1e-15);
    }
  }
}
