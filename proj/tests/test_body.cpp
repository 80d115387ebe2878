// SPDX-License-Identifier: Apache-2.0
#include "ctdiam/body.hpp"
#include "ctdiam/error.hpp"

#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace ctdiam;
using namespace ctdiam::test;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

// All alpha in the bounding box [0, k * max]^N with reference gauge <= k.
std::set<Exponent> lattice_oracle(const ConvexBody& body, int k, int box) {
  std::set<Exponent> out;
  std::vector<int> e(static_cast<std::size_t>(body.dim()), 0);
  while (true) {
    const Exponent a(e);
    if (reference_gauge(body, a) <= k) out.insert(a);
    std::size_t d = 0;
    while (d < e.size() && e[d] == box) e[d++] = 0;
    if (d == e.size()) break;
    ++e[d];
  }
  return out;
}

long binom(long n, long r) {
  long b = 1;
  for (long i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  return b;
}

}  // namespace

TEST_SUITE("body") {
  TEST_CASE("validation accepts the simplex and the square") {
    CHECK(body_from(2, {{{1, 1}, 1}}).dim() == 2);
    CHECK(unit_square().halfspaces().size() == 2);
  }

  TEST_CASE("validation errors and their order") {
    CHECK(code_of([] { body_from(2, {{{1, -1}, 1}, {{-1, 1}, 1}}); }) == ErrorCode::Unbounded);
    CHECK(code_of([] { body_from(2, {{{1, 1}, 0}}); }) == ErrorCode::NonpositiveOffset);
    CHECK(code_of([] { body_from(2, {{{2, 1}, 1}}); }) == ErrorCode::SimplexNotContained);
    // b <= 0 is reported before containment, containment before boundedness.
    CHECK(code_of([] { body_from(2, {{{2, 1}, 1}, {{1, 1}, -1}}); }) == ErrorCode::NonpositiveOffset);
    CHECK(code_of([] { body_from(2, {{{2, -1}, 1}}); }) == ErrorCode::SimplexNotContained);
    CHECK(code_of([] { ConvexBody::validate(2, {Halfspace{rational_ones(3), Rational(1)}}); }) ==
          ErrorCode::DimensionMismatch);
    CHECK(code_of([] { ConvexBody::validate(2, {}); }) == ErrorCode::Unbounded);
  }

  TEST_CASE("unbounded error names the direction") {
    try {
      body_from(2, {{{1, -1}, 1}, {{-1, 1}, 1}});
      FAIL("expected Unbounded");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("(1,1)") != std::string::npos);
    }
  }

  TEST_CASE("gauge examples") {
    CHECK(ConvexBody::simplex(2).gauge(Exponent{1, 1}) == Rational(2));
    CHECK(unit_square().gauge(Exponent{3, 2}) == Rational(3));
    CHECK(kite().gauge(Exponent{1, 1}) == Rational(3, 2));
    CHECK(kite().gauge(Exponent{0, 0}) == Rational(0));
  }

  TEST_CASE("gauge laws on random exponents") {
    std::mt19937_64 rng(11);
    for (const auto& body : {ConvexBody::simplex(3), ConvexBody::box({1, 2, 3}),
                             body_from(3, {{{1, 2, 0}, 2}, {{Rational(1, 3), 0, 1}, 1}, {{1, 1, 1}, 3}})}) {
      for (int t = 0; t < 200; ++t) {
        const auto a = random_exponent(rng, 3, 6);
        const auto b = random_exponent(rng, 3, 6);
        const int j = 1 + t % 10;
        CHECK(body.gauge(j * a) == j * body.gauge(a));
        CHECK(body.gauge(a + b) <= body.gauge(a) + body.gauge(b));
        CHECK(body.gauge(a) <= Rational(a.total_degree()));
        CHECK(body.gauge(a) == reference_gauge(body, a));
      }
    }
  }

  TEST_CASE("enumeration examples") {
    const auto s = enumerate_lattice(ConvexBody::simplex(2), 2);
    CHECK(std::set<Exponent>(s.begin(), s.end()) ==
          std::set<Exponent>{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}});
    CHECK(enumerate_lattice(unit_square(), 1) == std::vector<Exponent>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    const auto kt = enumerate_lattice(kite(), 1);
    CHECK(std::set<Exponent>(kt.begin(), kt.end()) == std::set<Exponent>{{0, 0}, {1, 0}, {0, 1}});
  }

  TEST_CASE("enumeration matches a box scan and is nested") {
    for (const auto& body : {ConvexBody::simplex(2), unit_square(), kite(), wedge(), ConvexBody::box({2, 1, 1})}) {
      for (int k = 1; k <= 5; ++k) {
        const auto got = enumerate_lattice(body, k);
        CHECK(std::set<Exponent>(got.begin(), got.end()) == lattice_oracle(body, k, 2 * k));
        CHECK(std::set<Exponent>(got.begin(), got.end()).size() == got.size());
        const auto prev = enumerate_lattice(body, k - 1);
        for (const auto& a : prev) CHECK(std::find(got.begin(), got.end(), a) != got.end());
      }
    }
  }

  TEST_CASE("counts examples") {
    auto c = counts(ConvexBody::simplex(2), 2);
    CHECK(c.M == 6);
    CHECK(c.h == 3);
    CHECK(c.L == 8);
    c = counts(unit_square(), 1);
    CHECK(c.M == 4);
    CHECK(c.h == 3);
    CHECK(c.L == 4);
    c = counts(ConvexBody::simplex(1), 2);
    CHECK(c.M == 3);
    CHECK(c.h == 1);
    CHECK(c.L == 3);
  }

  TEST_CASE("simplex counts follow the binomial closed form") {
    for (int n = 1; n <= 3; ++n) {
      const auto body = ConvexBody::simplex(n);
      for (int k = 1; k <= 10; ++k) {
        const auto c = counts(body, k);
        CHECK(c.M == binom(k + n, n));
        // Each coordinate sums to binom(k + n, n + 1) over the simplex lattice.
        CHECK(c.L == n * binom(k + n, n + 1));
        CHECK(c.h == binom(k + n - 1, n - 1));
      }
    }
  }

  TEST_CASE("normalization constant") {
    CHECK(normalization_A(ConvexBody::simplex(1)) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(std::abs(normalization_A(ConvexBody::simplex(2)) - 2.0 / 3.0) < 1e-3);
    CHECK(normalization_A(unit_square()) == doctest::Approx(1.0).epsilon(1e-9));
    // Triangle with vertices (0,0), (2,0), (0,1): centroid (2/3, 1/3).
    CHECK(std::abs(normalization_A(wedge()) - 1.0) < 1e-3);
    // Error shrinks under refinement.
    const double coarse = std::abs(normalization_A(ConvexBody::simplex(2), {1.0 / 8, 4}) - 2.0 / 3.0);
    const double fine = std::abs(normalization_A(ConvexBody::simplex(2), {1.0 / 32, 32}) - 2.0 / 3.0);
    CHECK(fine <= coarse);
  }

  TEST_CASE("dagger diagnostics") {
    const auto s = check_dagger(ConvexBody::simplex(2), 4);
    CHECK(s.verdict == DaggerVerdict::HoldsSimplex);
    CHECK(s.irredundant_halfspaces == 1);

    const auto sq = check_dagger(unit_square(), 1);
    CHECK(sq.verdict == DaggerVerdict::Violated);
    REQUIRE(!sq.witness_pairs.empty());
    CHECK(sq.witness_pairs.front() == std::pair<Exponent, Exponent>{{0, 1}, {1, 0}});
    for (const auto& [a, b] : sq.witness_pairs) {
      CHECK(a != b);
      CHECK(unit_square().gauge(a) == unit_square().gauge(b));
    }

    // x <= 2 is implied by x + 2y <= 2, leaving a single facet.
    const auto w = check_dagger(wedge(), 2);
    CHECK(w.verdict == DaggerVerdict::HoldsSimplex);
    CHECK(w.irredundant_halfspaces == 1);
    CHECK(std::find(w.witness_pairs.begin(), w.witness_pairs.end(),
                    std::pair<Exponent, Exponent>{{0, 1}, {2, 0}}) != w.witness_pairs.end());

    const auto generic = body_from(2, {{{1, Rational(3, 7)}, 1}, {{Rational(5, 11), Rational(9, 10)}, 1}});
    const auto lattice = lattice_oracle(generic, 3, 6);
    std::set<Rational> gauges;
    for (const auto& a : lattice) gauges.insert(reference_gauge(generic, a));
    REQUIRE(gauges.size() == lattice.size());
    CHECK(check_dagger(generic, 3).verdict == DaggerVerdict::HoldsInjectiveGauge);
    CHECK(check_dagger(unit_square(), 0).verdict == DaggerVerdict::Unknown);
  }
}
