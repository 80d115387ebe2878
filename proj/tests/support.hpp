// SPDX-License-Identifier: Apache-2.0
#pragma once

// Small fixtures and independent reference computations for the tests.

#include "ctdiam/body.hpp"
#include "ctdiam/mesh.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace ctdiam::test {

inline Mesh line_mesh(const std::vector<Complex>& z, std::vector<double> log_weights = {}) {
  ExplicitSpec s;
  s.points.resize(1, static_cast<Eigen::Index>(z.size()));
  for (std::size_t i = 0; i < z.size(); ++i) s.points(0, static_cast<Eigen::Index>(i)) = z[i];
  s.log_weights = std::move(log_weights);
  return build_mesh(MeshSpec{s});
}

inline Mesh circle_mesh(int count, double radius = 1.0) {
  return build_mesh(MeshSpec{CircleSpec{{0.0, 0.0}, radius, count}});
}

inline Mesh interval_mesh(int count, Spacing spacing = Spacing::ChebyshevNodes, double a = -1.0, double b = 1.0) {
  return build_mesh(MeshSpec{IntervalSpec{a, b, count, spacing}});
}

inline Mesh torus_mesh(int n1, int n2) {
  return build_mesh(MeshSpec{TorusSpec{{CircleSpec{{0, 0}, 1, n1}, CircleSpec{{0, 0}, 1, n2}}}});
}

inline ConvexBody unit_square() { return ConvexBody::box({1, 1}); }

inline ConvexBody body_from(int dim, const std::vector<std::pair<std::vector<Rational>, Rational>>& rows) {
  std::vector<Halfspace> hs;
  for (const auto& [a, b] : rows) {
    RationalVector v(dim);
    for (int j = 0; j < dim; ++j) v(j) = a[static_cast<std::size_t>(j)];
    hs.push_back({v, b});
  }
  return ConvexBody::validate(dim, hs);
}

// C = {x, y >= 0 : x + 2y <= 2, 2x + y <= 2}
inline ConvexBody kite() { return body_from(2, {{{1, 2}, 2}, {{2, 1}, 2}}); }

// C = {x, y >= 0 : x <= 2, x + 2y <= 2}
inline ConvexBody wedge() { return body_from(2, {{{1, 0}, 2}, {{1, 2}, 2}}); }

// log of prod_{i<j} |z_j - z_i|: the unweighted one-variable Vandermonde.
inline double log_vandermonde_product(const std::vector<Complex>& z) {
  double s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j) s += std::log(std::abs(z[j] - z[i]));
  return s;
}

// min over monic p of degree n of max_j |p(x_j)| for exactly n + 1 real
// nodes: 1 / sum_j 1/prod_{i != j}|x_j - x_i|.
inline double monic_minmax_at_nodes(const std::vector<double>& x) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    double p = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (i != j) p *= std::abs(x[j] - x[i]);
    s += 1.0 / p;
  }
  return 1.0 / s;
}

// The gauge recomputed from the halfspaces, independent of the cached
// integer rows inside ConvexBody.
inline Rational reference_gauge(const ConvexBody& body, const Exponent& alpha) {
  Rational g(0);
  for (const auto& h : body.halfspaces()) {
    Rational dot(0);
    for (int j = 0; j < alpha.dim(); ++j) dot += h.a(j) * alpha[j];
    const Rational r = dot / h.b;
    if (r > g) g = r;
  }
  return g;
}

inline Exponent random_exponent(std::mt19937_64& rng, int dim, int max_entry) {
  std::uniform_int_distribution<int> d(0, max_entry);
  std::vector<int> e(static_cast<std::size_t>(dim));
  for (auto& x : e) x = d(rng);
  return Exponent(std::move(e));
}

inline double log_factorial(long n) { return std::lgamma(static_cast<double>(n) + 1.0); }

}  // namespace ctdiam::test
