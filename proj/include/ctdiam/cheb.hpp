// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ctdiam/body.hpp"
#include "ctdiam/mesh.hpp"
#include "ctdiam/order.hpp"
#include "ctdiam/simplex.hpp"

#include <string>
#include <vector>

namespace ctdiam {

struct ChebOptions {
  /// Sides of the regular polygon replacing |.| on complex meshes.
  int polygon_sides = 32;
  /// The min-max duals are massively degenerate (all but one right-hand side
  /// is zero); perturbed Dantzig pricing keeps the pivot count small.
  SimplexOptions lp{.rule = PivotRule::Dantzig, .perturbation = 1e-7};
  int workers = 1;
};

/// Solution of one monic min-max problem
///   min over p in M_k(alpha) of max_{zeta in mesh} w(zeta)^k |p(zeta)|.
struct ChebyshevRecord {
  int k = 0;
  Exponent alpha;
  OrderKind ordering = OrderKind::Grevlex;
  /// log of the weighted sup norm of `coefficients` on the mesh; this is
  /// k log T_k up to the bracket below.
  double log_T_pow_k = 0.0;
  Polynomial coefficients;
  /// Certified bracket (log scale) around the exact mesh min-max.
  double bracket_low = 0.0;
  double bracket_high = 0.0;
  /// 1/cos(pi/m) for complex meshes, 1 on the exact real path.
  double relaxation_gap = 1.0;
  bool exact = true;
  long lp_iterations = 0;

  [[nodiscard]] double log_T() const { return log_T_pow_k / k; }
};

/// All beta in kC cap Z^N strictly below alpha in the given order.
std::vector<Exponent> lower_monomials(const ConvexBody& body, int k, const Exponent& alpha, OrderKind ordering);

ChebyshevRecord chebyshev_constant(const Mesh& mesh, const ConvexBody& body, int k, const Exponent& alpha,
                                   OrderKind ordering, const ChebOptions& options = {});

/// Lattice point approximating k * theta: componentwise rounding, then
/// decrementing the coordinates with the largest fractional parts until the
/// gauge is at most k.
Exponent lattice_direction(const ConvexBody& body, const RationalVector& theta, int k);

struct DirectionalEstimate {
  OrderKind ordering = OrderKind::Grevlex;
  std::vector<int> ks;
  std::vector<Exponent> alphas;
  std::vector<double> T;  // T_k = exp(log_T_pow_k / k)
  double value = 0.0;     // last iterate
  double error = 0.0;     // |T_last - T_previous|, +inf with a single k
  bool limit_guaranteed = true;
  std::string note;
};

struct DirectionalResult {
  RationalVector theta;
  DirectionalEstimate grevlex;
  DirectionalEstimate cgrevlex;
};

/// Finite-k estimates of the directional Chebyshev constant for both
/// orders. Throws ThetaNotInterior unless every theta_j > 0 and r(theta) < 1.
DirectionalResult directional_constant(const Mesh& mesh, const ConvexBody& body, const RationalVector& theta,
                                       const std::vector<int>& schedule, const ChebOptions& options = {});

struct TransformRow {
  Exponent alpha;
  Eigen::VectorXd theta;  // alpha / k
  Rational gauge;
  ChebyshevRecord grevlex;
  ChebyshevRecord cgrevlex;
  bool failed = false;
  std::string error;
};

struct TransformTable {
  int k = 0;
  std::vector<TransformRow> rows;  // body-graded order of alpha
};

TransformTable transform_grid(const Mesh& mesh, const ConvexBody& body, int k, const ChebOptions& options = {});

}  // namespace ctdiam
