// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ctdiam/exponent.hpp"
#include "ctdiam/rational.hpp"

#include <utility>
#include <vector>

namespace ctdiam {

/// One constraint a.x <= b of an H-polytope.
struct Halfspace {
  RationalVector a;
  Rational b;
};

/// Convex body C = {x >= 0 : a_i.x <= b_i} in R^N_+ containing the unit
/// simplex. Instances only exist in validated form and are immutable.
class ConvexBody {
 public:
  /// Checks b_i > 0, Sigma in C (a_ij <= b_i) and boundedness (an exact LP
  /// maximizing sum x_j), in that order.
  static ConvexBody validate(int dim, std::vector<Halfspace> halfspaces);

  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] const std::vector<Halfspace>& halfspaces() const noexcept { return halfspaces_; }

  /// Minkowski gauge r(x) = max(0, max_i a_i.x / b_i), exact.
  [[nodiscard]] Rational gauge(const Exponent& alpha) const;
  [[nodiscard]] Rational gauge(const RationalVector& x) const;

  /// Exact maxima of each coordinate over C.
  [[nodiscard]] const RationalVector& coordinate_max() const noexcept { return coordinate_max_; }

  /// Rows a_i / b_i, so that x lies in rC iff ratios() * x <= r componentwise.
  [[nodiscard]] const RationalMatrix& ratios() const noexcept { return ratios_; }

  /// Unit simplex of dimension N.
  static ConvexBody simplex(int dim);
  /// Box prod_j [0, side_j] with integer sides >= 1.
  static ConvexBody box(const std::vector<int>& sides);

 private:
  ConvexBody() = default;

  int dim_ = 0;
  std::vector<Halfspace> halfspaces_;
  RationalMatrix ratios_;
  // Integer-scaled copy of ratios_: row i of ratios_ equals num_.row(i) / den_(i).
  std::vector<std::vector<Integer>> num_;
  std::vector<Integer> den_;
  RationalVector coordinate_max_;
};

inline Rational gauge(const ConvexBody& body, const Exponent& alpha) { return body.gauge(alpha); }

/// deg_C(z^alpha) = ceil(r(alpha)); the constant monomial has C-degree 0.
int c_degree(const ConvexBody& body, const Exponent& alpha);

/// All alpha in kC with integer entries, sorted increasingly by the
/// body-graded order (gauge, then grevlex).
std::vector<Exponent> enumerate_lattice(const ConvexBody& body, int k);

struct LatticeCounts {
  long M = 0;  // |kC cap Z^N|
  long h = 0;  // M_k - M_{k-1}, with M_0 = 1
  long L = 0;  // sum of ordinary total degrees over kC cap Z^N
};

LatticeCounts counts(const ConvexBody& body, int k);

struct QuadratureOptions {
  double spacing = 1.0 / 32.0;
  int boundary_subsamples = 32;  // per axis, inside cells cut by the boundary
};

/// Volume average of theta_1 + ... + theta_N over C by midpoint quadrature.
double normalization_A(const ConvexBody& body, const QuadratureOptions& options = {});

enum class DaggerVerdict { HoldsSimplex, HoldsInjectiveGauge, Violated, Unknown };

const char* to_string(DaggerVerdict verdict);

struct DaggerReport {
  DaggerVerdict verdict = DaggerVerdict::Unknown;
  /// Pairs (alpha, beta), alpha before beta in grevlex, with r(alpha) = r(beta).
  std::vector<std::pair<Exponent, Exponent>> witness_pairs;
  /// Number of halfspaces left after exact redundancy removal.
  int irredundant_halfspaces = 0;
};

/// Decides which sufficient criterion for leading-term stability applies.
/// Gauge injectivity is checked on the lattice points of k_max * C.
DaggerReport check_dagger(const ConvexBody& body, int k_max, std::size_t max_witnesses = 1000);

}  // namespace ctdiam
