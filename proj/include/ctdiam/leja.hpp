// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ctdiam/body.hpp"
#include "ctdiam/mesh.hpp"

#include <vector>

namespace ctdiam {

/// Greedy Vandermonde maximizers taken one mesh point at a time.
struct LejaSequence {
  std::vector<Eigen::Index> indices;  // zeta_1, zeta_2, ...
  std::vector<Exponent> basis;        // alpha(1), alpha(2), ... in body-graded order
  /// k(s) = deg_C(alpha(s)); the constant monomial has C-degree 0.
  std::vector<int> k;
  /// log_L[s] = log|VDM(zeta_1..zeta_s)| at k = k(s); log_L[0] = 0.
  std::vector<double> log_L;
};

/// Ties in |VDM| within 1e-12 (relative) go to the lowest mesh index; the
/// first point is the argmax of the weight. Throws InsufficientSupport.
LejaSequence leja_sequence(const Mesh& mesh, const ConvexBody& body, std::size_t count);

struct LejaDiameterRow {
  int k = 0;
  long M = 0;
  long L = 0;
  double log_L = 0.0;  // log L_{M_k}
  double value = 0.0;  // (L_{M_k})^{1/L_k}
};

struct LejaDiameter {
  LejaSequence sequence;
  std::vector<LejaDiameterRow> rows;
  /// Leja convergence is only known for unweighted meshes.
  bool heuristic = false;
};

LejaDiameter leja_diameter(const Mesh& mesh, const ConvexBody& body, int k_max);

}  // namespace ctdiam
