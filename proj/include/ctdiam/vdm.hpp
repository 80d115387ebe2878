// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ctdiam/body.hpp"
#include "ctdiam/mesh.hpp"

#include <Eigen/Core>
#include <Eigen/LU>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ctdiam {

/// log|det m| from an LU factorization with partial pivoting; -inf when a
/// pivot is exactly zero. The sign or phase is discarded.
template <typename Derived>
double log_abs_det(const Eigen::MatrixBase<Derived>& m) {
  using std::abs;
  using std::log;
  if (m.rows() != m.cols()) throw std::invalid_argument("log_abs_det needs a square matrix");
  if (m.rows() == 0) return 0.0;
  using Plain = typename Derived::PlainObject;
  const Eigen::PartialPivLU<Plain> lu(m.eval());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double p = static_cast<double>(abs(lu.matrixLU()(i, i)));
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    acc += log(p);
  }
  return acc;
}

struct VdmValue {
  double log_abs = -std::numeric_limits<double>::infinity();
  std::vector<Eigen::Index> point_indices;
  int k = 0;
  int s = 0;
  /// False when the value comes from a heuristic search.
  bool exact = true;
};

/// First s exponents of kC in body-graded order.
std::vector<Exponent> vandermonde_basis(const ConvexBody& body, int k, std::size_t s);

/// log|VDM| of the weighted s x s matrix [w(zeta_l)^k zeta_l^alpha_j] over
/// the given mesh points. -inf on repeated points or a vanishing weight.
/// Throws TooManyPoints if s > M_k.
VdmValue vandermonde_det(const Mesh& mesh, const ConvexBody& body, int k,
                         const std::vector<Eigen::Index>& point_indices);

enum class VdmSearch { Auto, BruteForce, Greedy };

struct VdmOptions {
  VdmSearch search = VdmSearch::Auto;
  /// Largest number of subsets brute force may visit; Auto falls back to
  /// greedy above it.
  double subset_cap = 2e6;
  int restarts = 4;
  /// Zero keeps ties between equal-weight starting points in index order;
  /// any other value shuffles them deterministically.
  std::uint64_t seed = 0;
  int max_exchanges = 10000;
  int workers = 1;
};

/// V_k^w(mesh, M_k): the largest |VDM| over M_k-point subsets of the mesh.
/// Throws InsufficientSupport when fewer than M_k points carry weight.
VdmValue max_vdm(const Mesh& mesh, const ConvexBody& body, int k, const VdmOptions& options = {});

/// Mesh indices of the maximizing subset, in increasing order.
std::vector<Eigen::Index> fekete_points(const Mesh& mesh, const ConvexBody& body, int k,
                                        const VdmOptions& options = {});

/// binomial(n, r) as a double, +inf on overflow.
double binomial(long n, long r);

}  // namespace ctdiam
