// SPDX-License-Identifier: Apache-2.0
#include "ctdiam/leja.hpp"

#include "ctdiam/error.hpp"
#include "ctdiam/order.hpp"
#include "ctdiam/vdm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ctdiam {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kTieTolerance = 1e-12;

// Lowest index whose score is within the tie tolerance of the maximum.
Eigen::Index argmax_lowest(const Eigen::VectorXd& score, const std::vector<bool>& taken) {
  double best = kNegInf;
  for (Eigen::Index j = 0; j < score.size(); ++j)
    if (!taken[static_cast<std::size_t>(j)]) best = std::max(best, score(j));
  for (Eigen::Index j = 0; j < score.size(); ++j) {
    if (taken[static_cast<std::size_t>(j)]) continue;
    if (best == kNegInf || score(j) >= best - kTieTolerance * std::max(1.0, std::abs(best))) return j;
  }
  return -1;
}

}  // namespace

LejaSequence leja_sequence(const Mesh& mesh, const ConvexBody& body, std::size_t count) {
  if (mesh.dim() != body.dim()) throw Error(ErrorCode::DimensionMismatch, "mesh dimension does not match body");
  if (mesh.positive_weight_count() == 0) throw Error(ErrorCode::InsufficientSupport, "weight vanishes on the mesh");
  if (static_cast<Eigen::Index>(count) > mesh.size()) {
    throw Error(ErrorCode::InsufficientSupport, "requested " + std::to_string(count) + " Leja points from a mesh of " +
                                                    std::to_string(mesh.size()));
  }

  LejaSequence seq;
  seq.basis = monomial_sequence(body, count);
  for (const auto& alpha : seq.basis) seq.k.push_back(c_degree(body, alpha));
  seq.log_L.push_back(0.0);
  if (count == 0) return seq;

  const Eigen::MatrixXcd Z = monomial_matrix(mesh, seq.basis);
  const Eigen::VectorXd& lw = mesh.log_weights();
  std::vector<bool> taken(static_cast<std::size_t>(mesh.size()), false);

  // log|det| of the unweighted matrix on the chosen points; weights enter
  // as k(s) * sum log w, rebuilt whenever k changes.
  double log_det = 0.0;
  double sum_lw = 0.0;

  const Eigen::Index first = argmax_lowest(lw, taken);
  seq.indices.push_back(first);
  taken[static_cast<std::size_t>(first)] = true;
  log_det = std::log(std::abs(Z(0, first)));
  sum_lw = lw(first);
  seq.log_L.push_back(seq.k[0] * sum_lw + log_det);

  for (std::size_t s = 1; s < count; ++s) {
    const auto n = static_cast<Eigen::Index>(s);
    const int k = seq.k[s];
    Eigen::MatrixXcd A(n, n);
    Eigen::VectorXcd next_row(n);
    for (Eigen::Index l = 0; l < n; ++l) {
      A.col(l) = Z.col(seq.indices[static_cast<std::size_t>(l)]).head(n);
      next_row(l) = Z(n, seq.indices[static_cast<std::size_t>(l)]);
    }
    // |VDM(zeta_1..zeta_s, eta)| = |VDM(zeta_1..zeta_s)| w(eta)^k |z^alpha(s+1)(eta) - r . u(eta)|
    const Eigen::VectorXcd r = A.transpose().partialPivLu().solve(next_row);
    const Eigen::RowVectorXcd resid = Z.row(n) - r.transpose() * Z.topRows(n);
    Eigen::VectorXd score(mesh.size());
    for (Eigen::Index j = 0; j < mesh.size(); ++j) score(j) = k * lw(j) + std::log(std::abs(resid(j)));

    const Eigen::Index pick = argmax_lowest(score, taken);
    seq.indices.push_back(pick);
    taken[static_cast<std::size_t>(pick)] = true;
    sum_lw += lw(pick);
    if (k != seq.k[s - 1]) {
      log_det = log_abs_det(Z.topRows(n + 1)(Eigen::all, seq.indices));
    } else {
      log_det += std::log(std::abs(resid(pick)));
    }
    seq.log_L.push_back(k * sum_lw + log_det);
  }
  return seq;
}

LejaDiameter leja_diameter(const Mesh& mesh, const ConvexBody& body, int k_max) {
  if (k_max < 1) throw Error(ErrorCode::InvalidArgument, "k_max must be at least 1");
  const auto top = counts(body, k_max);
  if (mesh.size() < top.M) {
    throw Error(ErrorCode::InsufficientSupport,
                "mesh has " + std::to_string(mesh.size()) + " points but M_k = " + std::to_string(top.M));
  }
  LejaDiameter out;
  out.heuristic = !mesh.is_unweighted();
  out.sequence = leja_sequence(mesh, body, static_cast<std::size_t>(top.M));
  for (int k = 1; k <= k_max; ++k) {
    const auto c = counts(body, k);
    LejaDiameterRow row;
    row.k = k;
    row.M = c.M;
    row.L = c.L;
    row.log_L = out.sequence.log_L[static_cast<std::size_t>(c.M)];
    row.value = std::exp(row.log_L / static_cast<double>(c.L));
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace ctdiam
