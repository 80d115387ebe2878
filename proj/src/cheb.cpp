// SPDX-License-Identifier: Apache-2.0
#include "ctdiam/cheb.hpp"

#include "ctdiam/error.hpp"
#include "ctdiam/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace ctdiam {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_alpha(const ConvexBody& body, int k, const Exponent& alpha) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  if (alpha.dim() != body.dim()) throw Error(ErrorCode::DimensionMismatch, "exponent dimension does not match body");
  if (body.gauge(alpha) > Rational(k)) {
    throw Error(ErrorCode::InvalidArgument, "exponent " + alpha.to_string() + " lies outside " + std::to_string(k) + "C");
  }
}

}  // namespace

std::vector<Exponent> lower_monomials(const ConvexBody& body, int k, const Exponent& alpha, OrderKind ordering) {
  check_alpha(body, k, alpha);
  const auto order = MonomialOrder::make(ordering, body);
  std::vector<Exponent> lower;
  for (auto& beta : enumerate_lattice(body, k))
    if (order.less(beta, alpha)) lower.push_back(std::move(beta));
  return lower;
}

namespace {

ChebyshevRecord solve_min_max(const Mesh& mesh, int k, const Exponent& alpha, OrderKind ordering,
                              const std::vector<Exponent>& lower, const ChebOptions& options) {
  if (mesh.dim() != alpha.dim()) throw Error(ErrorCode::DimensionMismatch, "mesh dimension does not match body");
  if (mesh.positive_weight_count() == 0) throw Error(ErrorCode::DegenerateWeight, "weight vanishes on the mesh");

  ChebyshevRecord rec;
  rec.k = k;
  rec.alpha = alpha;
  rec.ordering = ordering;

  if (lower.empty()) {
    rec.coefficients = Polynomial::monomial(alpha);
    rec.log_T_pow_k = weighted_sup_norm(mesh, rec.coefficients, k);
    rec.bracket_low = rec.bracket_high = rec.log_T_pow_k;
    return rec;
  }

  // Active points and weights w^k, rescaled by the largest one.
  std::vector<Eigen::Index> active;
  double shift = kNegInf;
  for (Eigen::Index p = 0; p < mesh.size(); ++p) {
    const double lw = mesh.log_weights()(p);
    if (!std::isfinite(lw)) continue;
    active.push_back(p);
    shift = std::max(shift, k * lw);
  }
  std::vector<Exponent> exps;
  exps.reserve(lower.size() + 1);
  exps.push_back(alpha);
  exps.insert(exps.end(), lower.begin(), lower.end());
  const Eigen::MatrixXcd all = monomial_matrix(mesh, exps);

  const auto P = static_cast<Eigen::Index>(active.size());
  const auto nb = static_cast<Eigen::Index>(lower.size());
  Eigen::MatrixXcd E(nb + 1, P);
  for (Eigen::Index q = 0; q < P; ++q) {
    const Eigen::Index p = active[static_cast<std::size_t>(q)];
    E.col(q) = std::exp(k * mesh.log_weights()(p) - shift) * all.col(p);
  }

  // Rotations e^{i phi} approximating |v| by max_phi Re(e^{i phi} v). Two
  // opposite phases are exact for real data with real coefficients.
  const bool real = mesh.is_real();
  const int sides = real ? 2 : options.polygon_sides;
  if (sides < 3 && !real) throw Error(ErrorCode::InvalidArgument, "polygon needs at least 3 sides");
  const Eigen::Index nvars = real ? nb : 2 * nb;
  const Eigen::Index ncols = P * sides;

  // Dual of  min t  s.t.  c_i + g_i.x <= t:
  //   max c.y  s.t.  sum y = 1,  G y = 0,  y >= 0.
  Eigen::MatrixXd A(nvars + 1, ncols);
  Eigen::VectorXd c(ncols);
  for (int s = 0; s < sides; ++s) {
    const double phi = 2.0 * std::numbers::pi * s / sides;
    const Complex rot = real ? Complex(s == 0 ? 1.0 : -1.0, 0.0) : Complex(std::cos(phi), std::sin(phi));
    for (Eigen::Index q = 0; q < P; ++q) {
      const Eigen::Index col = static_cast<Eigen::Index>(s) * P + q;
      c(col) = (rot * E(0, q)).real();
      A(0, col) = 1.0;
      for (Eigen::Index r = 0; r < nb; ++r) {
        const Complex g = rot * E(r + 1, q);
        A(1 + r, col) = g.real();
        if (!real) A(1 + nb + r, col) = -g.imag();
      }
    }
  }
  Eigen::VectorXd row_scale = Eigen::VectorXd::Ones(nvars + 1);
  for (Eigen::Index r = 1; r <= nvars; ++r) {
    const double mx = A.row(r).cwiseAbs().maxCoeff();
    if (mx > 0.0) {
      row_scale(r) = 1.0 / mx;
      A.row(r) *= row_scale(r);
    }
  }
  Eigen::VectorXd b = Eigen::VectorXd::Zero(nvars + 1);
  b(0) = 1.0;

  const auto lp = minimize_standard_form(A, b, (-c).eval(), options.lp);
  rec.lp_iterations = lp.iterations;
  if (lp.status != LpStatus::Optimal) {
    throw Error(ErrorCode::SolverFailure, "min-max LP for alpha=" + alpha.to_string() + " ended with status " +
                                              std::to_string(static_cast<int>(lp.status)));
  }

  Polynomial poly = Polynomial::monomial(alpha);
  for (Eigen::Index r = 0; r < nb; ++r) {
    const double re = lp.duals(1 + r) * row_scale(1 + r);
    const double im = real ? 0.0 : lp.duals(1 + nb + r) * row_scale(1 + nb + r);
    poly.add_term(lower[static_cast<std::size_t>(r)], Complex(re, im));
  }
  rec.coefficients = std::move(poly);
  rec.log_T_pow_k = weighted_sup_norm(mesh, rec.coefficients, k);

  const double polygon_value = -lp.objective;
  rec.bracket_low = polygon_value > 0.0 ? std::log(polygon_value) + shift : kNegInf;
  if (real) {
    rec.relaxation_gap = 1.0;
    rec.exact = true;
    rec.bracket_high = rec.log_T_pow_k;
  } else {
    rec.relaxation_gap = 1.0 / std::cos(std::numbers::pi / sides);
    rec.exact = false;
    rec.bracket_high = std::min(rec.log_T_pow_k, rec.bracket_low + std::log(rec.relaxation_gap));
  }
  return rec;
}

}  // namespace

ChebyshevRecord chebyshev_constant(const Mesh& mesh, const ConvexBody& body, int k, const Exponent& alpha,
                                   OrderKind ordering, const ChebOptions& options) {
  const auto lower = lower_monomials(body, k, alpha, ordering);
  return solve_min_max(mesh, k, alpha, ordering, lower, options);
}

Exponent lattice_direction(const ConvexBody& body, const RationalVector& theta, int k) {
  if (theta.size() != body.dim()) throw Error(ErrorCode::DimensionMismatch, "direction dimension does not match body");
  const int n = body.dim();
  std::vector<int> entries(static_cast<std::size_t>(n));
  std::vector<Rational> frac(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const Rational v = theta(j) * k;
    const Integer fl = floor(v);
    frac[static_cast<std::size_t>(j)] = v - Rational(fl);
    entries[static_cast<std::size_t>(j)] = static_cast<int>(floor(Rational(v + Rational(1, 2))));
  }
  std::vector<int> repair(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) repair[static_cast<std::size_t>(j)] = j;
  std::stable_sort(repair.begin(), repair.end(),
                   [&](int a, int b) { return frac[static_cast<std::size_t>(a)] > frac[static_cast<std::size_t>(b)]; });
  std::size_t next = 0;
  while (body.gauge(Exponent(entries)) > Rational(k)) {
    if (next < repair.size()) {
      auto& e = entries[static_cast<std::size_t>(repair[next++])];
      if (e > 0) --e;
    } else {
      *std::max_element(entries.begin(), entries.end()) -= 1;
    }
  }
  return Exponent(std::move(entries));
}

DirectionalResult directional_constant(const Mesh& mesh, const ConvexBody& body, const RationalVector& theta,
                                       const std::vector<int>& schedule, const ChebOptions& options) {
  if (theta.size() != body.dim()) throw Error(ErrorCode::DimensionMismatch, "direction dimension does not match body");
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    if (theta(j) <= 0) throw Error(ErrorCode::ThetaNotInterior, "theta has a coordinate on the boundary x_j = 0");
  }
  if (body.gauge(theta) >= 1) throw Error(ErrorCode::ThetaNotInterior, "theta has gauge >= 1");
  if (schedule.empty()) throw Error(ErrorCode::InvalidArgument, "empty k schedule");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] < 1 || (i && schedule[i] <= schedule[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "k schedule must be positive and strictly increasing");
    }
  }

  DirectionalResult result;
  result.theta = theta;
  result.grevlex.ordering = OrderKind::Grevlex;
  result.cgrevlex.ordering = OrderKind::CGrevlex;
  for (int k : schedule) {
    const Exponent alpha = lattice_direction(body, theta, k);
    for (auto* est : {&result.grevlex, &result.cgrevlex}) {
      const auto rec = chebyshev_constant(mesh, body, k, alpha, est->ordering, options);
      est->ks.push_back(k);
      est->alphas.push_back(alpha);
      est->T.push_back(std::exp(rec.log_T()));
    }
  }
  for (auto* est : {&result.grevlex, &result.cgrevlex}) {
    est->value = est->T.back();
    est->error = est->T.size() > 1 ? std::abs(est->T.back() - est->T[est->T.size() - 2])
                                   : std::numeric_limits<double>::infinity();
  }
  const auto dagger = check_dagger(body, schedule.back());
  if (dagger.verdict == DaggerVerdict::Violated || dagger.verdict == DaggerVerdict::Unknown) {
    result.cgrevlex.limit_guaranteed = false;
    result.cgrevlex.note = "limit not guaranteed: leading-term stability not established for this body";
  }
  return result;
}

TransformTable transform_grid(const Mesh& mesh, const ConvexBody& body, int k, const ChebOptions& options) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  if (mesh.dim() != body.dim()) throw Error(ErrorCode::DimensionMismatch, "mesh dimension does not match body");
  const auto lattice = enumerate_lattice(body, k);
  TransformTable table;
  table.k = k;
  table.rows.resize(lattice.size());

  ChebOptions inner = options;
  inner.workers = 1;
  parallel_for(lattice.size(), options.workers, [&](std::size_t i) {
    TransformRow& row = table.rows[i];
    row.alpha = lattice[i];
    row.gauge = body.gauge(row.alpha);
    row.theta = Eigen::VectorXd(row.alpha.dim());
    for (int j = 0; j < row.alpha.dim(); ++j) row.theta(j) = static_cast<double>(row.alpha[j]) / k;
    try {
      const auto lower_g = lower_monomials(body, k, row.alpha, OrderKind::Grevlex);
      const auto lower_c = lower_monomials(body, k, row.alpha, OrderKind::CGrevlex);
      row.grevlex = solve_min_max(mesh, k, row.alpha, OrderKind::Grevlex, lower_g, inner);
      if (lower_c == lower_g) {
        row.cgrevlex = row.grevlex;
        row.cgrevlex.ordering = OrderKind::CGrevlex;
      } else {
        row.cgrevlex = solve_min_max(mesh, k, row.alpha, OrderKind::CGrevlex, lower_c, inner);
      }
    } catch (const Error& e) {
      row.failed = true;
      row.error = e.what();
    }
  });
  return table;
}

}  // namespace ctdiam
