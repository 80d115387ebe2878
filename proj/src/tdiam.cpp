// SPDX-License-Identifier: Apache-2.0
#include "ctdiam/tdiam.hpp"

#include "ctdiam/error.hpp"
#include "ctdiam/leja.hpp"

#include <cmath>
#include <limits>

namespace ctdiam {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Mean of log T_k = log_T_pow_k / k over the table, -inf if any vanishes.
double mean_log_T(const TransformTable& table, OrderKind ordering) {
  double sum = 0.0;
  for (const auto& row : table.rows) {
    if (row.failed) throw Error(ErrorCode::SolverFailure, "transform row " + row.alpha.to_string() + ": " + row.error);
    const auto& rec = ordering == OrderKind::Grevlex ? row.grevlex : row.cgrevlex;
    sum += rec.log_T();
  }
  return sum / static_cast<double>(table.rows.size());
}

bool sandwich_holds(double sum_low, double log_V, double log_M_factorial, double sum_high, double slack) {
  return sum_low <= log_V + slack && log_V <= log_M_factorial + sum_high + slack;
}

}  // namespace

double delta_k(const Mesh& mesh, const ConvexBody& body, int k, const VdmOptions& options) {
  const auto c = counts(body, k);
  return std::exp(max_vdm(mesh, body, k, options).log_abs / static_cast<double>(c.L));
}

double D_estimate_vdm(const Mesh& mesh, const ConvexBody& body, int k, const VdmOptions& options) {
  const auto c = counts(body, k);
  return std::exp(max_vdm(mesh, body, k, options).log_abs / (static_cast<double>(k) * static_cast<double>(c.M)));
}

double D_estimate_transform(const Mesh& mesh, const ConvexBody& body, int k, OrderKind ordering,
                            const ChebOptions& options) {
  return std::exp(mean_log_T(transform_grid(mesh, body, k, options), ordering));
}

double interior_cell_average(const ConvexBody& body, const TransformTable& table, OrderKind ordering) {
  const Rational half(1, 2);
  double sum = 0.0;
  long cells = 0;
  for (const auto& row : table.rows) {
    bool inside = true;
    for (int j = 0; j < row.alpha.dim() && inside; ++j) inside = row.alpha[j] >= 1;
    for (const auto& hs : body.halfspaces()) {
      if (!inside) break;
      Rational reach(0);
      for (int j = 0; j < row.alpha.dim(); ++j) reach += hs.a(j) * row.alpha[j] + abs(hs.a(j)) * half;
      inside = reach < hs.b * table.k;
    }
    if (!inside) continue;
    if (row.failed) throw Error(ErrorCode::SolverFailure, "transform row " + row.alpha.to_string() + ": " + row.error);
    sum += (ordering == OrderKind::Grevlex ? row.grevlex : row.cgrevlex).log_T();
    ++cells;
  }
  return cells ? sum / static_cast<double>(cells) : std::numeric_limits<double>::quiet_NaN();
}

FinalDelta final_delta(const Mesh& mesh, const ConvexBody& body, int k, const VdmOptions& options,
                       const QuadratureOptions& quadrature) {
  FinalDelta out;
  out.D = D_estimate_vdm(mesh, body, k, options);
  out.A_N = normalization_A(body, quadrature);
  out.delta = std::pow(out.D, 1.0 / out.A_N);
  return out;
}

DiameterReport build_report(const Mesh& mesh, const ConvexBody& body, int k_max, const TdiamOptions& options) {
  if (k_max < 1) throw Error(ErrorCode::InvalidArgument, "k_max must be at least 1");
  if (mesh.dim() != body.dim()) throw Error(ErrorCode::DimensionMismatch, "mesh dimension does not match body");
  if (mesh.positive_weight_count() == 0) throw Error(ErrorCode::InsufficientSupport, "weight vanishes on the mesh");

  DiameterReport report;
  report.A_N = normalization_A(body, options.quadrature);
  report.dagger = check_dagger(body, k_max);

  std::vector<double> leja_values;
  if (options.leja) {
    try {
      const auto leja = leja_diameter(mesh, body, k_max);
      report.leja_heuristic = leja.heuristic;
      for (const auto& r : leja.rows) leja_values.push_back(r.value);
    } catch (const Error& e) {
      report.leja_error = e.what();
    }
  }

  for (int k = 1; k <= k_max; ++k) {
    DiameterRow row;
    row.k = k;
    const auto c = counts(body, k);
    row.M = c.M;
    row.h = c.h;
    row.L = c.L;
    row.log_M_factorial = std::lgamma(static_cast<double>(c.M) + 1.0);
    if (static_cast<std::size_t>(k) <= leja_values.size()) row.leja_value = leja_values[static_cast<std::size_t>(k - 1)];
    TransformTable table;
    try {
      const auto V = max_vdm(mesh, body, k, options.vdm);
      row.log_V = V.log_abs;
      row.exact = V.exact;
      row.delta_k = std::exp(row.log_V / static_cast<double>(c.L));
      const double kM = static_cast<double>(k) * static_cast<double>(c.M);
      row.D_vdm = std::exp(row.log_V / kM);

      table = transform_grid(mesh, body, k, options.cheb);
      const double log_D_C = mean_log_T(table, OrderKind::CGrevlex);
      row.D_transform_C = std::exp(log_D_C);
      row.D_transform_grevlex = std::exp(mean_log_T(table, OrderKind::Grevlex));
      if (options.cell_average) row.cell_average_C = interior_cell_average(body, table, OrderKind::CGrevlex);

      double low_g = 0.0, high_g = 0.0;
      for (const auto& t : table.rows) {
        row.sum_low_C += t.cgrevlex.bracket_low;
        row.sum_high_C += t.cgrevlex.bracket_high;
        low_g += t.grevlex.bracket_low;
        high_g += t.grevlex.bracket_high;
      }
      const double slack = options.slack * static_cast<double>(c.M);
      row.sandwich_C = sandwich_holds(row.sum_low_C, row.log_V, row.log_M_factorial, row.sum_high_C, slack);
      row.sandwich_grevlex = sandwich_holds(low_g, row.log_V, row.log_M_factorial, high_g, slack);
      const double gap = std::abs(row.log_V / kM - log_D_C);
      row.routes_agree = (row.log_V == kNegInf && log_D_C == kNegInf) ||
                         gap <= row.log_M_factorial / kM + options.route_slack;
    } catch (const Error& e) {
      row.error = e.what();
    }
    report.rows.push_back(std::move(row));
    report.transforms.push_back(std::move(table));
  }

  const auto& last = report.rows.back();
  report.final_delta = last.error.empty() ? std::pow(last.D_vdm, 1.0 / report.A_N)
                                          : std::numeric_limits<double>::quiet_NaN();
  return report;
}

}  // namespace ctdiam
