// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ctdiam/body.hpp"
#include "ctdiam/cheb.hpp"
#include "ctdiam/mesh.hpp"
#include "ctdiam/vdm.hpp"

#include <limits>
#include <string>
#include <vector>

namespace ctdiam {

/// delta_k = V_k^{1/L_k}.
double delta_k(const Mesh& mesh, const ConvexBody& body, int k, const VdmOptions& options = {});

/// V_k^{1/(k M_k)}.
double D_estimate_vdm(const Mesh& mesh, const ConvexBody& body, int k, const VdmOptions& options = {});

/// exp of the mean of log T_k(alpha) over every alpha in kC; zero when some
/// T_k vanishes.
double D_estimate_transform(const Mesh& mesh, const ConvexBody& body, int k, OrderKind ordering,
                            const ChebOptions& options = {});

/// Mean of log T_k over the lattice points whose cube of side 1/k around
/// alpha/k lies in the interior of C; NaN when there are none.
double interior_cell_average(const ConvexBody& body, const TransformTable& table, OrderKind ordering);

struct FinalDelta {
  double delta = 0.0;  // D^{1/A_N}
  double D = 0.0;
  double A_N = 0.0;
};

FinalDelta final_delta(const Mesh& mesh, const ConvexBody& body, int k, const VdmOptions& options = {},
                       const QuadratureOptions& quadrature = {});

struct DiameterRow {
  int k = 0;
  long M = 0, h = 0, L = 0;
  double log_V = 0.0;
  bool exact = false;
  double delta_k = 0.0;
  double D_vdm = 0.0;
  double D_transform_C = 0.0;
  double D_transform_grevlex = 0.0;
  double leja_value = std::numeric_limits<double>::quiet_NaN();
  double cell_average_C = std::numeric_limits<double>::quiet_NaN();  // log scale

  /// Sums of k log T_k over kC, from the certified brackets (C order).
  double sum_low_C = 0.0;
  double sum_high_C = 0.0;
  double log_M_factorial = 0.0;
  /// sum_low <= log V <= log M_k! + sum_high, for each order.
  bool sandwich_C = false;
  bool sandwich_grevlex = false;
  /// |log D_vdm - log D_transform_C| <= log(M_k!)/(k M_k) + slack.
  bool routes_agree = false;

  std::string error;  // empty unless the row failed
};

struct TdiamOptions {
  VdmOptions vdm;
  ChebOptions cheb;
  QuadratureOptions quadrature;
  bool leja = true;
  bool cell_average = false;
  /// Per-point slack in the sandwich checks (scaled by M_k).
  double slack = 1e-6;
  /// Additive slack in the route agreement check.
  double route_slack = 1e-5;
};

struct DiameterReport {
  std::vector<DiameterRow> rows;  // k = 1..k_max
  double A_N = 0.0;
  /// D_vdm at k_max raised to 1/A_N.
  double final_delta = 0.0;
  DaggerReport dagger;
  bool leja_heuristic = false;
  std::string leja_error;
  std::vector<TransformTable> transforms;  // per k
};

DiameterReport build_report(const Mesh& mesh, const ConvexBody& body, int k_max, const TdiamOptions& options = {});

}  // namespace ctdiam
