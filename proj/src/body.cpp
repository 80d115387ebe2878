// SPDX-License-Identifier: Apache-2.0
#include "ctdiam/body.hpp"

#include "ctdiam/error.hpp"
#include "ctdiam/order.hpp"
#include "ctdiam/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ctdiam {

namespace {

// max c.x over {x >= 0, A x <= b}, exact. Returns the LP result in the
// original variables (slacks stripped).
LpResult<Rational> maximize_over(const std::vector<Halfspace>& hs, int dim, const RationalVector& objective) {
  const auto m = static_cast<Eigen::Index>(hs.size());
  RationalMatrix A = rational_zeros(m, dim + m);
  RationalVector b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    A.row(i).head(dim) = hs[static_cast<std::size_t>(i)].a.transpose();
    A(i, dim + i) = Rational(1);
    b(i) = hs[static_cast<std::size_t>(i)].b;
  }
  RationalVector c = rational_zeros(dim + m);
  c.head(dim) = -objective;
  auto lp = minimize_standard_form(A, b, c);
  if (lp.status == LpStatus::Optimal) {
    lp.x.conservativeResize(dim);
    lp.objective = -lp.objective;
  } else if (lp.status == LpStatus::Unbounded) {
    lp.ray.conservativeResize(dim);
  }
  return lp;
}

std::string vector_string(const RationalVector& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += to_string(v(i));
  }
  return s + ")";
}

}  // namespace

ConvexBody ConvexBody::validate(int dim, std::vector<Halfspace> halfspaces) {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  for (std::size_t i = 0; i < halfspaces.size(); ++i) {
    if (halfspaces[i].a.size() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "halfspace " + std::to_string(i) + " has " +
                                                    std::to_string(halfspaces[i].a.size()) + " coefficients, expected " +
                                                    std::to_string(dim));
    }
  }
  for (std::size_t i = 0; i < halfspaces.size(); ++i) {
    if (halfspaces[i].b <= 0) {
      throw Error(ErrorCode::NonpositiveOffset,
                  "halfspace " + std::to_string(i) + " has offset " + to_string(halfspaces[i].b) + " <= 0");
    }
  }
  for (std::size_t i = 0; i < halfspaces.size(); ++i) {
    for (int j = 0; j < dim; ++j) {
      if (halfspaces[i].a(j) > halfspaces[i].b) {
        throw Error(ErrorCode::SimplexNotContained, "unit vector e_" + std::to_string(j + 1) + " violates halfspace " +
                                                        std::to_string(i));
      }
    }
  }

  const auto total = maximize_over(halfspaces, dim, rational_ones(dim));
  if (total.status == LpStatus::Unbounded) {
    throw Error(ErrorCode::Unbounded, "body is unbounded along direction " + vector_string(total.ray));
  }
  if (total.status != LpStatus::Optimal) throw Error(ErrorCode::SolverFailure, "boundedness LP did not converge");

  ConvexBody body;
  body.dim_ = dim;
  body.halfspaces_ = std::move(halfspaces);
  const auto m = static_cast<Eigen::Index>(body.halfspaces_.size());
  body.ratios_ = RationalMatrix(m, dim);
  body.num_.resize(static_cast<std::size_t>(m));
  body.den_.resize(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    const Halfspace& h = body.halfspaces_[static_cast<std::size_t>(i)];
    Integer den = 1;
    for (int j = 0; j < dim; ++j) {
      body.ratios_(i, j) = h.a(j) / h.b;
      den = boost::multiprecision::lcm(den, Integer(denominator(body.ratios_(i, j))));
    }
    auto& row = body.num_[static_cast<std::size_t>(i)];
    row.resize(static_cast<std::size_t>(dim));
    for (int j = 0; j < dim; ++j) {
      row[static_cast<std::size_t>(j)] = numerator(body.ratios_(i, j)) * (den / denominator(body.ratios_(i, j)));
    }
    body.den_[static_cast<std::size_t>(i)] = den;
  }

  body.coordinate_max_ = RationalVector(dim);
  for (int j = 0; j < dim; ++j) {
    RationalVector e = rational_zeros(dim);
    e(j) = Rational(1);
    const auto lp = maximize_over(body.halfspaces_, dim, e);
    if (lp.status != LpStatus::Optimal) throw Error(ErrorCode::SolverFailure, "coordinate LP did not converge");
    body.coordinate_max_(j) = lp.objective;
  }
  return body;
}

ConvexBody ConvexBody::simplex(int dim) {
  return validate(dim, {Halfspace{rational_ones(dim), Rational(1)}});
}

ConvexBody ConvexBody::box(const std::vector<int>& sides) {
  const int dim = static_cast<int>(sides.size());
  std::vector<Halfspace> hs;
  for (int j = 0; j < dim; ++j) {
    RationalVector a = rational_zeros(dim);
    a(j) = Rational(1);
    hs.push_back({a, Rational(sides[static_cast<std::size_t>(j)])});
  }
  return validate(dim, std::move(hs));
}

Rational ConvexBody::gauge(const Exponent& alpha) const {
  if (alpha.dim() != dim_) throw Error(ErrorCode::DimensionMismatch, "exponent dimension does not match body");
  Integer best_num = 0;
  Integer best_den = 1;
  for (std::size_t i = 0; i < num_.size(); ++i) {
    Integer s = 0;
    for (int j = 0; j < dim_; ++j) {
      if (alpha[j] != 0) s += num_[i][static_cast<std::size_t>(j)] * alpha[j];
    }
    if (s * best_den > best_num * den_[i]) {
      best_num = s;
      best_den = den_[i];
    }
  }
  return Rational(best_num, best_den);
}

Rational ConvexBody::gauge(const RationalVector& x) const {
  if (x.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "point dimension does not match body");
  Rational best(0);
  for (Eigen::Index i = 0; i < ratios_.rows(); ++i) best = std::max(best, Rational(ratios_.row(i).dot(x.transpose())));
  return best;
}

int c_degree(const ConvexBody& body, const Exponent& alpha) {
  return static_cast<int>(ceil(body.gauge(alpha)));
}

std::vector<Exponent> enumerate_lattice(const ConvexBody& body, int k) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "k must be nonnegative");
  const int n = body.dim();
  std::vector<int> upper(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    upper[static_cast<std::size_t>(j)] = static_cast<int>(floor(Rational(body.coordinate_max()(j) * k)));
  }

  struct Entry {
    Exponent alpha;
    Rational gauge;
  };
  std::vector<Entry> inside;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  const Rational limit(k);
  while (true) {
    Exponent alpha(idx);
    Rational g = body.gauge(alpha);
    if (g <= limit) inside.push_back({std::move(alpha), std::move(g)});
    int d = 0;
    while (d < n && idx[static_cast<std::size_t>(d)] == upper[static_cast<std::size_t>(d)]) {
      idx[static_cast<std::size_t>(d)] = 0;
      ++d;
    }
    if (d == n) break;
    ++idx[static_cast<std::size_t>(d)];
  }

  std::sort(inside.begin(), inside.end(), [](const Entry& x, const Entry& y) {
    if (x.gauge != y.gauge) return x.gauge < y.gauge;
    return grevlex_cmp(x.alpha, y.alpha) < 0;
  });
  std::vector<Exponent> out;
  out.reserve(inside.size());
  for (auto& e : inside) out.push_back(std::move(e.alpha));
  return out;
}

LatticeCounts counts(const ConvexBody& body, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "counts require k >= 1");
  const auto lattice = enumerate_lattice(body, k);
  LatticeCounts c;
  c.M = static_cast<long>(lattice.size());
  long previous = 0;
  const Rational below(k - 1);
  for (const auto& alpha : lattice) {
    c.L += alpha.total_degree();
    if (body.gauge(alpha) <= below) ++previous;
  }
  c.h = c.M - previous;
  return c;
}

double normalization_A(const ConvexBody& body, const QuadratureOptions& options) {
  if (!(options.spacing > 0.0) || options.boundary_subsamples < 1) {
    throw Error(ErrorCode::InvalidArgument, "quadrature spacing and subsamples must be positive");
  }
  const int n = body.dim();
  const Eigen::Index m = body.ratios().rows();
  Eigen::MatrixXd R(m, n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) R(i, j) = to_double(body.ratios()(i, j));

  const double h = options.spacing;
  std::vector<int> cells(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    cells[static_cast<std::size_t>(j)] =
        std::max(1, static_cast<int>(std::ceil(to_double(body.coordinate_max()(j)) / h - 1e-12)));
  }

  const int S = options.boundary_subsamples;
  const double sub = h / S;
  const double cell_volume = std::pow(h, n);
  const double sub_volume = std::pow(sub, n);
  // Conservative tolerance: a misclassified cell is merely subsampled.
  constexpr double kEdge = 1e-12;

  double volume = 0.0;
  double moment = 0.0;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  std::vector<int> sidx(static_cast<std::size_t>(n), 0);
  Eigen::VectorXd lo(n), hi(n), x(n);
  while (true) {
    for (int j = 0; j < n; ++j) {
      lo(j) = idx[static_cast<std::size_t>(j)] * h;
      hi(j) = lo(j) + h;
    }
    bool inside = true;
    bool outside = false;
    for (Eigen::Index i = 0; i < m && !outside; ++i) {
      double vmax = 0.0, vmin = 0.0;
      for (int j = 0; j < n; ++j) {
        const double a = R(i, j) * lo(j), b = R(i, j) * hi(j);
        vmax += std::max(a, b);
        vmin += std::min(a, b);
      }
      if (vmax > 1.0 - kEdge) inside = false;
      if (vmin >= 1.0 + kEdge) outside = true;
    }
    if (!outside) {
      if (inside) {
        volume += cell_volume;
        moment += cell_volume * (lo.sum() + 0.5 * h * n);
      } else {
        std::fill(sidx.begin(), sidx.end(), 0);
        while (true) {
          for (int j = 0; j < n; ++j) x(j) = lo(j) + (sidx[static_cast<std::size_t>(j)] + 0.5) * sub;
          if (((R * x).array() <= 1.0).all()) {
            volume += sub_volume;
            moment += sub_volume * x.sum();
          }
          int d = 0;
          while (d < n && sidx[static_cast<std::size_t>(d)] == S - 1) sidx[static_cast<std::size_t>(d++)] = 0;
          if (d == n) break;
          ++sidx[static_cast<std::size_t>(d)];
        }
      }
    }
    int d = 0;
    while (d < n && idx[static_cast<std::size_t>(d)] == cells[static_cast<std::size_t>(d)] - 1) {
      idx[static_cast<std::size_t>(d++)] = 0;
    }
    if (d == n) break;
    ++idx[static_cast<std::size_t>(d)];
  }
  return moment / volume;
}

const char* to_string(DaggerVerdict verdict) {
  switch (verdict) {
    case DaggerVerdict::HoldsSimplex: return "holds-simplex";
    case DaggerVerdict::HoldsInjectiveGauge: return "holds-injective-gauge";
    case DaggerVerdict::Violated: return "violated";
    case DaggerVerdict::Unknown: return "unknown";
  }
  return "unknown";
}

DaggerReport check_dagger(const ConvexBody& body, int k_max, std::size_t max_witnesses) {
  DaggerReport report;

  // Exact redundancy removal: drop a halfspace when the others already imply it.
  std::vector<Halfspace> kept = body.halfspaces();
  for (std::size_t i = 0; i < kept.size();) {
    std::vector<Halfspace> others;
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (j != i) others.push_back(kept[j]);
    const auto lp = maximize_over(others, body.dim(), kept[i].a);
    if (lp.status == LpStatus::Optimal && lp.objective <= kept[i].b) {
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  report.irredundant_halfspaces = static_cast<int>(kept.size());

  if (k_max >= 1) {
    const auto lattice = enumerate_lattice(body, k_max);
    std::size_t start = 0;
    Rational start_gauge = lattice.empty() ? Rational(0) : body.gauge(lattice.front());
    for (std::size_t i = 1; i <= lattice.size(); ++i) {
      Rational g = i < lattice.size() ? body.gauge(lattice[i]) : Rational(-1);
      if (g != start_gauge) {
        for (std::size_t a = start; a < i; ++a)
          for (std::size_t b = a + 1; b < i; ++b)
            if (report.witness_pairs.size() < max_witnesses) report.witness_pairs.emplace_back(lattice[a], lattice[b]);
        start = i;
        start_gauge = std::move(g);
      }
    }
  }

  if (kept.size() == 1) {
    report.verdict = DaggerVerdict::HoldsSimplex;
  } else if (k_max < 1) {
    report.verdict = DaggerVerdict::Unknown;
  } else if (report.witness_pairs.empty()) {
    report.verdict = DaggerVerdict::HoldsInjectiveGauge;
  } else {
    report.verdict = DaggerVerdict::Violated;
  }
  return report;
}

}  // namespace ctdiam
