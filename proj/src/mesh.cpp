// SPDX-License-Identifier: Apache-2.0
#include "ctdiam/mesh.hpp"

#include "ctdiam/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace ctdiam {

Mesh::Mesh(Eigen::MatrixXcd points, Eigen::VectorXd log_weights, std::string provenance)
    : points_(std::move(points)), log_weights_(std::move(log_weights)), provenance_(std::move(provenance)) {
  if (points_.cols() == 0 || points_.rows() == 0) throw Error(ErrorCode::EmptySpec, "mesh has no points");
  if (log_weights_.size() != points_.cols()) {
    throw Error(ErrorCode::WeightLengthMismatch, "got " + std::to_string(log_weights_.size()) + " log-weights for " +
                                                     std::to_string(points_.cols()) + " points");
  }
  for (Eigen::Index i = 0; i < log_weights_.size(); ++i) {
    const double lw = log_weights_(i);
    if (std::isnan(lw) || lw == std::numeric_limits<double>::infinity()) {
      throw Error(ErrorCode::InvalidArgument, "log-weight must be finite or -inf");
    }
    if (std::isfinite(lw)) ++positive_;
    if (lw != 0.0) unweighted_ = false;
  }
  if (positive_ == 0) throw Error(ErrorCode::DegenerateWeight, "weight vanishes at every mesh point");
  real_ = (points_.imag().array() == 0.0).all();
}

namespace {

struct RawMesh {
  Eigen::MatrixXcd points;
  Eigen::VectorXd log_weights;
  std::string provenance;
};

RawMesh circle_points(const CircleSpec& c) {
  if (c.count < 1) throw Error(ErrorCode::EmptySpec, "circle needs count >= 1");
  RawMesh m;
  m.points.resize(1, c.count);
  for (int j = 0; j < c.count; ++j) {
    // Exact quarter turns keep roots of unity like i and -1 exact.
    const int num = 4 * j;
    Complex unit;
    if (num % c.count == 0) {
      static constexpr Complex quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      unit = quarter[(num / c.count) % 4];
    } else {
      const double t = 2.0 * std::numbers::pi * j / c.count;
      unit = {std::cos(t), std::sin(t)};
    }
    m.points(0, j) = c.center + c.radius * unit;
  }
  m.log_weights = Eigen::VectorXd::Zero(c.count);
  std::ostringstream os;
  os << "circle(center=" << c.center.real() << (c.center.imag() < 0 ? "" : "+") << c.center.imag()
     << "i, radius=" << c.radius << ", count=" << c.count << ")";
  m.provenance = os.str();
  return m;
}

RawMesh build_raw(const MeshSpec& spec);

struct ShapeBuilder {
  RawMesh operator()(const CircleSpec& c) const { return circle_points(c); }

  RawMesh operator()(const IntervalSpec& s) const {
    if (s.count < 1) throw Error(ErrorCode::EmptySpec, "interval needs count >= 1");
    RawMesh m;
    m.points.resize(1, s.count);
    for (int j = 0; j < s.count; ++j) {
      double x;
      if (s.count == 1) {
        x = 0.5 * (s.a + s.b);
      } else if (s.spacing == Spacing::Uniform) {
        x = s.a + (s.b - s.a) * j / (s.count - 1);
      } else {
        // Chebyshev extrema, ascending; endpoints and (odd count) midpoint exact.
        const int n = s.count - 1;
        double c;
        if (2 * j == n) {
          c = 0.0;
        } else if (j == 0) {
          c = 1.0;
        } else if (j == n) {
          c = -1.0;
        } else {
          c = std::cos(std::numbers::pi * j / n);
        }
        x = 0.5 * (s.a + s.b) - 0.5 * (s.b - s.a) * c;
      }
      m.points(0, j) = Complex(x, 0.0);
    }
    m.log_weights = Eigen::VectorXd::Zero(s.count);
    std::ostringstream os;
    os << "interval(" << s.a << ", " << s.b << ", count=" << s.count
       << (s.spacing == Spacing::Uniform ? ", uniform)" : ", chebyshev-nodes)");
    m.provenance = os.str();
    return m;
  }

  RawMesh operator()(const Box2dSpec& s) const {
    if (s.nx < 1 || s.ny < 1) throw Error(ErrorCode::EmptySpec, "box2d needs positive counts");
    const auto axis = [](double lo, double hi, int n, int j) { return n == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * j / (n - 1); };
    RawMesh m;
    m.points.resize(2, static_cast<Eigen::Index>(s.nx) * s.ny);
    Eigen::Index p = 0;
    for (int i = 0; i < s.nx; ++i)
      for (int j = 0; j < s.ny; ++j, ++p) {
        m.points(0, p) = axis(s.x0, s.x1, s.nx, i);
        m.points(1, p) = axis(s.y0, s.y1, s.ny, j);
      }
    m.log_weights = Eigen::VectorXd::Zero(m.points.cols());
    std::ostringstream os;
    os << "box2d([" << s.x0 << "," << s.x1 << "]x[" << s.y0 << "," << s.y1 << "], " << s.nx << "x" << s.ny << ")";
    m.provenance = os.str();
    return m;
  }

  RawMesh operator()(const TorusSpec& s) const {
    if (s.circles.empty()) throw Error(ErrorCode::EmptySpec, "torus needs at least one circle");
    ProductSpec product;
    for (const auto& c : s.circles) product.factors.push_back(std::make_shared<MeshSpec>(MeshSpec{c, WeightOne{}}));
    RawMesh m = (*this)(product);
    m.provenance = "torus" + m.provenance.substr(std::string("product").size());
    return m;
  }

  RawMesh operator()(const ProductSpec& s) const {
    if (s.factors.empty()) throw Error(ErrorCode::EmptySpec, "product needs at least one factor");
    std::vector<RawMesh> parts;
    for (const auto& f : s.factors) {
      if (!f) throw Error(ErrorCode::EmptySpec, "null product factor");
      parts.push_back(build_raw(*f));
    }
    Eigen::Index dim = 0, total = 1;
    for (const auto& p : parts) {
      dim += p.points.rows();
      total *= p.points.cols();
    }
    RawMesh m;
    m.points.resize(dim, total);
    m.log_weights = Eigen::VectorXd::Zero(total);
    std::vector<Eigen::Index> idx(parts.size(), 0);
    for (Eigen::Index col = 0; col < total; ++col) {
      Eigen::Index row = 0;
      for (std::size_t f = 0; f < parts.size(); ++f) {
        const auto& pts = parts[f].points;
        m.points.block(row, col, pts.rows(), 1) = pts.col(idx[f]);
        m.log_weights(col) += parts[f].log_weights(idx[f]);
        row += pts.rows();
      }
      for (std::size_t f = parts.size(); f-- > 0;) {
        if (++idx[f] < parts[f].points.cols()) break;
        idx[f] = 0;
      }
    }
    m.provenance = "product(";
    for (std::size_t f = 0; f < parts.size(); ++f) m.provenance += (f ? " x " : "") + parts[f].provenance;
    m.provenance += ")";
    return m;
  }

  RawMesh operator()(const ExplicitSpec& s) const {
    if (s.points.cols() == 0 || s.points.rows() == 0) throw Error(ErrorCode::EmptySpec, "explicit mesh has no points");
    RawMesh m;
    m.points = s.points;
    if (s.log_weights.empty()) {
      m.log_weights = Eigen::VectorXd::Zero(s.points.cols());
    } else {
      if (static_cast<Eigen::Index>(s.log_weights.size()) != s.points.cols()) {
        throw Error(ErrorCode::WeightLengthMismatch, "explicit log-weight column has the wrong length");
      }
      m.log_weights = Eigen::Map<const Eigen::VectorXd>(s.log_weights.data(), static_cast<Eigen::Index>(s.log_weights.size()));
    }
    m.provenance = "explicit(" + std::to_string(s.points.cols()) + " points in C^" + std::to_string(s.points.rows()) + ")";
    return m;
  }
};

struct WeightApplier {
  RawMesh& m;

  void operator()(const WeightOne&) const {}
  void operator()(const WeightRadialGaussian& g) const {
    if (!(g.sigma > 0.0)) throw Error(ErrorCode::InvalidArgument, "radial-gaussian sigma must be positive");
    for (Eigen::Index i = 0; i < m.points.cols(); ++i) {
      m.log_weights(i) += -m.points.col(i).squaredNorm() / (2.0 * g.sigma * g.sigma);
    }
    std::ostringstream os;
    os << " weight=radial-gaussian(" << g.sigma << ")";
    m.provenance += os.str();
  }
  void operator()(const WeightTable& t) const {
    if (static_cast<Eigen::Index>(t.log_weights.size()) != m.points.cols()) {
      throw Error(ErrorCode::WeightLengthMismatch, "weight table has " + std::to_string(t.log_weights.size()) +
                                                       " entries for " + std::to_string(m.points.cols()) + " points");
    }
    for (Eigen::Index i = 0; i < m.points.cols(); ++i) m.log_weights(i) += t.log_weights[static_cast<std::size_t>(i)];
    m.provenance += " weight=table";
  }
};

RawMesh build_raw(const MeshSpec& spec) {
  RawMesh m = std::visit(ShapeBuilder{}, spec.shape);
  std::visit(WeightApplier{m}, spec.weight);
  return m;
}

}  // namespace

Mesh build_mesh(const MeshSpec& spec) {
  RawMesh m = build_raw(spec);
  return Mesh(std::move(m.points), std::move(m.log_weights), std::move(m.provenance));
}

Eigen::MatrixXcd monomial_matrix(const Mesh& mesh, std::span<const Exponent> exponents) {
  const int n = mesh.dim();
  const Eigen::Index P = mesh.size();
  int max_degree = 0;
  for (const auto& e : exponents) {
    if (e.dim() != n) throw Error(ErrorCode::DimensionMismatch, "exponent dimension does not match mesh");
    for (int j = 0; j < n; ++j) max_degree = std::max(max_degree, e[j]);
  }
  // powers[j](d, p) = z_j(p)^d
  std::vector<Eigen::MatrixXcd> powers(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    auto& pw = powers[static_cast<std::size_t>(j)];
    pw.resize(max_degree + 1, P);
    pw.row(0).setOnes();
    for (int d = 1; d <= max_degree; ++d) pw.row(d) = pw.row(d - 1).cwiseProduct(mesh.points().row(j));
  }
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(exponents.size()), P);
  for (std::size_t r = 0; r < exponents.size(); ++r) {
    auto row = out.row(static_cast<Eigen::Index>(r));
    row.setOnes();
    for (int j = 0; j < n; ++j) {
      const int d = exponents[r][j];
      if (d) row = row.cwiseProduct(powers[static_cast<std::size_t>(j)].row(d));
    }
  }
  return out;
}

Polynomial Polynomial::monomial(const Exponent& alpha, Complex coefficient) {
  Polynomial p(alpha.dim());
  p.add_term(alpha, coefficient);
  return p;
}

Complex Polynomial::coefficient(const Exponent& alpha) const {
  const auto it = terms_.find(alpha);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

void Polynomial::add_term(const Exponent& alpha, Complex coefficient) {
  if (dim_ == 0) dim_ = alpha.dim();
  if (alpha.dim() != dim_) throw Error(ErrorCode::DimensionMismatch, "term dimension does not match polynomial");
  if (coefficient == Complex(0.0)) return;
  auto [it, inserted] = terms_.try_emplace(alpha, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == Complex(0.0)) terms_.erase(it);
  }
}

Complex Polynomial::evaluate(const Eigen::Ref<const Eigen::VectorXcd>& z) const {
  if (!terms_.empty() && z.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "point dimension does not match polynomial");
  Complex sum = 0.0;
  for (const auto& [alpha, c] : terms_) {
    Complex m = c;
    for (int j = 0; j < alpha.dim(); ++j)
      if (alpha[j]) m *= std::pow(z(j), alpha[j]);
    sum += m;
  }
  return sum;
}

Eigen::VectorXcd Polynomial::evaluate(const Mesh& mesh) const {
  if (terms_.empty()) return Eigen::VectorXcd::Zero(mesh.size());
  if (mesh.dim() != dim_) throw Error(ErrorCode::DimensionMismatch, "mesh dimension does not match polynomial");
  std::vector<Exponent> exps;
  Eigen::VectorXcd coeffs(static_cast<Eigen::Index>(terms_.size()));
  for (const auto& [alpha, c] : terms_) {
    coeffs(static_cast<Eigen::Index>(exps.size())) = c;
    exps.push_back(alpha);
  }
  return monomial_matrix(mesh, exps).transpose() * coeffs;
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  Polynomial r(p.dim_ ? p.dim_ : q.dim_);
  for (const auto& [a, ca] : p.terms_)
    for (const auto& [b, cb] : q.terms_) r.add_term(a + b, ca * cb);
  return r;
}

Polynomial operator*(Complex c, const Polynomial& p) {
  Polynomial r(p.dim_);
  for (const auto& [a, ca] : p.terms_) r.add_term(a, c * ca);
  return r;
}

Polynomial Polynomial::pow(int j) const {
  if (j < 0) throw Error(ErrorCode::InvalidArgument, "negative polynomial power");
  Polynomial result = monomial(Exponent::zero(dim_));
  for (int i = 0; i < j; ++i) result = result * *this;
  return result;
}

double weighted_sup_norm(const Mesh& mesh, const Polynomial& poly, int k) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (poly.is_zero()) return kNegInf;
  const Eigen::VectorXcd values = poly.evaluate(mesh);
  double best = kNegInf;
  for (Eigen::Index i = 0; i < mesh.size(); ++i) {
    const double lw = mesh.log_weights()(i);
    if (!std::isfinite(lw)) continue;
    const double a = std::abs(values(i));
    if (a == 0.0) continue;
    best = std::max(best, k * lw + std::log(a));
  }
  return best;
}

}  // namespace ctdiam
