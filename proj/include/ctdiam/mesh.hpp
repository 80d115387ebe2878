// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ctdiam/exponent.hpp"

#include <Eigen/Core>

#include <complex>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace ctdiam {

using Complex = std::complex<double>;

/// Finite weighted sample of a compact set K in C^N. Points are the columns
/// of an N x P complex matrix; log-weights may be -inf where w vanishes.
class Mesh {
 public:
  Mesh(Eigen::MatrixXcd points, Eigen::VectorXd log_weights, std::string provenance);

  [[nodiscard]] int dim() const noexcept { return static_cast<int>(points_.rows()); }
  [[nodiscard]] Eigen::Index size() const noexcept { return points_.cols(); }
  [[nodiscard]] const Eigen::MatrixXcd& points() const noexcept { return points_; }
  [[nodiscard]] auto point(Eigen::Index i) const { return points_.col(i); }
  [[nodiscard]] const Eigen::VectorXd& log_weights() const noexcept { return log_weights_; }
  [[nodiscard]] const std::string& provenance() const noexcept { return provenance_; }

  /// True when every coordinate of every point has zero imaginary part.
  [[nodiscard]] bool is_real() const noexcept { return real_; }
  /// True when every log-weight is exactly zero.
  [[nodiscard]] bool is_unweighted() const noexcept { return unweighted_; }
  [[nodiscard]] Eigen::Index positive_weight_count() const noexcept { return positive_; }

 private:
  Eigen::MatrixXcd points_;
  Eigen::VectorXd log_weights_;
  std::string provenance_;
  bool real_ = true;
  bool unweighted_ = true;
  Eigen::Index positive_ = 0;
};

// Mesh specifications. Each generator is deterministic.

struct CircleSpec {
  Complex center{0.0, 0.0};
  double radius = 1.0;
  int count = 0;
};

enum class Spacing { Uniform, ChebyshevNodes };

struct IntervalSpec {
  double a = -1.0;
  double b = 1.0;
  int count = 0;
  Spacing spacing = Spacing::Uniform;
};

/// Real rectangle grid [x0,x1] x [y0,y1] sitting in R^2 inside C^2.
struct Box2dSpec {
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  int nx = 0, ny = 0;
};

struct TorusSpec {
  std::vector<CircleSpec> circles;
};

struct ExplicitSpec {
  Eigen::MatrixXcd points;        // N x P
  std::vector<double> log_weights;  // optional, length P
};

struct WeightOne {};
/// w(z) = exp(-|z|^2 / (2 sigma^2)).
struct WeightRadialGaussian {
  double sigma = 1.0;
};
struct WeightTable {
  std::vector<double> log_weights;
};
using WeightSpec = std::variant<WeightOne, WeightRadialGaussian, WeightTable>;

struct MeshSpec;
struct ProductSpec {
  std::vector<std::shared_ptr<const MeshSpec>> factors;
};

struct MeshSpec {
  std::variant<CircleSpec, IntervalSpec, Box2dSpec, TorusSpec, ProductSpec, ExplicitSpec> shape;
  WeightSpec weight = WeightOne{};
};

/// Builds the mesh. Product meshes enumerate factor indices
/// lexicographically (first factor slowest) and add factor log-weights.
Mesh build_mesh(const MeshSpec& spec);

/// Evaluates z^alpha at every mesh point for each exponent: a
/// |exponents| x P matrix.
Eigen::MatrixXcd monomial_matrix(const Mesh& mesh, std::span<const Exponent> exponents);

/// Polynomial as a sparse map from exponent to complex coefficient. Zero
/// coefficients are never stored.
class Polynomial {
 public:
  using Terms = std::map<Exponent, Complex>;

  Polynomial() = default;
  explicit Polynomial(int dim) : dim_(dim) {}
  static Polynomial monomial(const Exponent& alpha, Complex coefficient = 1.0);

  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] const Terms& terms() const noexcept { return terms_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] Complex coefficient(const Exponent& alpha) const;
  [[nodiscard]] bool is_monic_for(const Exponent& alpha) const { return coefficient(alpha) == Complex(1.0); }

  void add_term(const Exponent& alpha, Complex coefficient);

  [[nodiscard]] Complex evaluate(const Eigen::Ref<const Eigen::VectorXcd>& z) const;
  [[nodiscard]] Eigen::VectorXcd evaluate(const Mesh& mesh) const;

  friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator*(Complex c, const Polynomial& p);
  [[nodiscard]] Polynomial pow(int j) const;

 private:
  int dim_ = 0;
  Terms terms_;
};

/// log max_{zeta in mesh} w(zeta)^k |p(zeta)|; -inf for the zero polynomial.
double weighted_sup_norm(const Mesh& mesh, const Polynomial& poly, int k);

}  // namespace ctdiam
