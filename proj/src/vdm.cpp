// SPDX-License-Identifier: Apache-2.0
#include "ctdiam/vdm.hpp"

#include "ctdiam/error.hpp"
#include "ctdiam/parallel.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>

namespace ctdiam {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Unweighted monomial evaluations of the M_k basis at every mesh point.
struct Evaluations {
  std::vector<Exponent> basis;
  Eigen::MatrixXcd Z;  // M_k x P
};

Evaluations evaluate_basis(const Mesh& mesh, const ConvexBody& body, int k) {
  if (mesh.dim() != body.dim()) throw Error(ErrorCode::DimensionMismatch, "mesh dimension does not match body");
  Evaluations ev;
  ev.basis = enumerate_lattice(body, k);
  ev.Z = monomial_matrix(mesh, ev.basis);
  return ev;
}

bool has_repeats(const Mesh& mesh, const std::vector<Eigen::Index>& idx) {
  std::set<Eigen::Index> seen(idx.begin(), idx.end());
  if (seen.size() != idx.size()) return true;
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      if (mesh.point(idx[a]) == mesh.point(idx[b])) return true;
  return false;
}

double weighted_log_det(const Mesh& mesh, const Eigen::MatrixXcd& Z, int k, const std::vector<Eigen::Index>& idx) {
  const auto s = static_cast<Eigen::Index>(idx.size());
  double logw = 0.0;
  Eigen::MatrixXcd A(s, s);
  for (Eigen::Index l = 0; l < s; ++l) {
    const Eigen::Index p = idx[static_cast<std::size_t>(l)];
    const double lw = mesh.log_weights()(p);
    if (!std::isfinite(lw)) return kNegInf;
    logw += k * lw;
    A.col(l) = Z.col(p).head(s);
  }
  return logw + log_abs_det(A);
}

std::vector<Eigen::Index> supported_points(const Mesh& mesh) {
  std::vector<Eigen::Index> q;
  for (Eigen::Index p = 0; p < mesh.size(); ++p)
    if (std::isfinite(mesh.log_weights()(p))) q.push_back(p);
  return q;
}

// Lexicographic successor of a combination of {0..n-1}; false after the last.
bool next_combination(std::vector<int>& c, int n) {
  const int r = static_cast<int>(c.size());
  int i = r - 1;
  while (i >= 0 && c[static_cast<std::size_t>(i)] == n - r + i) --i;
  if (i < 0) return false;
  ++c[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < r; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

// The combination of rank `rank` in lexicographic order.
std::vector<int> unrank_combination(std::int64_t rank, int n, int r) {
  std::vector<int> c;
  c.reserve(static_cast<std::size_t>(r));
  int x = 0;
  for (int i = 0; i < r; ++i) {
    while (true) {
      const auto below = static_cast<std::int64_t>(binomial(n - x - 1, r - i - 1));
      if (rank < below) break;
      rank -= below;
      ++x;
    }
    c.push_back(x++);
  }
  return c;
}

struct Candidate {
  double value = kNegInf;
  std::vector<Eigen::Index> indices;  // sorted

  // Larger value wins; equal values prefer the lexicographically smaller set.
  [[nodiscard]] bool beats(const Candidate& other) const {
    if (value != other.value) return value > other.value;
    return indices < other.indices;
  }
};

Candidate brute_force(const Mesh& mesh, const Evaluations& ev, int k, const std::vector<Eigen::Index>& q,
                      int workers) {
  const int n = static_cast<int>(q.size());
  const int r = static_cast<int>(ev.basis.size());
  const auto total = static_cast<std::int64_t>(binomial(n, r));
  constexpr std::int64_t chunk = 4096;
  const auto chunks = static_cast<std::size_t>((total + chunk - 1) / chunk);
  std::vector<Candidate> best(chunks);
  parallel_for(chunks, workers, [&](std::size_t ci) {
    const std::int64_t begin = static_cast<std::int64_t>(ci) * chunk;
    const std::int64_t end = std::min(total, begin + chunk);
    auto comb = unrank_combination(begin, n, r);
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(r));
    Candidate local;
    for (std::int64_t rank = begin; rank < end; ++rank) {
      for (int i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = q[static_cast<std::size_t>(comb[static_cast<std::size_t>(i)])];
      const double v = has_repeats(mesh, idx) ? kNegInf : weighted_log_det(mesh, ev.Z, k, idx);
      if (local.indices.empty() || v > local.value) local = Candidate{v, idx};
      next_combination(comb, n);
    }
    best[ci] = std::move(local);
  });
  Candidate out;
  for (auto& c : best)
    if (out.indices.empty() || c.beats(out)) out = std::move(c);
  return out;
}

// Grows a set one point at a time, each time taking the point that
// maximizes the enlarged determinant, then improves it by single-point
// exchanges until no swap increases |VDM|.
Candidate greedy_from(const Mesh& mesh, const Evaluations& ev, int k, const std::vector<Eigen::Index>& q,
                      Eigen::Index start, int max_exchanges) {
  const auto M = static_cast<Eigen::Index>(ev.basis.size());
  const auto nq = static_cast<Eigen::Index>(q.size());
  Eigen::MatrixXcd Zq(M, nq);
  Eigen::VectorXd kw(nq);
  for (Eigen::Index j = 0; j < nq; ++j) {
    Zq.col(j) = ev.Z.col(q[static_cast<std::size_t>(j)]);
    kw(j) = k * mesh.log_weights()(q[static_cast<std::size_t>(j)]);
  }

  std::vector<Eigen::Index> chosen{start};  // positions in q
  for (Eigen::Index s = 1; s < M; ++s) {
    Eigen::MatrixXcd A(s, s);
    Eigen::VectorXcd next_row(s);
    for (Eigen::Index l = 0; l < s; ++l) {
      A.col(l) = Zq.col(chosen[static_cast<std::size_t>(l)]).head(s);
      next_row(l) = Zq(s, chosen[static_cast<std::size_t>(l)]);
    }
    // Schur complement of the bordered matrix: Z_s(eta) - r . Z_{<s}(eta).
    const Eigen::VectorXcd r = A.transpose().partialPivLu().solve(next_row);
    const Eigen::RowVectorXcd resid = Zq.row(s) - r.transpose() * Zq.topRows(s);
    Eigen::Index pick = -1;
    double best = kNegInf;
    for (Eigen::Index j = 0; j < nq; ++j) {
      if (std::find(chosen.begin(), chosen.end(), j) != chosen.end()) continue;
      const double v = kw(j) + std::log(std::abs(resid(j)));
      if (pick < 0 || v > best) {
        pick = j;
        best = v;
      }
    }
    chosen.push_back(pick);
  }

  auto as_mesh = [&] {
    std::vector<Eigen::Index> idx;
    for (auto j : chosen) idx.push_back(q[static_cast<std::size_t>(j)]);
    return idx;
  };
  double value = weighted_log_det(mesh, ev.Z, k, as_mesh());

  for (int step = 0; step < max_exchanges && std::isfinite(value); ++step) {
    Eigen::MatrixXcd A(M, M);
    for (Eigen::Index l = 0; l < M; ++l) A.col(l) = Zq.col(chosen[static_cast<std::size_t>(l)]);
    // Replacing point i by eta scales |det| by |(A^{-1} z(eta))_i| w(eta)^k / w(zeta_i)^k.
    const Eigen::MatrixXcd X = A.partialPivLu().solve(Zq);
    double gain = 1e-12;
    Eigen::Index bi = -1, bj = -1;
    for (Eigen::Index j = 0; j < nq; ++j) {
      for (Eigen::Index i = 0; i < M; ++i) {
        const double g = std::log(std::abs(X(i, j))) + kw(j) - kw(chosen[static_cast<std::size_t>(i)]);
        if (g > gain) {
          gain = g;
          bi = i;
          bj = j;
        }
      }
    }
    if (bi < 0) break;
    auto trial = chosen;
    trial[static_cast<std::size_t>(bi)] = bj;
    std::swap(trial, chosen);
    const double v = weighted_log_det(mesh, ev.Z, k, as_mesh());
    if (!(v > value)) {
      std::swap(trial, chosen);
      break;
    }
    value = v;
  }

  Candidate out{value, as_mesh()};
  std::sort(out.indices.begin(), out.indices.end());
  return out;
}

Candidate greedy(const Mesh& mesh, const Evaluations& ev, int k, const std::vector<Eigen::Index>& q,
                 const VdmOptions& options) {
  std::vector<Eigen::Index> order(q.size());
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  if (options.seed != 0) {
    std::mt19937_64 rng(options.seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return mesh.log_weights()(q[static_cast<std::size_t>(a)]) > mesh.log_weights()(q[static_cast<std::size_t>(b)]);
  });
  const auto restarts = static_cast<std::size_t>(std::clamp<long>(options.restarts, 1, static_cast<long>(q.size())));
  std::vector<Candidate> results(restarts);
  parallel_for(restarts, options.workers, [&](std::size_t r) {
    results[r] = greedy_from(mesh, ev, k, q, order[r], options.max_exchanges);
  });
  Candidate out;
  for (auto& c : results)
    if (out.indices.empty() || c.beats(out)) out = std::move(c);
  return out;
}

}  // namespace

double binomial(long n, long r) {
  if (r < 0 || r > n) return 0.0;
  r = std::min(r, n - r);
  double b = 1.0;
  for (long i = 1; i <= r; ++i) b = b * static_cast<double>(n - r + i) / static_cast<double>(i);
  return std::round(b);
}

std::vector<Exponent> vandermonde_basis(const ConvexBody& body, int k, std::size_t s) {
  auto lattice = enumerate_lattice(body, k);
  if (s > lattice.size()) {
    throw Error(ErrorCode::TooManyPoints, std::to_string(s) + " points exceed M_k = " + std::to_string(lattice.size()));
  }
  lattice.resize(s);
  return lattice;
}

VdmValue vandermonde_det(const Mesh& mesh, const ConvexBody& body, int k,
                         const std::vector<Eigen::Index>& point_indices) {
  if (mesh.dim() != body.dim()) throw Error(ErrorCode::DimensionMismatch, "mesh dimension does not match body");
  for (auto p : point_indices)
    if (p < 0 || p >= mesh.size()) throw Error(ErrorCode::InvalidArgument, "point index out of range");
  const auto basis = vandermonde_basis(body, k, point_indices.size());
  VdmValue out;
  out.k = k;
  out.s = static_cast<int>(point_indices.size());
  out.point_indices = point_indices;
  if (has_repeats(mesh, point_indices)) return out;
  out.log_abs = weighted_log_det(mesh, monomial_matrix(mesh, basis), k, point_indices);
  return out;
}

VdmValue max_vdm(const Mesh& mesh, const ConvexBody& body, int k, const VdmOptions& options) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "k must be nonnegative");
  const auto ev = evaluate_basis(mesh, body, k);
  const auto q = supported_points(mesh);
  const auto M = static_cast<long>(ev.basis.size());
  if (static_cast<long>(q.size()) < M) {
    throw Error(ErrorCode::InsufficientSupport, "mesh has " + std::to_string(q.size()) +
                                                    " points with positive weight but M_k = " + std::to_string(M));
  }
  const double subsets = binomial(static_cast<long>(q.size()), M);
  bool exhaustive = options.search == VdmSearch::BruteForce ||
                    (options.search == VdmSearch::Auto && subsets <= options.subset_cap);
  if (options.search == VdmSearch::BruteForce && subsets > options.subset_cap) {
    throw Error(ErrorCode::InvalidArgument, "brute force would visit " + std::to_string(subsets) +
                                                " subsets, above the cap");
  }
  const Candidate best = exhaustive ? brute_force(mesh, ev, k, q, options.workers) : greedy(mesh, ev, k, q, options);
  VdmValue out;
  out.log_abs = best.value;
  out.point_indices = best.indices;
  out.k = k;
  out.s = static_cast<int>(M);
  out.exact = exhaustive;
  return out;
}

std::vector<Eigen::Index> fekete_points(const Mesh& mesh, const ConvexBody& body, int k, const VdmOptions& options) {
  return max_vdm(mesh, body, k, options).point_indices;
}

}  // namespace ctdiam
