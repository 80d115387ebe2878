// SPDX-License-Identifier: Apache-2.0
#include "ctdiam/order.hpp"

#include "ctdiam/error.hpp"

#include <string>

namespace ctdiam {

const char* to_string(OrderKind kind) {
  return kind == OrderKind::Grevlex ? "grevlex" : "cgrevlex";
}

OrderKind parse_order_kind(std::string_view text) {
  if (text == "grevlex") return OrderKind::Grevlex;
  if (text == "cgrevlex" || text == "C" || text == "c-grevlex") return OrderKind::CGrevlex;
  throw Error(ErrorCode::ParseError, "unknown ordering '" + std::string(text) + "'");
}

std::strong_ordering grevlex_cmp(const Exponent& alpha, const Exponent& beta) {
  if (alpha.dim() != beta.dim()) throw Error(ErrorCode::DimensionMismatch, "comparing exponents of different dimension");
  if (const auto c = alpha.total_degree() <=> beta.total_degree(); c != 0) return c;
  for (int j = 0; j < alpha.dim(); ++j) {
    if (alpha[j] != beta[j]) return alpha[j] <=> beta[j];
  }
  return std::strong_ordering::equal;
}

std::strong_ordering cgrevlex_cmp(const ConvexBody& body, const Exponent& alpha, const Exponent& beta) {
  if (alpha.dim() != beta.dim()) throw Error(ErrorCode::DimensionMismatch, "comparing exponents of different dimension");
  const Rational ga = body.gauge(alpha);
  const Rational gb = body.gauge(beta);
  if (ga < gb) return std::strong_ordering::less;
  if (gb < ga) return std::strong_ordering::greater;
  return grevlex_cmp(alpha, beta);
}

std::strong_ordering MonomialOrder::operator()(const Exponent& alpha, const Exponent& beta) const {
  if (kind_ == OrderKind::Grevlex) return grevlex_cmp(alpha, beta);
  return cgrevlex_cmp(*body_, alpha, beta);
}

std::vector<Exponent> monomial_sequence(const ConvexBody& body, std::size_t count) {
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "count must be positive");
  // kC is a down-set of the body-graded order, so its sorted lattice is a
  // prefix of the global sequence.
  for (int k = 0;; ++k) {
    auto lattice = enumerate_lattice(body, k);
    if (lattice.size() >= count) {
      lattice.resize(count);
      return lattice;
    }
  }
}

}  // namespace ctdiam
