// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ctdiam/body.hpp"
#include "ctdiam/exponent.hpp"

#include <compare>
#include <string_view>
#include <vector>

namespace ctdiam {

enum class OrderKind { Grevlex, CGrevlex };

const char* to_string(OrderKind kind);
OrderKind parse_order_kind(std::string_view text);

/// Total degree first; on a tie the exponent with the smaller entry at the
/// first differing index comes first. Throws DimensionMismatch.
std::strong_ordering grevlex_cmp(const Exponent& alpha, const Exponent& beta);

/// Exact gauge first, grevlex on a gauge tie.
std::strong_ordering cgrevlex_cmp(const ConvexBody& body, const Exponent& alpha, const Exponent& beta);

/// A monomial order bound to its body. The body must outlive the order.
class MonomialOrder {
 public:
  static MonomialOrder grevlex() { return MonomialOrder(OrderKind::Grevlex, nullptr); }
  static MonomialOrder cgrevlex(const ConvexBody& body) { return MonomialOrder(OrderKind::CGrevlex, &body); }
  static MonomialOrder make(OrderKind kind, const ConvexBody& body) { return MonomialOrder(kind, &body); }

  [[nodiscard]] OrderKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::strong_ordering operator()(const Exponent& alpha, const Exponent& beta) const;
  [[nodiscard]] bool less(const Exponent& alpha, const Exponent& beta) const { return (*this)(alpha, beta) < 0; }

 private:
  MonomialOrder(OrderKind kind, const ConvexBody* body) : kind_(kind), body_(body) {}

  OrderKind kind_;
  const ConvexBody* body_;
};

/// The first `count` exponents of Z^N_+ in increasing body-graded order.
std::vector<Exponent> monomial_sequence(const ConvexBody& body, std::size_t count);

}  // namespace ctdiam
