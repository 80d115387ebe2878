// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace ctdiam {

/// Multi-index alpha in Z^N_+, the exponent of the monomial z^alpha.
///
/// The defaulted comparison is plain lexicographic storage order and exists
/// only so exponents can key ordered containers; the monomial orders live in
/// order.hpp.
class Exponent {
 public:
  Exponent() = default;
  explicit Exponent(std::vector<int> entries);
  Exponent(std::initializer_list<int> entries);

  static Exponent zero(int dim) { return Exponent(std::vector<int>(static_cast<std::size_t>(dim), 0)); }

  [[nodiscard]] int dim() const noexcept { return static_cast<int>(entries_.size()); }
  [[nodiscard]] int operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] const std::vector<int>& entries() const noexcept { return entries_; }

  /// Ordinary total degree |alpha|.
  [[nodiscard]] long total_degree() const noexcept;
  [[nodiscard]] bool is_zero() const noexcept;

  Exponent& operator+=(const Exponent& other);
  friend Exponent operator+(Exponent lhs, const Exponent& rhs) { return lhs += rhs; }
  friend Exponent operator*(int j, const Exponent& alpha);

  friend bool operator==(const Exponent&, const Exponent&) = default;
  friend auto operator<=>(const Exponent&, const Exponent&) = default;

  [[nodiscard]] std::string to_string() const;

 private:
  std::vector<int> entries_;
};

}  // namespace ctdiam
