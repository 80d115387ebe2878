// SPDX-License-Identifier: Apache-2.0
#include "ctdiam/exponent.hpp"

#include "ctdiam/error.hpp"

#include <algorithm>
#include <numeric>

namespace ctdiam {

Exponent::Exponent(std::vector<int> entries) : entries_(std::move(entries)) {
  if (std::any_of(entries_.begin(), entries_.end(), [](int e) { return e < 0; })) {
    throw Error(ErrorCode::InvalidArgument, "exponent entries must be nonnegative");
  }
}

Exponent::Exponent(std::initializer_list<int> entries) : Exponent(std::vector<int>(entries)) {}

long Exponent::total_degree() const noexcept {
  return std::accumulate(entries_.begin(), entries_.end(), 0L);
}

bool Exponent::is_zero() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](int e) { return e == 0; });
}

Exponent& Exponent::operator+=(const Exponent& other) {
  if (other.dim() != dim()) throw Error(ErrorCode::DimensionMismatch, "adding exponents of different dimension");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

Exponent operator*(int j, const Exponent& alpha) {
  if (j < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent multiple");
  std::vector<int> e = alpha.entries_;
  for (int& v : e) v *= j;
  return Exponent(std::move(e));
}

std::string Exponent::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(entries_[i]);
  }
  return s + ")";
}

}  // namespace ctdiam
