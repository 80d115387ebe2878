// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <string>
#include <string_view>

namespace ctdiam {

/// Exact rational scalar. Expression templates are disabled so the type
/// behaves like an ordinary value type inside Eigen containers.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;

using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

// Rational Eigen objects must not be constructed directly from expressions
// (boost's converting constructors confuse Eigen's overload resolution), so
// these helpers allocate and fill instead.
RationalVector rational_zeros(Eigen::Index n);
RationalVector rational_ones(Eigen::Index n);
RationalMatrix rational_zeros(Eigen::Index rows, Eigen::Index cols);

/// Parses "p/q", "-p", "p" or a plain decimal such as "0.125".
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);

Integer floor(const Rational& value);
Integer ceil(const Rational& value);

inline double to_double(const Rational& value) { return static_cast<double>(value); }

}  // namespace ctdiam
