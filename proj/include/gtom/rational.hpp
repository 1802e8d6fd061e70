#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Core>
#include <string>
#include <string_view>

namespace gtom {

// Expression templates off so the scalar composes with Eigen expressions.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = Matrix<Rational>;
using RationalVector = Vector<Rational>;

/// "p/q" with q >= 1; integers keep the "/1".
std::string to_fraction_string(const Rational& q);
/// Accepts "p/q" or "p"; throws std::invalid_argument on anything else.
Rational parse_fraction(std::string_view text);

}  // namespace gtom
