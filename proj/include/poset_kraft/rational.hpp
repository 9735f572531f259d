#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace poset_kraft {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational used for every Kraft, LYM and permutation-constant value.
/// Always kept in lowest terms with a positive denominator.
using ExactRational = boost::multiprecision::cpp_rational;

/// `p/q`, with the denominator printed even when it is 1 (e.g. `1/1`, `0/1`).
std::string format_fraction(const ExactRational& value);

/// Shortest decimal string that round-trips the nearest double.
std::string format_decimal(const ExactRational& value);

BigInt binomial(unsigned n, unsigned k);
BigInt factorial(unsigned n);
/// n!/(n-k)!, the number of k-element partial permutations of [n].
BigInt falling_factorial(unsigned n, unsigned k);

}  // namespace poset_kraft
