#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace condense {

// Operator indices n and sequence coordinates grow far past 2^64 in a
// realistic run, so both are arbitrary-precision integers.
using Index = boost::multiprecision::cpp_int;

// Accepts plain decimal digits ("1234") or a power-of-ten shorthand ("1e40",
// "5e12"). Throws std::invalid_argument on anything else.
Index parse_index(std::string_view text);

std::string to_string(const Index& n);

// Nearest double.
double to_double(const Index& n);

// Smallest integer >= x. Requires x finite.
Index ceil_to_index(double x);

// Cantor pairing (n + m - 2)(n + m - 1)/2 + n, a bijection N x N -> N.
Index cantor_pair(const Index& n, const Index& m);

}  // namespace condense
