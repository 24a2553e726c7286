#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace transchrome {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Always "a/b" with b > 0 and gcd(a, b) = 1, e.g. "-3/2", "2/1", "0/1".
std::string to_string(const Rational& q);

/// Accepts "a/b" or a bare integer "a". Throws ParseError.
Rational parse_rational(std::string_view text);

}  // namespace transchrome
