#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace chebpa {

using BigInt = boost::multiprecision::cpp_int;

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);
BigInt power(const BigInt& base, unsigned exponent);

// Ceiling and floor division of non-negative values.
BigInt ceil_div(const BigInt& num, const BigInt& den);
BigInt floor_div(const BigInt& num, const BigInt& den);

inline std::string to_string(const BigInt& v) { return v.str(); }
BigInt parse_bigint(const std::string& text);

}  // namespace chebpa
