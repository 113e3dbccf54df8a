#include "chebpa/bigint.hpp"

#include "chebpa/error.hpp"

#include <cctype>

namespace chebpa {

BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BigInt power(const BigInt& base, unsigned exponent) {
  BigInt r = 1;
  for (unsigned i = 0; i < exponent; ++i) r *= base;
  return r;
}

BigInt ceil_div(const BigInt& num, const BigInt& den) {
  if (den <= 0) throw DomainError("ceil_div: non-positive divisor");
  BigInt q = num / den;
  if (q * den != num) q += 1;
  return q;
}

BigInt floor_div(const BigInt& num, const BigInt& den) {
  if (den <= 0) throw DomainError("floor_div: non-positive divisor");
  return num / den;
}

BigInt parse_bigint(const std::string& text) {
  if (text.empty()) throw FormatError("empty integer");
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw FormatError("not a non-negative integer: '" + text + "'");
    }
  }
  return BigInt(text);
}

}  // namespace chebpa
