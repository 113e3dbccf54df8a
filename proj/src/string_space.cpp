#include "chebpa/string_space.hpp"

#include "chebpa/error.hpp"

#include <algorithm>
#include <limits>

namespace chebpa {

StringSpace::StringSpace(Alphabet alphabet, std::size_t length)
    : alphabet_(std::move(alphabet)), length_(length) {
  const std::size_t a = alphabet_.size();
  if (length_ < 1 || length_ > a) {
    throw DomainError("string length " + std::to_string(length_) + " must lie in [1.." +
                      std::to_string(a) + "]");
  }
  if (a > 63) throw InfeasibleError("alphabets above 63 symbols are not supported");

  place_value_.assign(length_, 1);
  for (std::size_t i = length_; i-- > 0;) {
    // place_value_[i] = (a-i-1)! / (a-length)!
    std::uint64_t v = 1;
    for (std::size_t f = a - length_ + 1; f <= a - i - 1; ++f) {
      if (v > std::numeric_limits<std::uint64_t>::max() / f) {
        throw InfeasibleError("string space too large to index");
      }
      v *= f;
    }
    place_value_[i] = v;
  }
  const std::uint64_t head = place_value_[0];
  if (head > std::numeric_limits<std::uint64_t>::max() / a) {
    throw InfeasibleError("string space too large to index");
  }
  size_ = head * a;
}

std::size_t StringSpace::lower_index(Symbol s) const {
  const auto syms = alphabet_.symbols();
  return static_cast<std::size_t>(std::lower_bound(syms.begin(), syms.end(), s) - syms.begin());
}

int StringSpace::index_of(Symbol s) const {
  const std::size_t k = lower_index(s);
  if (k >= alphabet_.size() || alphabet_[k] != s) return -1;
  return static_cast<int>(k);
}

void StringSpace::unrank(std::uint64_t index, std::span<Symbol> out) const {
  if (index >= size_) throw DomainError("string index out of range");
  if (out.size() != length_) throw DomainError("unrank: output length mismatch");
  std::uint64_t used = 0;
  for (std::size_t pos = 0; pos < length_; ++pos) {
    std::uint64_t digit = index / place_value_[pos];
    index %= place_value_[pos];
    // digit-th unused alphabet index
    for (std::size_t k = 0; k < alphabet_.size(); ++k) {
      if (used & (std::uint64_t{1} << k)) continue;
      if (digit-- == 0) {
        used |= std::uint64_t{1} << k;
        out[pos] = alphabet_[k];
        break;
      }
    }
  }
}

std::vector<Symbol> StringSpace::unrank(std::uint64_t index) const {
  std::vector<Symbol> out(length_);
  unrank(index, out);
  return out;
}

std::uint64_t StringSpace::rank(std::span<const Symbol> s) const {
  if (s.size() != length_) throw DomainError("rank: length mismatch");
  std::uint64_t used = 0;
  std::uint64_t acc = 0;
  for (std::size_t pos = 0; pos < length_; ++pos) {
    const int k = index_of(s[pos]);
    if (k < 0) throw DomainError("symbol " + std::to_string(s[pos]) + " not in alphabet");
    const std::uint64_t bit = std::uint64_t{1} << k;
    if (used & bit) throw DomainError("string repeats symbol " + std::to_string(s[pos]));
    acc += static_cast<std::uint64_t>(std::popcount(~used & (bit - 1))) * place_value_[pos];
    used |= bit;
  }
  return acc;
}

}  // namespace chebpa
