#pragma once

#include "chebpa/core.hpp"

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace chebpa {

// All injective strings of a fixed length over an alphabet, indexed in
// lexicographic order. With length == alphabet size these are the
// permutations of the alphabet.
class StringSpace {
 public:
  StringSpace(Alphabet alphabet, std::size_t length);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t length() const { return length_; }
  std::uint64_t size() const { return size_; }

  void unrank(std::uint64_t index, std::span<Symbol> out) const;
  std::vector<Symbol> unrank(std::uint64_t index) const;
  // Throws DomainError when `s` is not a member.
  std::uint64_t rank(std::span<const Symbol> s) const;

  // Calls visit(rank) for every member within Chebyshev distance `radius` of
  // `center` (including the center when it is a member). Ranks arrive in
  // increasing order.
  template <class Visit>
  void for_each_within(std::span<const Symbol> center, int radius, Visit&& visit) const {
    walk(center, radius, 0, 0, 0, visit);
  }

 private:
  template <class Visit>
  void walk(std::span<const Symbol> center, int radius, std::size_t pos, std::uint64_t used,
            std::uint64_t acc, Visit& visit) const {
    if (pos == length_) {
      visit(acc);
      return;
    }
    const auto syms = alphabet_.symbols();
    const Symbol lo = center[pos] - radius;
    const Symbol hi = center[pos] + radius;
    std::size_t k = lower_index(lo);
    for (; k < syms.size() && syms[k] <= hi; ++k) {
      const std::uint64_t bit = std::uint64_t{1} << k;
      if (used & bit) continue;
      const auto smaller = static_cast<std::uint64_t>(std::popcount(~used & (bit - 1)));
      walk(center, radius, pos + 1, used | bit, acc + smaller * place_value_[pos], visit);
    }
  }

  std::size_t lower_index(Symbol s) const;
  int index_of(Symbol s) const;

  Alphabet alphabet_;
  std::size_t length_;
  std::uint64_t size_ = 0;
  // Number of completions after fixing positions [0..i].
  std::vector<std::uint64_t> place_value_;
};

}  // namespace chebpa
