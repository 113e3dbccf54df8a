#pragma once

#include "chebpa/bigint.hpp"
#include "chebpa/core.hpp"
#include "chebpa/prefix_set.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace chebpa {

// Sizes and block structure for the two-factor product: the first factor
// lives on n1 = a*d1 + r1 symbols, the second on n2 = a*d2 + r2.
struct ProductSplit {
  int n1 = 0, n2 = 0, d1 = 0, d2 = 0;
  int a = 0;
  int r1 = 0, r2 = 0;

  // Throws DomainError unless the fields are consistent.
  void validate() const;

  // The split with the largest common block count a, if one exists.
  static std::optional<ProductSplit> find(int n1, int d1, int n2, int d2);

  // Images of the two factors' symbols in [1..n1+n2].
  Symbol map_first(Symbol x) const;
  Symbol map_second(Symbol x) const;
};

// All permutations of [1..n] congruent to the identity mod d, position-wise.
PermutationArray mod_code(int n, int d);
BigInt mod_code_size(int n, int d);

// { F1(s) F2(t) } over [1..n1+n2] at distance d1 + d2. A must be over
// [1..n1] with distance >= d1, B over [1..n2] with distance >= d2.
PermutationArray product(const PermutationArray& a, const PermutationArray& b, const ProductSplit& split);

// r-fold product of A with itself; (n, d) -> (r*n, r*d).
PermutationArray product_power(const PermutationArray& a, int r);

// (n-2, 2) over [1..n-2] -> (n, 2) of size |A| * C(n, 2).
PermutationArray insert_pair(const PermutationArray& a);

// The positions {1, d+1, 2d+1, ...} that fit in [1..n+1].
std::vector<int> default_expand_positions(int n, int d);

// Prepend each leading symbol m in `positions`, shifting symbols >= m up by
// one. Positions must be increasing, at most n+1 and spaced at least d
// apart; an empty list means default_expand_positions.
PermutationArray expand(const PermutationArray& a, std::vector<int> positions = {});

// (n, d) -> (n+1, d+1) for d < n <= 2d, same size.
PermutationArray lift_diagonal(const PermutationArray& a);

// Maps a prefix and its complement alphabet to a suffix array over exactly
// that alphabet.
using SuffixSupplier = std::function<PermutationArray(const SymbolString& prefix, const Alphabet& complement)>;

// Every prefix followed by every member of its suffix array.
PermutationArray concat_prefixes(const PrefixSet& prefixes, const SuffixSupplier& suffixes);

}  // namespace chebpa
