#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace chebpa {

// Symbols are positive integers and appear 1-based everywhere outside the
// library.
using Symbol = int;

// Strictly increasing set of positive symbols. Need not be contiguous.
class Alphabet {
 public:
  explicit Alphabet(std::vector<Symbol> symbols);

  // [1..n]
  static Alphabet range(int n);
  // [1..universe] minus the symbols in `used`.
  static Alphabet complement_of(std::span<const Symbol> used, int universe);

  std::span<const Symbol> symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  Symbol min() const { return symbols_.front(); }
  Symbol max() const { return symbols_.back(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  bool contains(Symbol s) const;
  bool is_range() const { return max() == static_cast<Symbol>(size()); }

  // Symbols of [1..universe] not in this alphabet.
  Alphabet complement(int universe) const;

  std::string to_string() const;

  auto operator<=>(const Alphabet&) const = default;
  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<Symbol> symbols_;
};

// A bijection from positions onto an alphabet, stored as its value sequence.
class Permutation {
 public:
  explicit Permutation(std::vector<Symbol> values);

  static Permutation identity(int n);

  std::span<const Symbol> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  Symbol operator[](std::size_t i) const { return values_[i]; }
  Alphabet alphabet() const;
  bool over(const Alphabet& alphabet) const;

  std::string to_string() const;

  auto operator<=>(const Permutation&) const = default;
  bool operator==(const Permutation&) const = default;

 private:
  std::vector<Symbol> values_;
};

// Position-wise max |a_i - b_i| of two equal-length strings.
int string_distance(std::span<const Symbol> a, std::span<const Symbol> b);

// Requires identical alphabets; throws ComparabilityError otherwise.
int chebyshev_distance(const Permutation& a, const Permutation& b);

// A set of permutations over one alphabet together with the distance it
// claims. Members are kept sorted and unique. Construction checks shape
// only; distances are checked by verify().
class PermutationArray {
 public:
  PermutationArray(Alphabet alphabet, int declared_distance,
                   std::vector<Permutation> members = {});

  const Alphabet& alphabet() const { return alphabet_; }
  int declared_distance() const { return declared_distance_; }
  const std::vector<Permutation>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(const Permutation& p) const;

  bool operator==(const PermutationArray&) const = default;

 private:
  Alphabet alphabet_;
  int declared_distance_;
  std::vector<Permutation> members_;
};

// nullopt means "unconstrained" (fewer than two members).
std::optional<int> min_pairwise_distance(const PermutationArray& array);
std::optional<int> min_pairwise_distance(std::span<const Permutation> members);

struct VerifyReport {
  bool valid = true;
  std::optional<std::pair<Permutation, Permutation>> witness;
  std::string reason;
};

VerifyReport verify(const PermutationArray& array);

// Throws VerificationError with the witness when verify() fails.
void require_valid(const PermutationArray& array, const std::string& context);

}  // namespace chebpa
