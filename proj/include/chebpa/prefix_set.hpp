#pragma once

#include "chebpa/core.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace chebpa {

using SymbolString = std::vector<Symbol>;

// Length-m injective strings over [1..n] meant to be pairwise at Chebyshev
// distance >= d. Members are sorted and unique; shape is checked on
// construction, distances by violation().
class PrefixSet {
 public:
  PrefixSet(int universe, int length, int distance, std::vector<SymbolString> members = {});

  int universe() const { return universe_; }
  int length() const { return length_; }
  int distance() const { return distance_; }
  const std::vector<SymbolString>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

  // First pair (in canonical order) closer than distance(), if any.
  std::optional<std::pair<SymbolString, SymbolString>> violation() const;
  bool valid() const { return !violation().has_value(); }

  // Symbols of [1..universe] not used by `member`.
  Alphabet complement(const SymbolString& member) const;

  bool operator==(const PrefixSet&) const = default;

 private:
  int universe_;
  int length_;
  int distance_;
  std::vector<SymbolString> members_;
};

}  // namespace chebpa
