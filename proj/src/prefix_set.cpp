#include "chebpa/prefix_set.hpp"

#include "chebpa/error.hpp"

#include <algorithm>

namespace chebpa {

PrefixSet::PrefixSet(int universe, int length, int distance, std::vector<SymbolString> members)
    : universe_(universe), length_(length), distance_(distance), members_(std::move(members)) {
  if (universe_ < 1 || length_ < 1 || length_ > universe_) {
    throw DomainError("prefix set needs 1 <= m <= n (n=" + std::to_string(universe_) +
                      ", m=" + std::to_string(length_) + ")");
  }
  if (distance_ < 1) throw DomainError("prefix set distance must be positive");
  for (const auto& s : members_) {
    if (s.size() != static_cast<std::size_t>(length_)) throw DomainError("prefix of wrong length");
    std::vector<bool> seen(static_cast<std::size_t>(universe_) + 1, false);
    for (Symbol x : s) {
      if (x < 1 || x > universe_) throw DomainError("prefix symbol outside [1..n]");
      if (seen[static_cast<std::size_t>(x)]) throw DomainError("prefix repeats a symbol");
      seen[static_cast<std::size_t>(x)] = true;
    }
  }
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

std::optional<std::pair<SymbolString, SymbolString>> PrefixSet::violation() const {
  for (std::size_t i = 0; i < members_.size(); ++i) {
    for (std::size_t j = i + 1; j < members_.size(); ++j) {
      if (string_distance(members_[i], members_[j]) < distance_) {
        return std::make_pair(members_[i], members_[j]);
      }
    }
  }
  return std::nullopt;
}

Alphabet PrefixSet::complement(const SymbolString& member) const {
  return Alphabet::complement_of(member, universe_);
}

}  // namespace chebpa
