#include "chebpa/core.hpp"

#include "chebpa/error.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <sstream>

namespace chebpa {

namespace {

std::string join(std::span<const Symbol> values, char sep) {
  std::ostringstream out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << sep;
    out << values[i];
  }
  return out.str();
}

bool span_less(std::span<const Symbol> a, std::span<const Symbol> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

// ---------------------------------------------------------------- Alphabet

Alphabet::Alphabet(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw DomainError("alphabet must be non-empty");
  if (symbols_.front() < 1) throw DomainError("alphabet symbols must be >= 1");
  for (std::size_t i = 1; i < symbols_.size(); ++i) {
    if (symbols_[i] <= symbols_[i - 1]) {
      throw DomainError("alphabet symbols must be strictly increasing: " + join(symbols_, ' '));
    }
  }
}

Alphabet Alphabet::range(int n) {
  if (n < 1) throw DomainError("alphabet [1..n] needs n >= 1");
  std::vector<Symbol> s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = i + 1;
  return Alphabet(std::move(s));
}

Alphabet Alphabet::complement_of(std::span<const Symbol> used, int universe) {
  std::vector<bool> taken(static_cast<std::size_t>(universe) + 1, false);
  for (Symbol s : used) {
    if (s < 1 || s > universe) {
      throw DomainError("symbol " + std::to_string(s) + " outside [1.." + std::to_string(universe) + "]");
    }
    taken[static_cast<std::size_t>(s)] = true;
  }
  std::vector<Symbol> rest;
  for (int s = 1; s <= universe; ++s) {
    if (!taken[static_cast<std::size_t>(s)]) rest.push_back(s);
  }
  if (rest.empty()) throw DomainError("complement is empty");
  return Alphabet(std::move(rest));
}

bool Alphabet::contains(Symbol s) const {
  return std::binary_search(symbols_.begin(), symbols_.end(), s);
}

Alphabet Alphabet::complement(int universe) const {
  if (max() > universe) throw DomainError("alphabet exceeds universe");
  return complement_of(symbols_, universe);
}

std::string Alphabet::to_string() const { return "{" + join(symbols_, ',') + "}"; }

// ------------------------------------------------------------- Permutation

Permutation::Permutation(std::vector<Symbol> values) : values_(std::move(values)) {
  if (values_.empty()) throw DomainError("permutation must be non-empty");
  std::vector<Symbol> sorted = values_;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() < 1) throw DomainError("permutation symbols must be >= 1");
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError("permutation repeats a symbol: " + join(values_, ' '));
  }
}

Permutation Permutation::identity(int n) {
  if (n < 1) throw DomainError("identity needs n >= 1");
  std::vector<Symbol> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i + 1;
  return Permutation(std::move(v));
}

Alphabet Permutation::alphabet() const {
  std::vector<Symbol> sorted = values_;
  std::sort(sorted.begin(), sorted.end());
  return Alphabet(std::move(sorted));
}

bool Permutation::over(const Alphabet& alphabet) const {
  if (values_.size() != alphabet.size()) return false;
  return std::all_of(values_.begin(), values_.end(),
                     [&](Symbol s) { return alphabet.contains(s); });
}

std::string Permutation::to_string() const { return join(values_, ' '); }

// ----------------------------------------------------------------- metric

int string_distance(std::span<const Symbol> a, std::span<const Symbol> b) {
  if (a.size() != b.size()) {
    throw ComparabilityError("strings of different lengths (" + std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()) + ")");
  }
  int best = 0;
  for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, std::abs(a[i] - b[i]));
  return best;
}

int chebyshev_distance(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size() || a.alphabet() != b.alphabet()) {
    throw ComparabilityError("permutations over different alphabets: " + a.to_string() + " / " +
                             b.to_string());
  }
  return string_distance(a.values(), b.values());
}

// ------------------------------------------------------- PermutationArray

PermutationArray::PermutationArray(Alphabet alphabet, int declared_distance,
                                   std::vector<Permutation> members)
    : alphabet_(std::move(alphabet)), declared_distance_(declared_distance), members_(std::move(members)) {
  if (declared_distance_ < 1) throw DomainError("declared distance must be positive");
  for (const auto& m : members_) {
    if (!m.over(alphabet_)) {
      throw ComparabilityError("member " + m.to_string() + " is not a permutation of " + alphabet_.to_string());
    }
  }
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool PermutationArray::contains(const Permutation& p) const {
  return std::binary_search(members_.begin(), members_.end(), p);
}

std::optional<int> min_pairwise_distance(std::span<const Permutation> members) {
  if (members.size() < 2) return std::nullopt;
  const Alphabet alphabet = members.front().alphabet();
  for (const auto& m : members) {
    if (!m.over(alphabet)) throw ComparabilityError("mixed alphabets in array");
  }
  int best = -1;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      int dist = string_distance(members[i].values(), members[j].values());
      if (best < 0 || dist < best) best = dist;
    }
  }
  return best;
}

std::optional<int> min_pairwise_distance(const PermutationArray& array) {
  return min_pairwise_distance(std::span<const Permutation>(array.members()));
}

// ------------------------------------------------------------------ verify

namespace {

// Enumerates permutations of `alphabet` within `radius` of `center`,
// in lexicographic order, stopping when `visit` returns true.
class BallWalker {
 public:
  BallWalker(const Alphabet& alphabet, std::span<const Symbol> center, int radius)
      : alphabet_(alphabet), center_(center), radius_(radius), used_(alphabet.size(), false),
        current_(center.size(), 0) {}

  template <class Visit>
  bool walk(Visit&& visit, std::size_t pos = 0) {
    if (pos == center_.size()) return visit(std::span<const Symbol>(current_));
    const auto syms = alphabet_.symbols();
    const Symbol lo = center_[pos] - radius_;
    const Symbol hi = center_[pos] + radius_;
    auto first = std::lower_bound(syms.begin(), syms.end(), lo);
    for (auto it = first; it != syms.end() && *it <= hi; ++it) {
      const auto k = static_cast<std::size_t>(it - syms.begin());
      if (used_[k]) continue;
      used_[k] = true;
      current_[pos] = *it;
      const bool stop = walk(visit, pos + 1);
      used_[k] = false;
      if (stop) return true;
    }
    return false;
  }

 private:
  const Alphabet& alphabet_;
  std::span<const Symbol> center_;
  int radius_;
  std::vector<bool> used_;
  std::vector<Symbol> current_;
};

VerifyReport violation(const Permutation& a, const Permutation& b, int dist, int declared) {
  VerifyReport r;
  r.valid = false;
  r.witness = std::make_pair(a, b);
  r.reason = "distance " + std::to_string(dist) + " < " + std::to_string(declared) + " between [" +
             a.to_string() + "] and [" + b.to_string() + "]";
  return r;
}

}  // namespace

VerifyReport verify(const PermutationArray& array) {
  const auto& members = array.members();
  const int d = array.declared_distance();
  if (members.size() < 2 || d <= 1) return {};

  // Large arrays with small balls are checked by enumerating each member's
  // radius-(d-1) ball and probing membership; otherwise all pairs.
  bool use_balls = false;
  if (members.size() > 512) {
    const std::size_t budget = members.size() / 8;
    std::size_t count = 0;
    BallWalker probe(array.alphabet(), members.front().values(), d - 1);
    probe.walk([&](std::span<const Symbol>) { return ++count > budget; });
    use_balls = count <= budget;
  }

  if (use_balls) {
    for (const auto& p : members) {
      std::optional<Permutation> hit;
      BallWalker walker(array.alphabet(), p.values(), d - 1);
      walker.walk([&](std::span<const Symbol> q) {
        if (!span_less(p.values(), q)) return false;
        auto it = std::lower_bound(members.begin(), members.end(), q,
                                   [](const Permutation& m, std::span<const Symbol> key) {
                                     return span_less(m.values(), key);
                                   });
        if (it != members.end() && std::equal(q.begin(), q.end(), it->values().begin())) {
          hit = *it;
          return true;
        }
        return false;
      });
      if (hit) return violation(p, *hit, string_distance(p.values(), hit->values()), d);
    }
    return {};
  }

  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      int dist = string_distance(members[i].values(), members[j].values());
      if (dist < d) return violation(members[i], members[j], dist, d);
    }
  }
  return {};
}

void require_valid(const PermutationArray& array, const std::string& context) {
  auto report = verify(array);
  if (!report.valid) throw VerificationError(context + ": " + report.reason);
}

}  // namespace chebpa
