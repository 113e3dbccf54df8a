#pragma once

#include "chebpa/clique.hpp"
#include "chebpa/core.hpp"
#include "chebpa/prefix_set.hpp"
#include "chebpa/string_space.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace chebpa {

// Largest candidate space scanned exhaustively by default (9!).
inline constexpr std::uint64_t kDefaultCandidateCap = 362880;
// Largest distance graph handed to the exact clique solver by default.
inline constexpr std::size_t kDefaultExactVertexCap = 5100;
// Largest distance graph the weighted local search will materialise.
inline constexpr std::size_t kHeuristicVertexCap = 40000;

enum class CompletionOrder {
  // Seeded Fisher-Yates shuffle of lexicographic order.
  shuffled,
  // Plain lexicographic order after the random initial picks.
  lexicographic,
};

struct SearchConfig {
  std::uint64_t seed = 0;
  int restarts = 50;
  Seconds time_budget{60.0};
  // Random picks before greedy completion; nullopt means ceil(candidates / 1000).
  std::optional<std::uint64_t> initial_random_count;
  CompletionOrder completion = CompletionOrder::lexicographic;
  // Put the lexicographically first candidate (the identity) in every run.
  bool seed_identity = false;
  // Worker threads; 0 means hardware concurrency.
  unsigned threads = 0;
  std::uint64_t candidate_cap = kDefaultCandidateCap;

  void validate() const;
};

// Graph on strings with an edge between every pair at distance >= threshold.
class DistanceGraph {
 public:
  using Filter = std::function<bool(std::span<const Symbol>)>;

  // Every member of `space` accepted by `keep`.
  static DistanceGraph over_space(const StringSpace& space, int threshold, const Filter& keep = {},
                                  std::size_t vertex_cap = kHeuristicVertexCap);
  // Explicit vertex list (any equal-length strings).
  static DistanceGraph over_strings(int universe, int threshold, std::vector<SymbolString> vertices);

  int universe() const { return universe_; }
  int threshold() const { return threshold_; }
  std::size_t size() const { return vertices_.size(); }
  const SymbolString& vertex(std::size_t i) const { return vertices_[i]; }
  const std::vector<SymbolString>& vertices() const { return vertices_; }
  bool adjacent(std::size_t i, std::size_t j) const { return adjacency_[i].test(j); }
  std::span<const Bitset> adjacency() const { return adjacency_; }

  // Unit weights unless set.
  const std::vector<std::uint64_t>& weights() const { return weights_; }
  void set_weights(std::vector<std::uint64_t> weights);

 private:
  DistanceGraph(int universe, int threshold, std::vector<SymbolString> vertices);

  int universe_;
  int threshold_;
  std::vector<SymbolString> vertices_;
  std::vector<Bitset> adjacency_;
  std::vector<std::uint64_t> weights_;
};

// Scans every permutation of `alphabet` in lexicographic order, keeping each
// one at distance >= d from all kept so far, starting from `seed_set`.
// Throws InfeasibleError when the alphabet has more than `candidate_cap`
// permutations.
PermutationArray greedy_lex(const Alphabet& alphabet, int d, const PermutationArray& seed_set,
                            std::uint64_t candidate_cap = kDefaultCandidateCap);

// Random/Greedy: independent restarts, each drawing random compatible
// permutations and then completing greedily; returns the largest result
// (ties go to the lowest restart index).
PermutationArray random_greedy(const Alphabet& alphabet, int d, const SearchConfig& config);

// String versions of the two greedy searches (length-m injective strings).
std::vector<SymbolString> greedy_lex_strings(const StringSpace& space, int d,
                                             std::span<const SymbolString> seed = {});
std::vector<SymbolString> random_greedy_strings(const StringSpace& space, int d, const SearchConfig& config);

struct CliqueOptions {
  std::size_t vertex_cap = kDefaultExactVertexCap;
  std::optional<Seconds> time_limit;
};

// Maximum clique of the graph (vertex indices, sorted). Throws
// InfeasibleError above the vertex cap or on timeout.
std::vector<std::size_t> exact_clique(const DistanceGraph& graph, const CliqueOptions& options = {});

// Maximum (n, d) array over `alphabet` via exact_clique on all permutations.
PermutationArray exact_max_array(const Alphabet& alphabet, int d, const CliqueOptions& options = {});

using PrefixWeight = std::function<std::uint64_t(std::span<const Symbol>)>;

struct WeightedCliqueResult {
  PrefixSet prefixes;
  std::vector<std::uint64_t> weights;  // aligned with prefixes.members()
  std::uint64_t total = 0;
  bool optimal = false;
};

// Maximum-weight clique on the graph of length-m injective strings over
// [1..n] (edges at distance >= d). Exact mode runs branch and bound and
// fails above the cap; otherwise a seeded local search. `label_filter`
// restricts vertices to strings whose symbols all lie in it.
WeightedCliqueResult weighted_clique_lower_bound(int n, int m, int d, const PrefixWeight& weight, bool exact,
                                                 const SearchConfig& config = {},
                                                 const CliqueOptions& options = {},
                                                 const std::optional<Alphabet>& label_filter = std::nullopt);

}  // namespace chebpa
