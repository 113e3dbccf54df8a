#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace chebpa {

// Fixed-size bitset over vertex indices.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t bits, bool value = false);

  std::size_t size() const { return bits_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool any() const;
  std::size_t count() const;
  // Lowest set index, or size() when empty.
  std::size_t first() const;
  std::size_t next(std::size_t after) const;

  Bitset& operator&=(const Bitset& other);
  Bitset& and_not(const Bitset& other);
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }

 private:
  void trim();

  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

struct CliqueResult {
  std::vector<std::size_t> vertices;  // sorted
  std::uint64_t weight = 0;
  bool optimal = false;
  std::uint64_t nodes = 0;
};

using Seconds = std::chrono::duration<double>;

// Maximum-weight clique by branch and bound. Vertices are renumbered in
// smallest-last (degeneracy) order and every node is bounded by a greedy
// colouring: a clique uses at most one vertex per colour class, so the sum
// of per-class maximum weights bounds it. Throws InfeasibleError if
// `time_limit` elapses first. With `must_exceed` set, only cliques heavier
// than it are sought; the result is empty when none exists.
CliqueResult max_weight_clique(std::span<const Bitset> adjacency, std::span<const std::uint64_t> weights,
                               std::optional<Seconds> time_limit = std::nullopt, std::uint64_t must_exceed = 0);

struct LocalSearchOptions {
  std::uint64_t seed = 0;
  int restarts = 20;
  std::uint64_t steps_per_restart = 20000;
  std::optional<Seconds> time_limit;
};

// Add/swap/drop local search with a short tabu tenure. Never proves
// optimality; deterministic for a fixed seed when no time limit cuts it off.
CliqueResult local_search_weight_clique(std::span<const Bitset> adjacency,
                                        std::span<const std::uint64_t> weights,
                                        const LocalSearchOptions& options);

}  // namespace chebpa
