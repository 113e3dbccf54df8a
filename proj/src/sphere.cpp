#include "chebpa/sphere.hpp"

#include "chebpa/error.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>

namespace chebpa {

namespace {

// Row i (1-based) may occupy columns [i-d, i+d] ∩ [1, n]. Bit k of the state
// stands for column i-d+k; columns outside [1, n] to the left are marked
// occupied up front so that the left edge needs no special casing.
BigInt banded_permanent(int n, int d) {
  const int width = 2 * d + 1;
  std::uint64_t start = 0;
  for (int k = 0; k < d; ++k) start |= std::uint64_t{1} << k;

  std::unordered_map<std::uint64_t, BigInt> states{{start, BigInt(1)}};
  for (int row = 1; row <= n; ++row) {
    std::unordered_map<std::uint64_t, BigInt> next;
    next.reserve(states.size() * 2);
    for (const auto& [mask, ways] : states) {
      for (int k = 0; k < width; ++k) {
        const int col = row - d + k;
        if (col < 1 || col > n) continue;
        const std::uint64_t bit = std::uint64_t{1} << k;
        if (mask & bit) continue;
        const std::uint64_t placed = mask | bit;
        // Column row-d leaves the band; it must be filled by now.
        if (!(placed & 1)) continue;
        next[placed >> 1] += ways;
      }
    }
    states = std::move(next);
  }
  BigInt total = 0;
  for (const auto& [mask, ways] : states) total += ways;
  return total;
}

class SphereCache {
 public:
  std::optional<BigInt> find(int n, int d) const {
    std::shared_lock lock(mutex_);
    auto it = values_.find({n, d});
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }
  void store(int n, int d, const BigInt& v) {
    std::unique_lock lock(mutex_);
    values_.emplace(std::make_pair(n, d), v);
  }

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::pair<int, int>, BigInt> values_;
};

SphereCache& cache() {
  static SphereCache instance;
  return instance;
}

}  // namespace

SphereSize sphere_size(int n, int d) {
  if (n < 1) throw DomainError("sphere_size: n must be >= 1");
  if (d < 0) throw DomainError("sphere_size: d must be >= 0");
  if (d >= n - 1) return {n, d, factorial(static_cast<unsigned>(n))};
  if (d == 0) return {n, d, BigInt(1)};
  if (auto hit = cache().find(n, d)) return {n, d, *hit};
  if (2 * d + 1 > kSphereWindowCap) {
    throw InfeasibleError("sphere_size(" + std::to_string(n) + "," + std::to_string(d) +
                          "): band of width " + std::to_string(2 * d + 1) + " exceeds the DP cap");
  }
  BigInt count = banded_permanent(n, d);
  cache().store(n, d, count);
  return {n, d, count};
}

std::optional<BigInt> try_sphere_count(int n, int d) {
  try {
    return sphere_size(n, d).count;
  } catch (const InfeasibleError&) {
    return std::nullopt;
  }
}

BigInt gv_lower_bound(int n, int d) {
  if (!(n > d && d >= 2)) {
    throw DomainError("gv_lower_bound requires n > d >= 2 (got n=" + std::to_string(n) +
                      ", d=" + std::to_string(d) + ")");
  }
  return ceil_div(factorial(static_cast<unsigned>(n)), sphere_size(n, d - 1).count);
}

BigInt sphere_packing_upper_bound(int n, int d) {
  if (d % 2 != 0 || !(2 * d >= n && n >= d && d >= 2)) {
    throw DomainError("sphere_packing_upper_bound requires even d and 2d >= n >= d >= 2 (got n=" +
                      std::to_string(n) + ", d=" + std::to_string(d) + ")");
  }
  return floor_div(factorial(static_cast<unsigned>(n + 1)), sphere_size(n + 1, d / 2).count);
}

}  // namespace chebpa
