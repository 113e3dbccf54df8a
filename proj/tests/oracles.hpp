#pragma once

// Brute-force references the library is checked against. Deliberately
// naive: full enumeration, no pruning, no shared code with src/.

#include "chebpa/bigint.hpp"
#include "chebpa/core.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

inline std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 1);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline int distance(const std::vector<int>& a, const std::vector<int>& b) {
  int best = 0;
  for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, std::abs(a[i] - b[i]));
  return best;
}

inline std::uint64_t sphere(int n, int d) {
  std::uint64_t count = 0;
  for (const auto& p : all_permutations(n)) {
    bool inside = true;
    for (int i = 0; i < n; ++i) inside = inside && std::abs(p[i] - (i + 1)) <= d;
    count += inside;
  }
  return count;
}

// Same count by backtracking over positions; usable well past n = 8.
inline std::uint64_t sphere_backtrack(int n, int d) {
  std::vector<bool> used(n + 1, false);
  auto rec = [&](auto&& self, int pos) -> std::uint64_t {
    if (pos > n) return 1;
    std::uint64_t total = 0;
    for (int v = std::max(1, pos - d); v <= std::min(n, pos + d); ++v) {
      if (used[v]) continue;
      used[v] = true;
      total += self(self, pos + 1);
      used[v] = false;
    }
    return total;
  };
  return rec(rec, 1);
}

inline chebpa::BigInt fibonacci(int k) {
  chebpa::BigInt a = 0, b = 1;
  for (int i = 0; i < k; ++i) {
    chebpa::BigInt t = a + b;
    a = b;
    b = t;
  }
  return a;
}

// Largest subset of `points` with all pairwise distances >= d, by plain
// include/exclude recursion. Only for a few dozen points.
inline std::size_t max_code(const std::vector<std::vector<int>>& points, int d) {
  std::size_t best = 0;
  std::vector<std::size_t> chosen;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (chosen.size() + (points.size() - i) <= best) return;
    if (i == points.size()) {
      best = std::max(best, chosen.size());
      return;
    }
    bool fits = true;
    for (auto j : chosen) fits = fits && distance(points[i], points[j]) >= d;
    if (fits) {
      chosen.push_back(i);
      self(self, i + 1);
      chosen.pop_back();
    }
    self(self, i + 1);
  };
  rec(rec, 0);
  return best;
}

inline int min_distance(const chebpa::PermutationArray& array) {
  int best = 1 << 30;
  const auto& m = array.members();
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      std::vector<int> a(m[i].values().begin(), m[i].values().end());
      std::vector<int> b(m[j].values().begin(), m[j].values().end());
      best = std::min(best, distance(a, b));
    }
  }
  return best;
}

inline chebpa::Permutation random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  std::shuffle(v.begin(), v.end(), rng);
  return chebpa::Permutation(v);
}

inline chebpa::PermutationArray array_of(int n, int d, const std::vector<std::vector<int>>& rows) {
  std::vector<chebpa::Permutation> members;
  for (const auto& r : rows) members.emplace_back(r);
  return chebpa::PermutationArray(chebpa::Alphabet::range(n), d, members);
}

}  // namespace oracle
