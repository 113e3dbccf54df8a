#include "chebpa/prefix.hpp"

#include "chebpa/error.hpp"
#include "chebpa/string_space.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <string>

namespace chebpa {

namespace {

constexpr std::uint64_t kPolishSteps = 2000;

// The multiple of d the closed form rests on, if any.
std::optional<int> closed_form_modulus(int n, int m, int d) {
  if (!(n >= 1 && m >= 2 && d >= m && m <= n)) return std::nullopt;
  for (int top = n; top <= n + d - m; ++top) {
    if (top % d == 0) return top;
  }
  return std::nullopt;
}

void check_shape(int n, int m, int d) {
  if (!(n >= 1 && m >= 1 && m <= n && d >= 1)) {
    throw DomainError("prefix sets need 1 <= m <= n and d >= 1 (n=" + std::to_string(n) +
                      ", m=" + std::to_string(m) + ", d=" + std::to_string(d) + ")");
  }
}

PrefixSet checked(int n, int m, int d, std::vector<SymbolString> members, const char* who) {
  PrefixSet out(n, m, d, std::move(members));
  if (out.violation()) throw VerificationError(std::string(who) + " produced strings closer than d");
  return out;
}

// Reordering positions preserves distance, and its orbits on the strings
// are the m-element symbol sets. Some maximum set meets a first orbit i;
// move that member to the orbit's sorted representative and the rest lies in
// its neighbourhood among orbits >= i. One bounded search per orbit, each
// required to beat the incumbent.
std::vector<SymbolString> orbit_split_clique(const DistanceGraph& graph, const CliqueOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t size = graph.size();

  std::map<SymbolString, std::size_t> orbit_index;
  std::vector<std::size_t> orbit_of(size);
  std::vector<std::size_t> representative;
  for (std::size_t v = 0; v < size; ++v) {
    auto key = graph.vertex(v);
    std::sort(key.begin(), key.end());
    auto [it, fresh] = orbit_index.try_emplace(key, orbit_index.size());
    orbit_of[v] = it->second;
    if (fresh) representative.push_back(0);
    if (key == graph.vertex(v)) representative[it->second] = v;
  }
  // Orbits numbered by their sorted key so "later" is well defined.
  std::vector<std::size_t> rank(orbit_index.size());
  {
    std::size_t r = 0;
    for (const auto& [key, index] : orbit_index) rank[index] = r++;
  }

  std::vector<std::uint64_t> unit(size, 1);
  LocalSearchOptions warm;
  warm.restarts = 4;
  warm.steps_per_restart = 4000;
  std::vector<std::size_t> best = local_search_weight_clique(graph.adjacency(), unit, warm).vertices;

  for (std::size_t o = 0; o < representative.size(); ++o) {
    const std::size_t rep = representative[o];
    std::vector<std::size_t> pool;
    for (std::size_t v = 0; v < size; ++v) {
      if (rank[orbit_of[v]] >= rank[o] && graph.adjacent(rep, v)) pool.push_back(v);
    }
    if (pool.size() + 1 <= best.size()) continue;
    std::vector<Bitset> sub(pool.size(), Bitset(pool.size()));
    for (std::size_t i = 0; i < pool.size(); ++i) {
      for (std::size_t j = i + 1; j < pool.size(); ++j) {
        if (graph.adjacent(pool[i], pool[j])) {
          sub[i].set(j);
          sub[j].set(i);
        }
      }
    }
    std::optional<Seconds> remaining;
    if (options.time_limit) {
      remaining = *options.time_limit - (std::chrono::steady_clock::now() - start);
      if (remaining->count() <= 0) throw InfeasibleError("exact prefix search exceeded its time limit");
    }
    std::vector<std::uint64_t> sub_unit(pool.size(), 1);
    const auto found = max_weight_clique(sub, sub_unit, remaining, best.empty() ? 0 : best.size() - 1);
    if (found.vertices.size() + 1 > best.size()) {
      best = {rep};
      for (auto i : found.vertices) best.push_back(pool[i]);
    }
  }
  std::vector<SymbolString> members;
  for (auto v : best) members.push_back(graph.vertex(v));
  return members;
}

}  // namespace

std::optional<BigInt> prefix_closed_form(int n, int m, int d) {
  const auto top = closed_form_modulus(n, m, d);
  if (!top) return std::nullopt;
  return power(BigInt(*top / d), static_cast<unsigned>(m));
}

PrefixSet prefix_witness(int n, int m, int d) {
  const auto top = closed_form_modulus(n, m, d);
  if (!top) {
    throw DomainError("no closed form for (n=" + std::to_string(n) + ", m=" + std::to_string(m) +
                      ", d=" + std::to_string(d) + ")");
  }
  const int k = *top / d;
  std::vector<SymbolString> members{SymbolString{}};
  for (int i = 1; i <= m; ++i) {
    std::vector<SymbolString> next;
    for (const auto& s : members) {
      for (int j = 0; j < k; ++j) {
        auto t = s;
        t.push_back(i + j * d);
        next.push_back(std::move(t));
      }
    }
    members = std::move(next);
  }
  return checked(n, m, d, std::move(members), "prefix_witness");
}

PrefixSet prefix_search(int n, int m, int d, const SearchConfig& config, bool exact,
                        const CliqueOptions& options) {
  check_shape(n, m, d);
  StringSpace space(Alphabet::range(n), static_cast<std::size_t>(m));
  std::vector<SymbolString> members;
  if (exact) {
    if (space.size() > options.vertex_cap) {
      throw InfeasibleError(std::to_string(space.size()) + " candidate strings exceed the exact cap of " +
                            std::to_string(options.vertex_cap));
    }
    members = orbit_split_clique(DistanceGraph::over_space(space, d, {}, options.vertex_cap), options);
  } else {
    members = random_greedy_strings(space, d, config);
    // Tabu polish on the same graph; greedy completions alone miss some
    // optima (e.g. 14 against 15 for n=9, m=3, d=4).
    if (space.size() <= kHeuristicVertexCap) {
      auto graph = DistanceGraph::over_space(space, d);
      LocalSearchOptions ls;
      ls.seed = config.seed;
      ls.restarts = config.restarts;
      ls.steps_per_restart = kPolishSteps;
      ls.time_limit = config.time_budget;
      const auto polished = local_search_weight_clique(graph.adjacency(), graph.weights(), ls);
      if (polished.vertices.size() > members.size()) {
        members.clear();
        for (auto v : polished.vertices) members.push_back(graph.vertex(v));
      }
    }
  }
  return checked(n, m, d, std::move(members), "prefix_search");
}

}  // namespace chebpa
