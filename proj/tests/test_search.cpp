#include "chebpa/clique.hpp"
#include "chebpa/error.hpp"
#include "chebpa/search.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace chebpa;

namespace {

// Heaviest clique by enumeration over all subsets.
std::uint64_t brute_weight_clique(const std::vector<Bitset>& adj, const std::vector<std::uint64_t>& w) {
  const std::size_t n = adj.size();
  std::uint64_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool clique = true;
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < n && clique; ++i) {
      if (!(mask >> i & 1)) continue;
      total += w[i];
      for (std::size_t j = i + 1; j < n && clique; ++j) clique = !(mask >> j & 1) || adj[i].test(j);
    }
    if (clique) best = std::max(best, total);
  }
  return best;
}

std::vector<Bitset> random_graph(std::size_t n, double density, std::mt19937_64& rng) {
  std::vector<Bitset> adj(n, Bitset(n));
  std::bernoulli_distribution edge(density);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (edge(rng)) {
        adj[i].set(j);
        adj[j].set(i);
      }
    }
  }
  return adj;
}

}  // namespace

TEST_CASE("greedy scan examples") {
  const auto s3 = greedy_lex(Alphabet::range(3), 2, oracle::array_of(3, 2, {{1, 2, 3}}));
  CHECK(s3 == oracle::array_of(3, 2, {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}}));
  CHECK(greedy_lex(Alphabet::range(4), 4, PermutationArray(Alphabet::range(4), 4)).size() == 1);
  const auto s5 = greedy_lex(Alphabet::range(5), 3, oracle::array_of(5, 3, {{1, 2, 3, 4, 5}}));
  CHECK(s5.size() <= 10);
  CHECK(verify(s5).valid);
  CHECK_THROWS_AS(greedy_lex(Alphabet::range(10), 3, PermutationArray(Alphabet::range(10), 3)), InfeasibleError);
}

TEST_CASE("greedy output is maximal") {
  for (int n = 3; n <= 6; ++n) {
    for (int d = 2; d < n; ++d) {
      const auto array = greedy_lex(Alphabet::range(n), d, PermutationArray(Alphabet::range(n), d));
      for (const auto& p : oracle::all_permutations(n)) {
        Permutation candidate(p);
        if (array.contains(candidate)) continue;
        bool blocked = false;
        for (const auto& m : array.members()) blocked = blocked || chebyshev_distance(candidate, m) < d;
        CHECK(blocked);
      }
    }
  }
}

TEST_CASE("Random/Greedy is reproducible and certified") {
  SearchConfig config;
  config.seed = 42;
  config.restarts = 8;
  for (auto order : {CompletionOrder::lexicographic, CompletionOrder::shuffled}) {
    config.completion = order;
    const auto a = random_greedy(Alphabet::range(6), 3, config);
    const auto b = random_greedy(Alphabet::range(6), 3, config);
    CHECK(a == b);
    CHECK(verify(a).valid);
    CHECK(a.declared_distance() == 3);
  }
  config.seed_identity = true;
  CHECK(random_greedy(Alphabet::range(6), 3, config).contains(Permutation::identity(6)));
}

TEST_CASE("Random/Greedy hits small exact values") {
  SearchConfig config;
  config.seed = 1;
  config.restarts = 20;
  CHECK(random_greedy(Alphabet::range(5), 2, config).size() == 30);
  CHECK(random_greedy(Alphabet::range(6), 5, config).size() == 3);
}

TEST_CASE("search config validation") {
  SearchConfig config;
  config.restarts = 0;
  CHECK_THROWS_AS(config.validate(), DomainError);
  config.restarts = 1;
  config.time_budget = Seconds(0);
  CHECK_THROWS_AS(config.validate(), DomainError);
}

TEST_CASE("distance graph agrees with the metric") {
  StringSpace space(Alphabet::range(5), 5);
  const auto g = DistanceGraph::over_space(space, 3);
  REQUIRE(g.size() == 120);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK_FALSE(g.adjacent(i, i));
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      CHECK(g.adjacent(i, j) == g.adjacent(j, i));
      CHECK(g.adjacent(i, j) == (oracle::distance(g.vertex(i), g.vertex(j)) >= 3));
    }
  }
}

TEST_CASE("exact clique on S_4 matches subset enumeration") {
  const auto perms = oracle::all_permutations(4);
  for (int d = 1; d <= 4; ++d) {
    const auto g = DistanceGraph::over_strings(4, d, perms);
    CHECK(exact_clique(g).size() == oracle::max_code(perms, d));
  }
  CHECK(oracle::max_code(perms, 2) == 6);
}

TEST_CASE("exact clique on random induced subgraphs of S_5") {
  std::mt19937_64 rng(5);
  auto perms = oracle::all_permutations(5);
  for (int trial = 0; trial < 40; ++trial) {
    std::shuffle(perms.begin(), perms.end(), rng);
    std::vector<std::vector<int>> subset(perms.begin(), perms.begin() + 24);
    std::sort(subset.begin(), subset.end());
    const int d = 2 + static_cast<int>(rng() % 2);
    const auto g = DistanceGraph::over_strings(5, d, subset);
    CHECK(exact_clique(g).size() == oracle::max_code(subset, d));
  }
}

TEST_CASE("exact maximum arrays") {
  CHECK(exact_max_array(Alphabet::range(4), 2).size() == 6);
  const auto pa53 = exact_max_array(Alphabet::range(5), 3);
  CHECK(pa53.size() == 10);
  CHECK(verify(pa53).valid);
  CHECK(exact_max_array(Alphabet::range(5), 5).size() == 1);
  CHECK(exact_max_array(Alphabet({1, 3, 4, 7}), 3).size() == oracle::max_code(
      [] {
        std::vector<std::vector<int>> out;
        std::vector<int> v{1, 3, 4, 7};
        do out.push_back(v);
        while (std::next_permutation(v.begin(), v.end()));
        return out;
      }(),
      3));
  CHECK_THROWS_AS(exact_max_array(Alphabet::range(8), 3), InfeasibleError);
}

TEST_CASE("weighted branch and bound matches enumeration") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 6 + rng() % 12;
    const auto adj = random_graph(n, 0.3 + 0.5 * static_cast<double>(rng() % 100) / 100.0, rng);
    std::vector<std::uint64_t> w(n);
    const bool unit = trial % 2 == 0;
    for (auto& x : w) x = unit ? 1 : 1 + rng() % 20;
    const auto expected = brute_weight_clique(adj, w);
    const auto found = max_weight_clique(adj, w);
    CHECK(found.weight == expected);
    CHECK(found.optimal);
    std::uint64_t total = 0;
    for (auto v : found.vertices) total += w[v];
    CHECK(total == found.weight);
    for (std::size_t i = 0; i < found.vertices.size(); ++i) {
      for (std::size_t j = i + 1; j < found.vertices.size(); ++j) CHECK(adj[found.vertices[i]].test(found.vertices[j]));
    }
    // A floor at the optimum leaves nothing to find; just below it does not.
    CHECK(max_weight_clique(adj, w, std::nullopt, expected).vertices.empty());
    if (expected > 0) CHECK(max_weight_clique(adj, w, std::nullopt, expected - 1).weight == expected);
  }
}

TEST_CASE("local search never beats the optimum and returns cliques") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 8 + rng() % 10;
    const auto adj = random_graph(n, 0.6, rng);
    std::vector<std::uint64_t> w(n);
    for (auto& x : w) x = 1 + rng() % 9;
    LocalSearchOptions options;
    options.seed = trial;
    const auto found = local_search_weight_clique(adj, w, options);
    CHECK(found.weight <= brute_weight_clique(adj, w));
    for (std::size_t i = 0; i < found.vertices.size(); ++i) {
      for (std::size_t j = i + 1; j < found.vertices.size(); ++j) CHECK(adj[found.vertices[i]].test(found.vertices[j]));
    }
  }
}

TEST_CASE("weighted prefix clique") {
  CHECK(weighted_clique_lower_bound(8, 3, 3, {}, true).total == 24);
  CHECK(weighted_clique_lower_bound(4, 3, 2, {}, true).total == 6);
  SearchConfig config;
  config.seed = 1;
  const auto heuristic = weighted_clique_lower_bound(9, 3, 4, {}, false, config);
  CHECK(heuristic.total >= 15);
  CHECK(heuristic.prefixes.valid());
  // Unit weights over full-length strings is the plain clique problem.
  for (int n = 3; n <= 5; ++n) {
    for (int d = 2; d < n; ++d) {
      CHECK(weighted_clique_lower_bound(n, n, d, {}, true).total == exact_max_array(Alphabet::range(n), d).size());
    }
  }
  // Weights count per member.
  const auto weighted = weighted_clique_lower_bound(
      5, 1, 2, [](std::span<const Symbol> s) { return static_cast<std::uint64_t>(s[0]); }, true);
  CHECK(weighted.total == 1 + 3 + 5);
  const auto filtered = weighted_clique_lower_bound(6, 2, 2, {}, false, config, {}, Alphabet({1, 2, 3, 4}));
  for (const auto& s : filtered.prefixes.members()) {
    for (auto x : s) CHECK(x <= 4);
  }
}

TEST_CASE("string searches") {
  StringSpace space(Alphabet::range(6), 2);
  const auto greedy = greedy_lex_strings(space, 3);
  for (std::size_t i = 0; i < greedy.size(); ++i) {
    for (std::size_t j = i + 1; j < greedy.size(); ++j) CHECK(string_distance(greedy[i], greedy[j]) >= 3);
  }
  SearchConfig config;
  config.seed = 4;
  const auto a = random_greedy_strings(space, 3, config);
  CHECK(a == random_greedy_strings(space, 3, config));
  CHECK(a.size() <= 4);
}
