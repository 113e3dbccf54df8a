#include "chebpa/search.hpp"

#include "chebpa/error.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <random>
#include <thread>

namespace chebpa {

void SearchConfig::validate() const {
  if (restarts < 1) throw DomainError("restarts must be >= 1");
  if (!(time_budget.count() > 0)) throw DomainError("time budget must be positive");
  if (candidate_cap < 1) throw DomainError("candidate cap must be positive");
}

// ---------------------------------------------------------- DistanceGraph

DistanceGraph::DistanceGraph(int universe, int threshold, std::vector<SymbolString> vertices)
    : universe_(universe), threshold_(threshold), vertices_(std::move(vertices)),
      weights_(vertices_.size(), 1) {
  if (threshold_ < 1) throw DomainError("distance threshold must be positive");
}

DistanceGraph DistanceGraph::over_space(const StringSpace& space, int threshold, const Filter& keep,
                                        std::size_t vertex_cap) {
  const std::uint64_t total = space.size();
  std::vector<std::int64_t> vertex_of(total, -1);
  std::vector<SymbolString> vertices;
  SymbolString buf(space.length());
  for (std::uint64_t r = 0; r < total; ++r) {
    space.unrank(r, buf);
    if (keep && !keep(buf)) continue;
    if (vertices.size() == vertex_cap) {
      throw InfeasibleError("distance graph exceeds " + std::to_string(vertex_cap) + " vertices");
    }
    vertex_of[r] = static_cast<std::int64_t>(vertices.size());
    vertices.push_back(buf);
  }

  DistanceGraph g(space.alphabet().max(), threshold, std::move(vertices));
  const std::size_t n = g.vertices_.size();
  g.adjacency_.assign(n, Bitset(n, true));
  for (std::size_t i = 0; i < n; ++i) {
    // Everything inside the radius-(d-1) ball, including i itself, is not adjacent.
    space.for_each_within(g.vertices_[i], threshold - 1, [&](std::uint64_t r) {
      if (vertex_of[r] >= 0) g.adjacency_[i].reset(static_cast<std::size_t>(vertex_of[r]));
    });
  }
  return g;
}

DistanceGraph DistanceGraph::over_strings(int universe, int threshold, std::vector<SymbolString> vertices) {
  DistanceGraph g(universe, threshold, std::move(vertices));
  const std::size_t n = g.vertices_.size();
  g.adjacency_.assign(n, Bitset(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (string_distance(g.vertices_[i], g.vertices_[j]) >= threshold) {
        g.adjacency_[i].set(j);
        g.adjacency_[j].set(i);
      }
    }
  }
  return g;
}

void DistanceGraph::set_weights(std::vector<std::uint64_t> weights) {
  if (weights.size() != vertices_.size()) throw DomainError("one weight per vertex required");
  weights_ = std::move(weights);
}

// ----------------------------------------------------------------- greedy

namespace {

// Chosen set plus a per-candidate flag marking everything within distance
// d-1 of a chosen member.
class GreedyState {
 public:
  GreedyState(const StringSpace& space, int d)
      : space_(space), d_(d), blocked_(space.size(), 0), buf_(space.length()) {}

  bool try_add(std::uint64_t r) {
    if (blocked_[r]) return false;
    chosen_.push_back(r);
    space_.unrank(r, buf_);
    space_.for_each_within(buf_, d_ - 1, [&](std::uint64_t q) { blocked_[q] = 1; });
    return true;
  }

  void complete(std::span<const std::uint64_t> order) {
    for (auto r : order) try_add(r);
  }

  void complete_lex() {
    for (std::uint64_t r = 0; r < blocked_.size(); ++r) try_add(r);
  }

  const std::vector<std::uint64_t>& chosen() const { return chosen_; }

 private:
  const StringSpace& space_;
  int d_;
  std::vector<std::uint8_t> blocked_;
  SymbolString buf_;
  std::vector<std::uint64_t> chosen_;
};

void check_space(const StringSpace& space, int d, std::uint64_t cap) {
  if (d < 1) throw DomainError("distance must be positive");
  if (space.size() > cap) {
    throw InfeasibleError("candidate space of " + std::to_string(space.size()) +
                          " strings exceeds the exhaustive cap of " + std::to_string(cap));
  }
}

std::vector<SymbolString> to_strings(const StringSpace& space, const std::vector<std::uint64_t>& ranks) {
  std::vector<SymbolString> out;
  out.reserve(ranks.size());
  for (auto r : ranks) out.push_back(space.unrank(r));
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t restart_seed(std::uint64_t seed, std::uint64_t restart) {
  // splitmix64 over (seed, restart)
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (restart + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<std::uint64_t> one_restart(const StringSpace& space, int d, const SearchConfig& config,
                                       std::uint64_t restart) {
  std::mt19937_64 rng(restart_seed(config.seed, restart));
  const std::uint64_t n = space.size();
  GreedyState state(space, d);
  if (config.seed_identity) state.try_add(0);

  const std::uint64_t initial = config.initial_random_count.value_or((n + 999) / 1000);
  std::uint64_t picked = 0;
  for (std::uint64_t attempt = 0; picked < initial && attempt < 64 * initial + 64; ++attempt) {
    if (state.try_add(rng() % n)) ++picked;
  }

  if (config.completion == CompletionOrder::lexicographic) {
    state.complete_lex();
  } else {
    std::vector<std::uint64_t> order(n);
    for (std::uint64_t i = 0; i < n; ++i) order[i] = i;
    for (std::uint64_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
    state.complete(order);
  }
  return state.chosen();
}

std::vector<std::uint64_t> run_restarts(const StringSpace& space, int d, const SearchConfig& config) {
  config.validate();
  check_space(space, d, config.candidate_cap);

  const auto start = std::chrono::steady_clock::now();
  std::mutex best_mutex;
  std::vector<std::uint64_t> best;
  std::int64_t best_restart = -1;
  std::atomic<int> next{0};

  auto worker = [&] {
    while (true) {
      const int r = next.fetch_add(1);
      if (r >= config.restarts) return;
      if (r > 0 && std::chrono::steady_clock::now() - start > config.time_budget) return;
      auto chosen = one_restart(space, d, config, static_cast<std::uint64_t>(r));
      std::lock_guard lock(best_mutex);
      if (best_restart < 0 || chosen.size() > best.size() ||
          (chosen.size() == best.size() && r < best_restart)) {
        best = std::move(chosen);
        best_restart = r;
      }
    }
  };

  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(config.restarts));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return best;
}

PermutationArray certified(const Alphabet& alphabet, int d, std::vector<SymbolString> strings,
                           const char* who) {
  std::vector<Permutation> members;
  members.reserve(strings.size());
  for (auto& s : strings) members.emplace_back(std::move(s));
  PermutationArray out(alphabet, d, std::move(members));
  require_valid(out, who);
  return out;
}

}  // namespace

std::vector<SymbolString> greedy_lex_strings(const StringSpace& space, int d, std::span<const SymbolString> seed) {
  GreedyState state(space, d);
  for (const auto& s : seed) {
    if (!state.try_add(space.rank(s))) {
      throw DomainError("seed set is not at pairwise distance >= " + std::to_string(d));
    }
  }
  state.complete_lex();
  return to_strings(space, state.chosen());
}

std::vector<SymbolString> random_greedy_strings(const StringSpace& space, int d, const SearchConfig& config) {
  return to_strings(space, run_restarts(space, d, config));
}

PermutationArray greedy_lex(const Alphabet& alphabet, int d, const PermutationArray& seed_set,
                            std::uint64_t candidate_cap) {
  if (seed_set.alphabet() != alphabet) throw ComparabilityError("seed set over a different alphabet");
  StringSpace space(alphabet, alphabet.size());
  check_space(space, d, candidate_cap);
  std::vector<SymbolString> seed;
  for (const auto& p : seed_set.members()) seed.emplace_back(p.values().begin(), p.values().end());
  return certified(alphabet, d, greedy_lex_strings(space, d, seed), "greedy_lex");
}

PermutationArray random_greedy(const Alphabet& alphabet, int d, const SearchConfig& config) {
  StringSpace space(alphabet, alphabet.size());
  return certified(alphabet, d, random_greedy_strings(space, d, config), "random_greedy");
}

// ------------------------------------------------------------------ clique

std::vector<std::size_t> exact_clique(const DistanceGraph& graph, const CliqueOptions& options) {
  if (graph.size() > options.vertex_cap) {
    throw InfeasibleError("graph of " + std::to_string(graph.size()) + " vertices exceeds the exact cap of " +
                          std::to_string(options.vertex_cap) + "; use the heuristic search instead");
  }
  std::vector<std::uint64_t> unit(graph.size(), 1);
  return max_weight_clique(graph.adjacency(), unit, options.time_limit).vertices;
}

PermutationArray exact_max_array(const Alphabet& alphabet, int d, const CliqueOptions& options) {
  StringSpace space(alphabet, alphabet.size());
  if (space.size() > options.vertex_cap) {
    throw InfeasibleError("alphabet of " + std::to_string(alphabet.size()) + " symbols has " +
                          std::to_string(space.size()) + " permutations, above the exact cap of " +
                          std::to_string(options.vertex_cap));
  }
  // Reordering positions preserves distance and acts transitively on the
  // permutations, so some maximum array contains the sorted one; search its
  // far neighbourhood only.
  const SymbolString sorted(alphabet.symbols().begin(), alphabet.symbols().end());
  auto graph = DistanceGraph::over_space(
      space, d, [&](std::span<const Symbol> s) { return string_distance(s, sorted) >= d; },
      options.vertex_cap);
  std::vector<SymbolString> strings{sorted};
  for (auto v : exact_clique(graph, options)) strings.push_back(graph.vertex(v));
  return certified(alphabet, d, std::move(strings), "exact_clique");
}

WeightedCliqueResult weighted_clique_lower_bound(int n, int m, int d, const PrefixWeight& weight, bool exact,
                                                 const SearchConfig& config, const CliqueOptions& options,
                                                 const std::optional<Alphabet>& label_filter) {
  if (!(n >= 1 && m >= 1 && m <= n)) throw DomainError("weighted clique needs 1 <= m <= n");
  if (d < 1) throw DomainError("distance must be positive");
  StringSpace space(Alphabet::range(n), static_cast<std::size_t>(m));
  if (exact && !label_filter && space.size() > options.vertex_cap) {
    throw InfeasibleError(std::to_string(space.size()) + " prefixes exceed the exact cap of " +
                          std::to_string(options.vertex_cap));
  }
  DistanceGraph::Filter keep;
  if (label_filter) {
    keep = [&](std::span<const Symbol> s) {
      return std::all_of(s.begin(), s.end(), [&](Symbol x) { return label_filter->contains(x); });
    };
  }
  auto graph = DistanceGraph::over_space(space, d, keep, exact ? options.vertex_cap : kHeuristicVertexCap);
  std::vector<std::uint64_t> weights(graph.size());
  for (std::size_t v = 0; v < graph.size(); ++v) weights[v] = weight ? weight(graph.vertex(v)) : 1;

  CliqueResult found;
  if (exact) {
    found = max_weight_clique(graph.adjacency(), weights, options.time_limit);
  } else {
    LocalSearchOptions ls;
    ls.seed = config.seed;
    ls.restarts = config.restarts;
    ls.time_limit = config.time_budget;
    found = local_search_weight_clique(graph.adjacency(), weights, ls);
  }

  std::map<SymbolString, std::uint64_t> chosen;
  for (auto v : found.vertices) chosen.emplace(graph.vertex(v), weights[v]);
  std::vector<SymbolString> members;
  for (const auto& [s, w] : chosen) members.push_back(s);
  PrefixSet prefixes(n, m, d, std::move(members));
  if (prefixes.violation()) throw VerificationError("weighted clique produced an invalid prefix set");

  WeightedCliqueResult result{prefixes, {}, 0, found.optimal};
  for (const auto& [s, w] : chosen) {
    result.weights.push_back(w);
    result.total += w;
  }
  return result;
}

}  // namespace chebpa
