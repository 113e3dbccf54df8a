#include "chebpa/seeds.hpp"

#include "chebpa/error.hpp"
#include "chebpa/prefix.hpp"
#include "chebpa/string_space.hpp"

#include <chrono>

namespace chebpa {

namespace {

std::string cell_name(int n, int d) { return "(" + std::to_string(n) + "," + std::to_string(d) + ")"; }

template <class Map>
void keep_best(Map& into, const typename Map::key_type& key, const SeedValue& value) {
  auto it = into.find(key);
  if (it == into.end() || it->second.value < value.value) into[key] = value;
}

}  // namespace

TableSeeds compute_seeds(const SeedPlan& plan, const ProgressSink& progress, SeedArtifacts* artifacts) {
  plan.search.validate();
  TableSeeds seeds;
  auto say = [&](const std::string& s) {
    if (progress) progress(s);
  };
  const std::string seed_tag = "seed" + std::to_string(plan.search.seed);

  for (int n = 3; n <= std::min(plan.n_max, plan.search_n_max); ++n) {
    for (int d = 2; d <= std::min(plan.d_max, n - 1); ++d) {
      if (exact_formulas(n, d)) continue;
      const auto start = std::chrono::steady_clock::now();
      std::optional<PermutationArray> best;
      bool exact = false;
      if (n <= plan.exact_n_max) {
        try {
          best = exact_max_array(Alphabet::range(n), d, plan.clique);
          exact = true;
        } catch (const InfeasibleError& e) {
          say("clique " + cell_name(n, d) + ": " + e.what() + "; falling back to Random/Greedy");
        }
      }
      if (!best) best = random_greedy(Alphabet::range(n), d, plan.search);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      const std::string source = exact ? "exact_clique" : "random_greedy_" + seed_tag;
      say((exact ? "clique " : "search ") + cell_name(n, d) + ": " + std::to_string(best->size()) + " in " +
          std::to_string(secs) + " s");
      const SeedValue value{BigInt(best->size()), source};
      (exact ? seeds.exact : seeds.search)[{n, d}] = value;
      if (artifacts) artifacts->arrays.push_back({*best, exact, source});
    }
  }

  for (int total = 3; total <= plan.n_max; ++total) {
    for (int m = 2; m < total; ++m) {
      // d = 2 is closed by formula, so prefixes only matter from d = 3.
      for (int d = 3; d <= std::min(plan.d_max, total - 1); ++d) {
        if (prefix_closed_form(total, m, d)) continue;
        const std::uint64_t candidates = StringSpace(Alphabet::range(total), static_cast<std::size_t>(m)).size();
        const bool try_exact = candidates <= plan.prefix_exact_cap;
        if (!try_exact && candidates > plan.prefix_heuristic_cap) continue;
        std::optional<PrefixSet> set;
        bool exact = false;
        if (try_exact) {
          try {
            CliqueOptions opts = plan.clique;
            opts.vertex_cap = std::max(opts.vertex_cap, plan.prefix_exact_cap);
            opts.time_limit = opts.time_limit ? std::min(*opts.time_limit, plan.prefix_time_limit)
                                              : plan.prefix_time_limit;
            set = prefix_search(total, m, d, plan.search, true, opts);
            exact = true;
          } catch (const InfeasibleError& e) {
            say("prefix clique (" + std::to_string(total) + "," + std::to_string(m) + "," + std::to_string(d) +
                "): " + e.what() + "; falling back to the heuristic");
          }
        }
        if (!set) set = prefix_search(total, m, d, plan.search, false);
        const std::string source = exact ? "exact_clique" : "prefix_search_" + seed_tag;
        seeds.prefix[{total, m, d}] = SeedValue{BigInt(set->size()), source};
        if (artifacts) artifacts->prefixes.push_back({*set, exact, source});
      }
    }
  }
  return seeds;
}

void merge_seeds(TableSeeds& into, const TableSeeds& extra) {
  for (const auto& [k, v] : extra.exact) keep_best(into.exact, k, v);
  for (const auto& [k, v] : extra.search) keep_best(into.search, k, v);
  for (const auto& [k, v] : extra.alphabet_search) keep_best(into.alphabet_search, k, v);
  for (const auto& [k, v] : extra.prefix) keep_best(into.prefix, k, v);
  for (const auto& [k, v] : extra.cited) keep_best(into.cited, k, v);
}

}  // namespace chebpa
