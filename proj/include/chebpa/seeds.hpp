#pragma once

#include "chebpa/bounds.hpp"
#include "chebpa/prefix_set.hpp"
#include "chebpa/search.hpp"

#include <vector>

namespace chebpa {

// Which self-computed seeds feed a table build.
struct SeedPlan {
  int n_max = 8;
  int d_max = 8;
  // Exact clique for every open cell with n <= exact_n_max.
  int exact_n_max = 6;
  // Random/Greedy for open cells with exact_n_max < n <= search_n_max.
  int search_n_max = 8;
  // Prefix sets with at most this many candidate strings are searched
  // exactly; larger ones (up to kHeuristicVertexCap) heuristically.
  std::size_t prefix_exact_cap = 3000;
  std::size_t prefix_heuristic_cap = 0;
  // Per-set limit on the exact prefix search before the heuristic takes over.
  Seconds prefix_time_limit{5.0};
  SearchConfig search;
  CliqueOptions clique;
};

struct SeedArtifacts {
  struct Array {
    PermutationArray array;
    bool exact;
    std::string source;
  };
  struct Prefix {
    PrefixSet set;
    bool exact;
    std::string source;
  };
  std::vector<Array> arrays;
  std::vector<Prefix> prefixes;
};

// Runs the plan. Cells with a closed form are skipped; clique searches that
// hit their time limit fall back to the heuristic. Every artifact is
// certified before it becomes a seed.
TableSeeds compute_seeds(const SeedPlan& plan, const ProgressSink& progress = {},
                         SeedArtifacts* artifacts = nullptr);

// Adds every seed in `extra` that beats the one in `into`.
void merge_seeds(TableSeeds& into, const TableSeeds& extra);

}  // namespace chebpa
