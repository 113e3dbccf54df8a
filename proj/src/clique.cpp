#include "chebpa/clique.hpp"

#include "chebpa/error.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <random>

namespace chebpa {

// ------------------------------------------------------------------ Bitset

Bitset::Bitset(std::size_t bits, bool value)
    : bits_(bits), words_((bits + 63) / 64, value ? ~std::uint64_t{0} : 0) {
  trim();
}

void Bitset::trim() {
  if (bits_ % 64 != 0 && !words_.empty()) {
    words_.back() &= (std::uint64_t{1} << (bits_ % 64)) - 1;
  }
}

bool Bitset::any() const {
  return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

std::size_t Bitset::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::size_t Bitset::first() const {
  for (std::size_t k = 0; k < words_.size(); ++k) {
    if (words_[k]) return k * 64 + static_cast<std::size_t>(std::countr_zero(words_[k]));
  }
  return bits_;
}

std::size_t Bitset::next(std::size_t after) const {
  std::size_t i = after + 1;
  if (i >= bits_) return bits_;
  std::size_t k = i >> 6;
  std::uint64_t w = words_[k] & (~std::uint64_t{0} << (i & 63));
  while (true) {
    if (w) return k * 64 + static_cast<std::size_t>(std::countr_zero(w));
    if (++k == words_.size()) return bits_;
    w = words_[k];
  }
}

Bitset& Bitset::operator&=(const Bitset& other) {
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
  return *this;
}

Bitset& Bitset::and_not(const Bitset& other) {
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~other.words_[k];
  return *this;
}

// ------------------------------------------------------------ exact solver

namespace {

void check_shape(std::span<const Bitset> adjacency, std::span<const std::uint64_t> weights) {
  if (weights.size() != adjacency.size()) throw DomainError("one weight per vertex required");
  for (const auto& row : adjacency) {
    if (row.size() != adjacency.size()) throw DomainError("adjacency must be square");
  }
}

// Smallest-last order; the returned vector lists old indices so that the
// last vertex removed comes first.
std::vector<std::size_t> degeneracy_order(std::span<const Bitset> adjacency) {
  const std::size_t n = adjacency.size();
  std::vector<std::size_t> degree(n);
  for (std::size_t v = 0; v < n; ++v) degree[v] = adjacency[v].count();
  std::vector<bool> gone(n, false);
  std::vector<std::size_t> order(n);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!gone[v] && (pick == n || degree[v] < degree[pick])) pick = v;
    }
    gone[pick] = true;
    order[n - 1 - step] = pick;
    for (std::size_t u = adjacency[pick].first(); u < n; u = adjacency[pick].next(u)) {
      if (!gone[u]) --degree[u];
    }
  }
  return order;
}

class BranchAndBound {
 public:
  BranchAndBound(std::vector<Bitset> adjacency, std::vector<std::uint64_t> weights,
                 std::optional<Seconds> time_limit, std::uint64_t floor)
      : adj_(std::move(adjacency)), w_(std::move(weights)), time_limit_(time_limit),
        start_(std::chrono::steady_clock::now()), floor_(floor) {}

  void run() {
    seed_incumbent();
    Bitset all(adj_.size(), true);
    std::vector<std::size_t> current;
    expand(current, 0, all);
  }

  const std::vector<std::size_t>& best() const { return best_; }
  std::uint64_t best_weight() const { return best_weight_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  void seed_incumbent() {
    Bitset cand(adj_.size(), true);
    std::vector<std::size_t> clique;
    std::uint64_t weight = 0;
    for (std::size_t v = cand.first(); v < adj_.size(); v = cand.first()) {
      clique.push_back(v);
      weight += w_[v];
      cand &= adj_[v];
    }
    if (weight > floor_) {
      best_ = clique;
      best_weight_ = weight;
    } else {
      best_weight_ = floor_;
    }
  }

  void tick() {
    if (++nodes_ % 1024 == 0 && time_limit_) {
      if (std::chrono::steady_clock::now() - start_ > *time_limit_) {
        throw InfeasibleError("exact clique search exceeded its time limit after " +
                              std::to_string(nodes_) + " nodes");
      }
    }
  }

  void expand(std::vector<std::size_t>& clique, std::uint64_t weight, Bitset candidates) {
    tick();
    std::vector<std::size_t> order;
    std::vector<std::uint64_t> bound;
    Bitset uncoloured = candidates;
    std::uint64_t cumulative = 0;
    while (uncoloured.any()) {
      Bitset open = uncoloured;
      std::uint64_t heaviest = 0;
      for (std::size_t v = open.first(); v < open.size(); v = open.first()) {
        open.reset(v);
        open.and_not(adj_[v]);
        uncoloured.reset(v);
        order.push_back(v);
        heaviest = std::max(heaviest, w_[v]);
      }
      cumulative += heaviest;
      bound.resize(order.size(), cumulative);
    }

    for (std::size_t i = order.size(); i-- > 0;) {
      if (weight + bound[i] <= best_weight_) return;
      const std::size_t v = order[i];
      clique.push_back(v);
      Bitset next = candidates & adj_[v];
      if (!next.any()) {
        if (weight + w_[v] > best_weight_) {
          best_weight_ = weight + w_[v];
          best_ = clique;
        }
      } else {
        expand(clique, weight + w_[v], std::move(next));
      }
      clique.pop_back();
      candidates.reset(v);
    }
  }

  std::vector<Bitset> adj_;
  std::vector<std::uint64_t> w_;
  std::optional<Seconds> time_limit_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t floor_;
  std::vector<std::size_t> best_;
  std::uint64_t best_weight_ = 0;
  std::uint64_t nodes_ = 0;
};

// Unit-weight search on flat word arrays. Colour classes are built greedily
// and vertices that would need branching are first offered a re-numbering
// move (one conflicting neighbour shifted to a later free class).
class UnitBranchAndBound {
 public:
  UnitBranchAndBound(const std::vector<Bitset>& adjacency, std::optional<Seconds> time_limit, std::size_t floor)
      : n_(adjacency.size()), words_((n_ + 63) / 64), adj_(n_ * words_, 0), time_limit_(time_limit),
        start_(std::chrono::steady_clock::now()), best_size_(floor) {
    for (std::size_t v = 0; v < n_; ++v) {
      for (std::size_t u = adjacency[v].first(); u < n_; u = adjacency[v].next(u)) {
        adj_[v * words_ + (u >> 6)] |= std::uint64_t{1} << (u & 63);
      }
    }
  }

  void run() {
    seed_incumbent();
    std::vector<std::uint64_t> all(words_, ~std::uint64_t{0});
    if (n_ % 64) all.back() = (std::uint64_t{1} << (n_ % 64)) - 1;
    std::vector<std::size_t> clique;
    expand(clique, all, 0);
  }

  const std::vector<std::size_t>& best() const { return best_; }
  std::size_t nodes() const { return nodes_; }

 private:
  struct Level {
    std::vector<std::uint64_t> classes;  // class k occupies words [k*W, (k+1)*W)
    std::vector<std::uint32_t> order;
    std::vector<std::uint32_t> colour;
    std::vector<std::uint64_t> child;
  };

  const std::uint64_t* row(std::size_t v) const { return adj_.data() + v * words_; }

  void seed_incumbent() {
    std::vector<std::uint64_t> cand(words_, ~std::uint64_t{0});
    if (n_ % 64) cand.back() = (std::uint64_t{1} << (n_ % 64)) - 1;
    std::vector<std::size_t> clique;
    for (std::size_t v = first_bit(cand.data()); v < n_; v = first_bit(cand.data())) {
      clique.push_back(v);
      const auto* r = row(v);
      for (std::size_t k = 0; k < words_; ++k) cand[k] &= r[k];
    }
    if (clique.size() > best_size_) {
      best_ = std::move(clique);
      best_size_ = best_.size();
    }
  }

  std::size_t first_bit(const std::uint64_t* w) const {
    for (std::size_t k = 0; k < words_; ++k) {
      if (w[k]) return k * 64 + static_cast<std::size_t>(std::countr_zero(w[k]));
    }
    return n_;
  }

  bool disjoint(const std::uint64_t* a, const std::uint64_t* b) const {
    for (std::size_t k = 0; k < words_; ++k) {
      if (a[k] & b[k]) return false;
    }
    return true;
  }

  // The single member of `cls` adjacent to v, n_ if none, n_+1 if several.
  std::size_t sole_conflict(const std::uint64_t* cls, const std::uint64_t* nv) const {
    std::size_t found = n_;
    for (std::size_t k = 0; k < words_; ++k) {
      const std::uint64_t w = cls[k] & nv[k];
      if (!w) continue;
      if (found != n_ || (w & (w - 1))) return n_ + 1;
      found = k * 64 + static_cast<std::size_t>(std::countr_zero(w));
    }
    return found;
  }

  void tick() {
    if (++nodes_ % 1024 == 0 && time_limit_) {
      if (std::chrono::steady_clock::now() - start_ > *time_limit_) {
        throw InfeasibleError("exact clique search exceeded its time limit after " +
                              std::to_string(nodes_) + " nodes");
      }
    }
  }

  void expand(std::vector<std::size_t>& clique, const std::vector<std::uint64_t>& cand, std::size_t depth) {
    tick();
    if (levels_.size() <= depth) levels_.emplace_back();
    Level& lv = levels_[depth];
    lv.order.clear();
    lv.colour.clear();
    lv.classes.clear();

    // Classes with index below `safe` cannot improve the incumbent.
    const std::size_t safe = best_size_ > clique.size() ? best_size_ - clique.size() : 0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < words_; ++k) {
      for (std::uint64_t w = cand[k]; w; w &= w - 1) {
        const std::size_t v = k * 64 + static_cast<std::size_t>(std::countr_zero(w));
        const auto* nv = row(v);
        std::size_t c = 0;
        while (c < count && !disjoint(lv.classes.data() + c * words_, nv)) ++c;
        if (c >= safe && safe >= 2 && renumber(lv, nv, v, safe)) continue;
        if (c == count) {
          lv.classes.resize((count + 1) * words_, 0);
          ++count;
        }
        lv.classes[c * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
      }
    }

    // Branch vertices, ordered by class.
    for (std::size_t c = safe; c < count; ++c) {
      const auto* cls = lv.classes.data() + c * words_;
      for (std::size_t k = 0; k < words_; ++k) {
        for (std::uint64_t w = cls[k]; w; w &= w - 1) {
          lv.order.push_back(static_cast<std::uint32_t>(k * 64 + std::countr_zero(w)));
          lv.colour.push_back(static_cast<std::uint32_t>(c + 1));
        }
      }
    }

    std::vector<std::uint64_t> remaining = cand;
    for (std::size_t i = lv.order.size(); i-- > 0;) {
      Level& cur = levels_[depth];
      if (clique.size() + cur.colour[i] <= best_size_) return;
      const std::size_t v = cur.order[i];
      const auto* nv = row(v);
      std::vector<std::uint64_t> child(words_);
      bool any = false;
      for (std::size_t k = 0; k < words_; ++k) {
        child[k] = remaining[k] & nv[k];
        any |= child[k] != 0;
      }
      clique.push_back(v);
      if (!any) {
        if (clique.size() > best_size_) {
          best_ = clique;
          best_size_ = clique.size();
        }
      } else {
        expand(clique, child, depth + 1);
      }
      clique.pop_back();
      remaining[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
    }
  }

  // Try to place v in a class below `safe`: v must conflict with exactly one
  // member w there, and w must fit some later class below `safe`.
  bool renumber(Level& lv, const std::uint64_t* nv, std::size_t v, std::size_t safe) {
    for (std::size_t c1 = 0; c1 + 1 < safe; ++c1) {
      auto* cls1 = lv.classes.data() + c1 * words_;
      const std::size_t w = sole_conflict(cls1, nv);
      if (w >= n_) continue;
      const auto* nw = row(w);
      for (std::size_t c2 = c1 + 1; c2 < safe; ++c2) {
        auto* cls2 = lv.classes.data() + c2 * words_;
        if (c2 * words_ >= lv.classes.size()) break;
        if (!disjoint(cls2, nw)) continue;
        cls1[w >> 6] &= ~(std::uint64_t{1} << (w & 63));
        cls2[w >> 6] |= std::uint64_t{1} << (w & 63);
        cls1[v >> 6] |= std::uint64_t{1} << (v & 63);
        return true;
      }
    }
    return false;
  }

  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> adj_;
  std::optional<Seconds> time_limit_;
  std::chrono::steady_clock::time_point start_;
  std::size_t best_size_;
  std::vector<std::size_t> best_;
  std::deque<Level> levels_;
  std::size_t nodes_ = 0;
};

}  // namespace

CliqueResult max_weight_clique(std::span<const Bitset> adjacency, std::span<const std::uint64_t> weights,
                               std::optional<Seconds> time_limit, std::uint64_t must_exceed) {
  check_shape(adjacency, weights);
  const std::size_t n = adjacency.size();
  if (n == 0) return {{}, 0, true, 0};

  const auto order = degeneracy_order(adjacency);
  std::vector<std::size_t> position(n);
  for (std::size_t i = 0; i < n; ++i) position[order[i]] = i;

  std::vector<Bitset> renumbered(n, Bitset(n));
  std::vector<std::uint64_t> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t old = order[i];
    w[i] = weights[old];
    for (std::size_t u = adjacency[old].first(); u < n; u = adjacency[old].next(u)) {
      renumbered[i].set(position[u]);
    }
  }

  CliqueResult result;
  result.optimal = true;
  const bool uniform = std::all_of(w.begin(), w.end(), [&](std::uint64_t x) { return x == w.front(); });
  if (uniform) {
    const std::uint64_t unit = std::max<std::uint64_t>(w.front(), 1);
    UnitBranchAndBound solver(renumbered, time_limit, static_cast<std::size_t>(must_exceed / unit));
    solver.run();
    for (std::size_t v : solver.best()) result.vertices.push_back(order[v]);
    result.weight = w.front() * solver.best().size();
    result.nodes = solver.nodes();
  } else {
    BranchAndBound solver(std::move(renumbered), std::move(w), time_limit, must_exceed);
    solver.run();
    for (std::size_t v : solver.best()) result.vertices.push_back(order[v]);
    result.weight = solver.best().empty() ? 0 : solver.best_weight();
    result.nodes = solver.nodes();
  }
  std::sort(result.vertices.begin(), result.vertices.end());
  return result;
}

// ------------------------------------------------------------ local search

CliqueResult local_search_weight_clique(std::span<const Bitset> adjacency,
                                        std::span<const std::uint64_t> weights,
                                        const LocalSearchOptions& options) {
  check_shape(adjacency, weights);
  const std::size_t n = adjacency.size();
  CliqueResult best;
  if (n == 0) return best;

  const auto start = std::chrono::steady_clock::now();
  auto out_of_time = [&] {
    return options.time_limit && std::chrono::steady_clock::now() - start > *options.time_limit;
  };

  std::mt19937_64 rng(options.seed);
  std::vector<std::uint32_t> miss(n);
  std::vector<bool> in_clique(n);
  std::vector<std::uint64_t> tabu_until(n);
  std::vector<std::size_t> clique;
  std::uint64_t weight = 0;

  auto toggle = [&](std::size_t v, bool add) {
    // Every non-neighbour u != v gains or loses one conflicting member.
    for (std::size_t u = 0; u < n; ++u) {
      if (u == v || adjacency[v].test(u)) continue;
      if (add) ++miss[u]; else --miss[u];
    }
    in_clique[v] = add;
    if (add) {
      clique.push_back(v);
      weight += weights[v];
    } else {
      clique.erase(std::find(clique.begin(), clique.end(), v));
      weight -= weights[v];
    }
  };

  auto record = [&] {
    if (weight > best.weight || best.vertices.empty()) {
      best.weight = weight;
      best.vertices = clique;
      std::sort(best.vertices.begin(), best.vertices.end());
    }
  };

  for (int restart = 0; restart < std::max(1, options.restarts) && !out_of_time(); ++restart) {
    std::fill(miss.begin(), miss.end(), 0);
    std::fill(in_clique.begin(), in_clique.end(), false);
    std::fill(tabu_until.begin(), tabu_until.end(), 0);
    clique.clear();
    weight = 0;
    toggle(static_cast<std::size_t>(rng() % n), true);

    for (std::uint64_t step = 1; step <= options.steps_per_restart; ++step) {
      if (step % 256 == 0 && out_of_time()) break;
      // Prefer free additions; otherwise the best single swap; otherwise drop.
      std::size_t add = n;
      std::size_t swap_in = n;
      std::int64_t swap_gain = 0;
      std::uint64_t ties = 0;
      for (std::size_t v = 0; v < n; ++v) {
        if (in_clique[v] || tabu_until[v] > step) continue;
        if (miss[v] == 0) {
          if (add == n || weights[v] > weights[add] || (weights[v] == weights[add] && rng() % 2)) add = v;
        } else if (miss[v] == 1 && add == n) {
          std::size_t u = n;
          for (std::size_t c : clique) {
            if (!adjacency[v].test(c)) { u = c; break; }
          }
          const auto gain = static_cast<std::int64_t>(weights[v]) - static_cast<std::int64_t>(weights[u]);
          if (swap_in == n || gain > swap_gain) {
            swap_in = v;
            swap_gain = gain;
            ties = 1;
          } else if (gain == swap_gain && rng() % ++ties == 0) {
            swap_in = v;
          }
        }
      }
      if (add != n) {
        toggle(add, true);
      } else if (swap_in != n) {
        std::size_t out = n;
        for (std::size_t c : clique) {
          if (!adjacency[swap_in].test(c)) { out = c; break; }
        }
        toggle(out, false);
        tabu_until[out] = step + 7 + rng() % 10;
        toggle(swap_in, true);
      } else if (!clique.empty()) {
        auto lightest = *std::min_element(clique.begin(), clique.end(),
                                          [&](std::size_t a, std::size_t b) { return weights[a] < weights[b]; });
        toggle(lightest, false);
        tabu_until[lightest] = step + 7 + rng() % 10;
      }
      record();
    }
  }
  best.optimal = false;
  return best;
}

}  // namespace chebpa
