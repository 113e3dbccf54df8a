#include "chebpa/construct.hpp"

#include "chebpa/error.hpp"

#include <algorithm>
#include <string>

namespace chebpa {

namespace {

// Largest output any constructor will materialise.
constexpr std::size_t kMemberCap = 2'000'000;

void check_output_size(const BigInt& size, const char* who) {
  if (size > kMemberCap) {
    throw InfeasibleError(std::string(who) + " would produce " + to_string(size) + " permutations (cap " +
                          std::to_string(kMemberCap) + ")");
  }
}

void require_range_input(const PermutationArray& a, int min_distance, const char* who) {
  if (!a.alphabet().is_range()) {
    throw DomainError(std::string(who) + " needs an input over [1..n], got " + a.alphabet().to_string());
  }
  if (a.declared_distance() < min_distance) {
    throw DomainError(std::string(who) + " needs input distance >= " + std::to_string(min_distance));
  }
  if (a.empty()) throw DomainError(std::string(who) + " needs a non-empty input");
  require_valid(a, who);
}

PermutationArray certified(int n, int d, std::vector<Permutation> members, const char* who) {
  PermutationArray out(Alphabet::range(n), d, std::move(members));
  require_valid(out, who);
  return out;
}

std::vector<Permutation> product_members(const PermutationArray& a, const PermutationArray& b,
                                         const ProductSplit& split) {
  std::vector<std::vector<Symbol>> left, right;
  for (const auto& s : a.members()) {
    std::vector<Symbol> v;
    for (Symbol x : s.values()) v.push_back(split.map_first(x));
    left.push_back(std::move(v));
  }
  for (const auto& t : b.members()) {
    std::vector<Symbol> v;
    for (Symbol x : t.values()) v.push_back(split.map_second(x));
    right.push_back(std::move(v));
  }
  std::vector<Permutation> out;
  out.reserve(left.size() * right.size());
  for (const auto& l : left) {
    for (const auto& r : right) {
      std::vector<Symbol> v = l;
      v.insert(v.end(), r.begin(), r.end());
      out.emplace_back(std::move(v));
    }
  }
  return out;
}

// Prepend m and shift symbols >= m up by one.
Permutation prepend(const Permutation& p, Symbol m) {
  std::vector<Symbol> v;
  v.reserve(p.size() + 1);
  v.push_back(m);
  for (Symbol x : p.values()) v.push_back(x >= m ? x + 1 : x);
  return Permutation(std::move(v));
}

}  // namespace

// ------------------------------------------------------------ ProductSplit

void ProductSplit::validate() const {
  auto fail = [&](const std::string& why) {
    throw DomainError("inconsistent product split (n1=" + std::to_string(n1) + " d1=" + std::to_string(d1) +
                      " n2=" + std::to_string(n2) + " d2=" + std::to_string(d2) + " a=" + std::to_string(a) +
                      " r1=" + std::to_string(r1) + " r2=" + std::to_string(r2) + "): " + why);
  };
  if (n1 < 1 || n2 < 1 || d1 < 1 || d2 < 1) fail("sizes and distances must be positive");
  if (a < 1) fail("block count must be positive");
  if (n1 != a * d1 + r1 || r1 < 0 || r1 > d1) fail("n1 must equal a*d1 + r1 with 0 <= r1 <= d1");
  if (n2 != a * d2 + r2 || r2 < 0 || r2 > d2) fail("n2 must equal a*d2 + r2 with 0 <= r2 <= d2");
}

std::optional<ProductSplit> ProductSplit::find(int n1, int d1, int n2, int d2) {
  if (n1 < 1 || n2 < 1 || d1 < 1 || d2 < 1) return std::nullopt;
  for (int a = std::min(n1 / d1, n2 / d2); a >= 1; --a) {
    const int r1 = n1 - a * d1;
    const int r2 = n2 - a * d2;
    if (r1 <= d1 && r2 <= d2) return ProductSplit{n1, n2, d1, d2, a, r1, r2};
  }
  return std::nullopt;
}

Symbol ProductSplit::map_first(Symbol x) const {
  if (x <= r1) return x;
  const int s = (x - r1 + d1 - 1) / d1;
  return x + s * d2;
}

Symbol ProductSplit::map_second(Symbol x) const {
  if (x <= a * d2) {
    const int t = (x + d2 - 1) / d2;
    return x + (t - 1) * d1 + r1;
  }
  return x + n1;
}

// ---------------------------------------------------------------- mod code

BigInt mod_code_size(int n, int d) {
  if (!(n >= d && d >= 1)) throw DomainError("mod code needs n >= d >= 1");
  const int a = n / d;
  const int b = n % d;
  return power(factorial(static_cast<unsigned>(a + 1)), static_cast<unsigned>(b)) *
         power(factorial(static_cast<unsigned>(a)), static_cast<unsigned>(d - b));
}

PermutationArray mod_code(int n, int d) {
  check_output_size(mod_code_size(n, d), "mod_code");
  std::vector<std::vector<Symbol>> partial{std::vector<Symbol>(static_cast<std::size_t>(n), 0)};
  for (int residue = 0; residue < d; ++residue) {
    // Positions and values sharing this residue (1-based).
    std::vector<Symbol> cls;
    for (int x = residue == 0 ? d : residue; x <= n; x += d) cls.push_back(x);
    std::vector<std::vector<Symbol>> next;
    for (const auto& base : partial) {
      std::vector<Symbol> order = cls;
      do {
        auto v = base;
        for (std::size_t k = 0; k < cls.size(); ++k) v[static_cast<std::size_t>(cls[k] - 1)] = order[k];
        next.push_back(std::move(v));
      } while (std::next_permutation(order.begin(), order.end()));
    }
    partial = std::move(next);
  }
  std::vector<Permutation> members;
  members.reserve(partial.size());
  for (auto& v : partial) members.emplace_back(std::move(v));
  return certified(n, d, std::move(members), "mod_code");
}

// ----------------------------------------------------------------- product

PermutationArray product(const PermutationArray& a, const PermutationArray& b, const ProductSplit& split) {
  split.validate();
  if (a.alphabet() != Alphabet::range(split.n1) || b.alphabet() != Alphabet::range(split.n2)) {
    throw DomainError("product factors must be over [1..n1] and [1..n2]");
  }
  require_range_input(a, split.d1, "product (first factor)");
  require_range_input(b, split.d2, "product (second factor)");
  check_output_size(BigInt(a.size()) * b.size(), "product");
  return certified(split.n1 + split.n2, split.d1 + split.d2, product_members(a, b, split), "product");
}

PermutationArray product_power(const PermutationArray& a, int r) {
  if (r < 2) throw DomainError("product power needs r >= 2");
  const int n = static_cast<int>(a.alphabet().size());
  const int d = a.declared_distance();
  if (!(n > d && d >= 1)) throw DomainError("product power needs n > d >= 1");
  require_range_input(a, d, "product_power");
  check_output_size(power(BigInt(a.size()), static_cast<unsigned>(r)), "product_power");

  const int blocks = n / d;
  const int rest = n - blocks * d;
  PermutationArray acc = a;
  for (int i = 1; i < r; ++i) {
    const ProductSplit split{i * n, n, i * d, d, blocks, i * rest, rest};
    split.validate();
    acc = PermutationArray(Alphabet::range((i + 1) * n), (i + 1) * d, product_members(acc, a, split));
  }
  require_valid(acc, "product_power");
  return acc;
}

// ------------------------------------------------------------- insert pair

PermutationArray insert_pair(const PermutationArray& a) {
  const int inner = static_cast<int>(a.alphabet().size());
  require_range_input(a, 2, "insert_pair");
  const int n = inner + 2;
  check_output_size(BigInt(a.size()) * binomial(static_cast<unsigned>(n), 2), "insert_pair");
  const Symbol lo = n - 1;
  const Symbol hi = n;
  const Symbol pivot = n - 2;

  std::vector<Permutation> out;
  for (const auto& sigma : a.members()) {
    const auto src = sigma.values();
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        std::vector<Symbol> v;
        v.reserve(static_cast<std::size_t>(n));
        std::size_t k = 0;
        bool pivot_between = false;
        for (int pos = 0; pos < n; ++pos) {
          if (pos == p) {
            v.push_back(lo);
          } else if (pos == q) {
            v.push_back(hi);
          } else {
            const Symbol x = src[k++];
            if (x == pivot && pos > p && pos < q) pivot_between = true;
            v.push_back(x);
          }
        }
        if (pivot_between) std::swap(v[static_cast<std::size_t>(p)], v[static_cast<std::size_t>(q)]);
        out.emplace_back(std::move(v));
      }
    }
  }
  return certified(n, 2, std::move(out), "insert_pair");
}

// ------------------------------------------------------------ expand, lift

std::vector<int> default_expand_positions(int n, int d) {
  if (n < 1 || d < 1) throw DomainError("expand positions need n, d >= 1");
  std::vector<int> out;
  for (int s = 1; s <= n + 1; s += d) out.push_back(s);
  return out;
}

PermutationArray expand(const PermutationArray& a, std::vector<int> positions) {
  const int n = static_cast<int>(a.alphabet().size());
  const int d = a.declared_distance();
  if (d < 1) throw DomainError("expand needs a positive distance");
  if (positions.empty()) positions = default_expand_positions(n, d);
  for (std::size_t j = 0; j < positions.size(); ++j) {
    if (positions[j] < 1 || positions[j] > n + 1) {
      throw DomainError("expand position " + std::to_string(positions[j]) + " outside [1.." +
                        std::to_string(n + 1) + "]");
    }
    if (j > 0 && positions[j - 1] + d > positions[j]) {
      throw DomainError("expand positions " + std::to_string(positions[j - 1]) + " and " +
                        std::to_string(positions[j]) + " are closer than d=" + std::to_string(d));
    }
  }
  require_range_input(a, d, "expand");
  check_output_size(BigInt(a.size()) * positions.size(), "expand");
  std::vector<Permutation> out;
  for (int m : positions) {
    for (const auto& sigma : a.members()) out.push_back(prepend(sigma, m));
  }
  return certified(n + 1, d, std::move(out), "expand");
}

PermutationArray lift_diagonal(const PermutationArray& a) {
  const int n = static_cast<int>(a.alphabet().size());
  const int d = a.declared_distance();
  if (!(d < n && n <= 2 * d)) {
    throw DomainError("lift needs d < n <= 2d (n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")");
  }
  require_range_input(a, d, "lift_diagonal");
  // At n = 2d a pair realising its distance only on the symbols d and 2d
  // would not gain under a leading d; a leading d+1 separates them.
  const Symbol lead = n < 2 * d ? d : d + 1;
  std::vector<Permutation> out;
  for (const auto& sigma : a.members()) out.push_back(prepend(sigma, lead));
  return certified(n + 1, d + 1, std::move(out), "lift_diagonal");
}

// ------------------------------------------------------------------ concat

PermutationArray concat_prefixes(const PrefixSet& prefixes, const SuffixSupplier& suffixes) {
  const int total = prefixes.universe();
  const int d = prefixes.distance();
  if (prefixes.length() >= total) throw DomainError("prefixes must leave at least one suffix symbol");
  if (prefixes.size() == 0) throw DomainError("concat needs at least one prefix");
  if (auto bad = prefixes.violation()) {
    throw VerificationError("prefix set is not at distance " + std::to_string(d));
  }
  std::vector<Permutation> out;
  for (const auto& prefix : prefixes.members()) {
    const Alphabet complement = prefixes.complement(prefix);
    const PermutationArray suffix = suffixes(prefix, complement);
    if (suffix.alphabet() != complement) {
      throw ComparabilityError("suffix array over " + suffix.alphabet().to_string() + " but prefix leaves " +
                               complement.to_string());
    }
    if (suffix.declared_distance() < d) throw DomainError("suffix array distance below the prefix distance");
    require_valid(suffix, "concat_prefixes (suffix)");
    check_output_size(BigInt(out.size()) + suffix.size(), "concat_prefixes");
    for (const auto& tail : suffix.members()) {
      std::vector<Symbol> v = prefix;
      v.insert(v.end(), tail.values().begin(), tail.values().end());
      out.emplace_back(std::move(v));
    }
  }
  return certified(total, d, std::move(out), "concat_prefixes");
}

}  // namespace chebpa
