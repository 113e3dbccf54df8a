#include "chebpa/construct.hpp"
#include "chebpa/error.hpp"
#include "chebpa/prefix.hpp"
#include "chebpa/search.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace chebpa;

namespace {

const PermutationArray& s3() {
  static const auto a = oracle::array_of(3, 2, {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}});
  return a;
}

PermutationArray singleton(int n, int d) { return oracle::array_of(n, d, {[n] {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  return v;
}()}); }

void certified(const PermutationArray& a, int n, int d) {
  CHECK(a.alphabet() == Alphabet::range(n));
  CHECK(a.declared_distance() == d);
  CHECK((a.size() < 2 || oracle::min_distance(a) >= d));
}

}  // namespace

TEST_CASE("mod code sizes") {
  const auto c83 = mod_code(8, 3);
  CHECK(c83.size() == 72);
  certified(c83, 8, 3);
  CHECK(mod_code(4, 2).size() == 4);
  CHECK(mod_code(3, 3).size() == 1);
  for (int n = 1; n <= 9; ++n) {
    for (int d = 1; d <= n; ++d) CHECK(BigInt(mod_code(n, d).size()) == mod_code_size(n, d));
  }
  CHECK_THROWS_AS(mod_code(3, 4), DomainError);
}

TEST_CASE("product example on sixteen symbols") {
  const auto a = oracle::array_of(9, 5, {{1, 2, 3, 4, 5, 6, 7, 8, 9}, {6, 1, 4, 3, 2, 5, 8, 9, 7}});
  const auto b = oracle::array_of(7, 4, {{1, 2, 3, 4, 5, 6, 7}});
  const ProductSplit split{9, 7, 5, 4, 1, 4, 3};
  const auto c = product(a, b, split);
  CHECK(c.size() == 2);
  certified(c, 16, 9);
  CHECK(c.contains(Permutation({1, 2, 3, 4, 9, 10, 11, 12, 13, 5, 6, 7, 8, 14, 15, 16})));
  CHECK(c.contains(Permutation({10, 1, 4, 3, 2, 9, 12, 13, 11, 5, 6, 7, 8, 14, 15, 16})));
  CHECK(chebyshev_distance(c.members()[0], c.members()[1]) == 9);
}

TEST_CASE("product split selection") {
  const auto split = ProductSplit::find(9, 5, 7, 4);
  REQUIRE(split);
  CHECK(split->a == 1);
  CHECK(split->r1 == 4);
  CHECK(split->r2 == 3);
  CHECK_THROWS_AS((ProductSplit{4, 4, 2, 2, 1, 2, 1}.validate()), DomainError);
}

TEST_CASE("product powers") {
  const auto p42 = exact_max_array(Alphabet::range(4), 2);
  const auto sq = product_power(p42, 2);
  CHECK(sq.size() == 36);
  certified(sq, 8, 4);
  const auto s3sq = product_power(s3(), 2);
  CHECK(s3sq.size() == 9);
  certified(s3sq, 6, 4);
  CHECK(product_power(singleton(3, 2), 2).size() == 1);
}

TEST_CASE("product members differing in the first factor are far apart somewhere") {
  const auto a = s3();
  const auto b = exact_max_array(Alphabet::range(4), 2);
  const auto split = ProductSplit::find(3, 2, 4, 2);
  REQUIRE(split);
  // Rebuild each member pair by factor to know which part differs.
  for (const auto& s : a.members()) {
    for (const auto& s2 : a.members()) {
      if (s == s2) continue;
      for (const auto& t : b.members()) {
        for (const auto& t2 : b.members()) {
          std::vector<int> x, y;
          for (auto v : s.values()) x.push_back(split->map_first(v));
          for (auto v : t.values()) x.push_back(split->map_second(v));
          for (auto v : s2.values()) y.push_back(split->map_first(v));
          for (auto v : t2.values()) y.push_back(split->map_second(v));
          CHECK(oracle::distance(x, y) >= 4);
        }
      }
    }
  }
}

TEST_CASE("insert pair") {
  CHECK(insert_pair(s3()).size() == 30);
  certified(insert_pair(s3()), 5, 2);
  CHECK(insert_pair(singleton(2, 2)).size() == 6);
  const auto p62 = insert_pair(exact_max_array(Alphabet::range(4), 2));
  CHECK(p62.size() == 90);
  certified(p62, 6, 2);
  // Chains from P(2,2) and P(3,2) reach n!/2^floor(n/2).
  PermutationArray even = singleton(2, 2), odd = s3();
  for (int n = 4; n <= 9; n += 2) {
    even = insert_pair(even);
    CHECK(BigInt(even.size()) == factorial(n) / power(2, n / 2));
    if (n + 1 <= 9) {
      odd = insert_pair(odd);
      CHECK(BigInt(odd.size()) == factorial(n + 1) / power(2, (n + 1) / 2));
    }
  }
  CHECK(verify(even).valid);
  CHECK(verify(odd).valid);
}

TEST_CASE("expand") {
  const auto p53 = exact_max_array(Alphabet::range(5), 3);
  const auto e = expand(p53, {1, 4});
  CHECK(e.size() == 20);
  certified(e, 6, 3);
  CHECK(expand(singleton(4, 2), {1}).size() == 1);
  const auto e3 = expand(s3(), {1, 3});
  CHECK(e3.size() == 6);
  certified(e3, 4, 2);
  CHECK(default_expand_positions(5, 3) == std::vector<int>{1, 4});
  CHECK(expand(p53).size() == 20);
  CHECK_THROWS_AS(expand(p53, {1, 3}), DomainError);
  CHECK_THROWS_AS(expand(p53, {1, 7}), DomainError);
}

TEST_CASE("diagonal lift") {
  const auto p53 = exact_max_array(Alphabet::range(5), 3);
  const auto l = lift_diagonal(p53);
  CHECK(l.size() == 10);
  certified(l, 6, 4);
  CHECK(lift_diagonal(singleton(3, 2)).size() == 1);
  // n = 2d is the boundary case.
  const auto p42 = exact_max_array(Alphabet::range(4), 2);
  certified(lift_diagonal(p42), 5, 3);
  CHECK_THROWS_AS(lift_diagonal(mod_code(7, 3)), DomainError);
}

TEST_CASE("concatenating prefixes") {
  PrefixSet u(5, 1, 2, {{1}, {3}, {5}});
  const auto greedy_suffix = [](const SymbolString&, const Alphabet& rest) {
    return greedy_lex(rest, 2, PermutationArray(rest, 2));
  };
  const auto c = concat_prefixes(u, greedy_suffix);
  certified(c, 5, 2);
  std::size_t expected = 0;
  for (const auto& s : u.members()) expected += greedy_suffix(s, u.complement(s)).size();
  CHECK(c.size() == expected);

  PrefixSet one(4, 1, 3, {{2}});
  CHECK(concat_prefixes(one, [](const SymbolString&, const Alphabet& rest) {
          return PermutationArray(rest, 3, {Permutation(std::vector<int>(rest.symbols().begin(), rest.symbols().end()))});
        }).size() == 1);

  const auto t = prefix_search(8, 3, 3, {}, true);
  REQUIRE(t.size() == 24);
  const auto big = concat_prefixes(t, [](const SymbolString&, const Alphabet& rest) {
    return exact_max_array(rest, 3);
  });
  certified(big, 8, 3);
  CHECK(big.size() == 24 * 10);

  CHECK_THROWS_AS(concat_prefixes(u, [](const SymbolString&, const Alphabet&) { return s3(); }), ComparabilityError);
}

TEST_CASE("constructors reject invalid inputs") {
  const auto bad = oracle::array_of(3, 2, {{1, 2, 3}, {1, 3, 2}});
  CHECK_THROWS_AS(insert_pair(bad), VerificationError);
  CHECK_THROWS_AS(lift_diagonal(bad), VerificationError);
  CHECK_THROWS_AS(insert_pair(PermutationArray(Alphabet({1, 2, 4}), 2)), DomainError);
}
