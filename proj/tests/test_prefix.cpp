#include "chebpa/error.hpp"
#include "chebpa/prefix.hpp"
#include "chebpa/string_space.hpp"

#include <doctest.h>

#include <map>

using namespace chebpa;

TEST_CASE("closed form examples") {
  CHECK(prefix_closed_form(6, 2, 3) == BigInt(4));
  CHECK(prefix_closed_form(15, 5, 5) == BigInt(243));
  CHECK(prefix_closed_form(8, 2, 4) == BigInt(4));
  CHECK(prefix_closed_form(4, 2, 2) == BigInt(4));
  CHECK_FALSE(prefix_closed_form(7, 3, 3).has_value());
}

TEST_CASE("witness sets") {
  CHECK(prefix_witness(6, 2, 3).members() == std::vector<SymbolString>{{1, 2}, {1, 5}, {4, 2}, {4, 5}});
  CHECK(prefix_witness(8, 2, 4).members() == std::vector<SymbolString>{{1, 2}, {1, 6}, {5, 2}, {5, 6}});
  CHECK(prefix_witness(3, 2, 3).members() == std::vector<SymbolString>{{1, 2}});
  CHECK_THROWS_AS(prefix_witness(7, 3, 3), DomainError);
  for (int n = 2; n <= 14; ++n) {
    for (int m = 2; m <= n; ++m) {
      for (int d = m; d <= n; ++d) {
        if (auto v = prefix_closed_form(n, m, d)) {
          const auto w = prefix_witness(n, m, d);
          CHECK(BigInt(w.size()) == *v);
          CHECK(w.valid());
        }
      }
    }
  }
}

TEST_CASE("closed form equals the exact search where both apply") {
  for (int n = 2; n <= 9; ++n) {
    for (int m = 2; m <= n; ++m) {
      if (StringSpace(Alphabet::range(n), m).size() > 3000) continue;
      for (int d = m; d <= n; ++d) {
        const auto v = prefix_closed_form(n, m, d);
        if (!v) continue;
        CAPTURE(n);
        CAPTURE(m);
        CAPTURE(d);
        CHECK(BigInt(prefix_search(n, m, d, {}, true).size()) == *v);
      }
    }
  }
}

TEST_CASE("exact and heuristic searches") {
  CHECK(prefix_search(4, 2, 2, {}, true).size() == 4);
  CHECK(prefix_search(5, 5, 5, {}, true).size() == 1);
  SearchConfig config;
  config.seed = 1;
  const auto h = prefix_search(9, 3, 4, config, false);
  CHECK(h.size() >= 15);
  CHECK(h.valid());
  CHECK(h == prefix_search(9, 3, 4, config, false));
  CHECK_THROWS_AS(prefix_search(4, 5, 2, {}, true), DomainError);
  CliqueOptions tight;
  tight.vertex_cap = 100;
  CHECK_THROWS_AS(prefix_search(8, 3, 3, {}, true, tight), InfeasibleError);
}

TEST_CASE("complements partition the universe") {
  const auto t = prefix_search(8, 3, 3, {}, true);
  for (const auto& s : t.members()) {
    const auto rest = t.complement(s);
    CHECK(rest.size() == 5);
    for (auto x : s) CHECK_FALSE(rest.contains(x));
  }
}

TEST_CASE("exact prefix values are monotone") {
  std::map<std::tuple<int, int, int>, std::size_t> exact;
  for (int n = 3; n <= 7; ++n) {
    for (int m = 2; m <= 3; ++m) {
      for (int d = 2; d <= n; ++d) exact[{n, m, d}] = prefix_search(n, m, d, {}, true).size();
    }
  }
  for (const auto& [key, v] : exact) {
    const auto [n, m, d] = key;
    if (auto it = exact.find({n, m, d + 1}); it != exact.end()) CHECK(it->second <= v);
    if (auto it = exact.find({n + 1, m, d}); it != exact.end()) CHECK(it->second >= v);
  }
}
