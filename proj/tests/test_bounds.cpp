#include "chebpa/bounds.hpp"
#include "chebpa/error.hpp"
#include "chebpa/search.hpp"
#include "chebpa/sphere.hpp"

#include <doctest.h>

using namespace chebpa;

namespace {

TableSeeds small_exacts() {
  TableSeeds seeds;
  for (auto [n, d] : {std::pair{4, 2}, {5, 3}, {6, 3}, {6, 4}}) {
    seeds.exact[{n, d}] = SeedValue{BigInt(exact_max_array(Alphabet::range(n), d).size()), "exact_clique"};
  }
  return seeds;
}

}  // namespace

TEST_CASE("one-step sums") {
  const std::vector<int> a{3, 6, 9};
  const auto inner = [](const Alphabet& sigma) -> BigInt {
    return sigma.contains(6) ? 17573 : 18403;
  };
  CHECK(one_step_lower(10, 3, a, inner) == 53549);
  CHECK(one_step_lower(10, 3, std::vector<int>{1, 4, 7, 10}, [](const Alphabet&) { return BigInt(9033); }) == 36132);
  CHECK(one_step_lower(4, 2, std::vector<int>{2}, [](const Alphabet&) { return BigInt(1); }) == 1);
  CHECK_THROWS_AS(one_step_lower(10, 3, std::vector<int>{1, 3}, inner), DomainError);
  CHECK_THROWS_AS(one_step_lower(10, 3, std::vector<int>{12}, inner), DomainError);
}

TEST_CASE("generalised recursion coefficient") {
  CHECK(gen_lower(5, 2, 1) == 228);
  CHECK(gen_lower(3, 3, 1) == 54);
  CHECK(gen_lower(3, 1, 1) == 5);
  for (int d = 3; d <= 10; ++d) {
    for (int k = 1; k <= 10; ++k) CHECK(gen_coefficient(d, k) >= power(BigInt(k + 1), d - 1));
  }
  CHECK_THROWS_AS(gen_coefficient(2, 1), DomainError);
}

TEST_CASE("prefix and contraction rules") {
  CHECK(prefix_lower(8, 3, 3, 59, 413) == 59 * 413);
  CHECK(prefix_lower(5, 3, 3, 1, 77) == 77);
  CHECK(prefix_lower(5, 3, 3, 24, 10) == 240);
  CHECK(contraction_upper(11, 6, 6, 1) == 462);
  CHECK(contraction_upper(9, 4, 3, 1) == binomial(9, 3));
  CHECK(contraction_upper(6, 2, 2, 6) == 90);
  CHECK_THROWS_AS(contraction_upper(5, 2, 3, 1), DomainError);
}

TEST_CASE("closed forms") {
  CHECK(exact_formulas(8, 2) == BigInt(2520));
  CHECK(exact_formulas(9, 8) == BigInt(3));
  CHECK(exact_formulas(4, 7) == BigInt(1));
  CHECK(exact_formulas(6, 1) == BigInt(720));
  CHECK(exact_formulas(7, 5) == BigInt(10));
  CHECK_FALSE(exact_formulas(7, 3).has_value());
  CHECK(exact_formulas(4, 2) == BigInt(6));
}

TEST_CASE("diagonal inequality") {
  CHECK(stabilization_check(11, 2, 10));
  CHECK(stabilization_check(295, 3, 2950));
  CHECK_FALSE(stabilization_check(5, 2, 10));
  CHECK_THROWS_AS(stabilization_check(3, 2, 10), DomainError);
  // The engine's form is never weaker than the literal one is strong.
  for (int k = 1; k <= 4; ++k) {
    for (int n0 = 2 * k; n0 <= 40; ++n0) {
      for (int m = 1; m <= 60; ++m) {
        if (stabilization_applies(n0, k, m)) CHECK(stabilization_check(n0, k, m));
      }
    }
  }
  CHECK(stabilization_check(2, 1, 2));
  CHECK_FALSE(stabilization_applies(2, 1, 2));
}

TEST_CASE("provenance text round trip") {
  Provenance p{"gen", {{"k", "2"}, {"base", "1"}}, false};
  CHECK(p.text() == "gen(k=2;base=1)");
  CHECK(Provenance::parse(p.text()) == p);
  Provenance c{"cited", {{"value", "9033"}, {"source", "x"}}, true};
  CHECK(Provenance::parse(c.text()) == c);
  CHECK(c.text().ends_with("!cited"));
  CHECK(replay_lower(14, 5, Provenance{"gen", {{"k", "2"}, {"base", "1"}}, false}) == 228);
  CHECK(replay_upper(11, 6, Provenance{"contraction", {{"k", "6"}, {"inner", "1"}}, false}) == 462);
}

TEST_CASE("table from formulas alone") {
  const auto t3 = build_table(3, 3, {});
  CHECK(t3.at(3, 2).lower == 3);
  CHECK(t3.at(3, 2).closed());
  const auto t8 = build_table(8, 2, {});
  for (int n = 2; n <= 8; ++n) {
    CHECK(t8.at(n, 2).closed());
    CHECK(t8.at(n, 2).lower == factorial(n) / power(2, n / 2));
  }
}

TEST_CASE("table with exact seeds closes small cells") {
  const auto t = build_table(6, 5, small_exacts());
  CHECK(t.at(4, 2).closed());
  CHECK(t.at(5, 3).closed());
  CHECK(t.at(5, 3).lower == 10);
  CHECK(t.at(6, 5).closed());
  CHECK(t.at(6, 5).lower == 3);
  CHECK_FALSE(audit_table(t).has_value());
}

TEST_CASE("every record replays and lower never exceeds upper") {
  const auto t = build_table(12, 12, small_exacts());
  CHECK_FALSE(audit_table(t).has_value());
  for (const auto& r : t.records()) {
    CAPTURE(r.n);
    CAPTURE(r.d);
    CHECK(r.lower >= 1);
    REQUIRE(r.upper);
    CHECK(r.lower <= *r.upper);
    CHECK(replay_lower(r.n, r.d, r.lower_provenance) == r.lower);
    CHECK(replay_upper(r.n, r.d, r.upper_provenance) == *r.upper);
    if (r.d >= 2 && r.d < r.n && r.n <= 11) {
      if (auto v = try_sphere_count(r.n, r.d - 1)) CHECK(ceil_div(factorial(r.n), *v) <= r.lower);
    }
  }
}

TEST_CASE("adding a seed only tightens") {
  const auto base = build_table(9, 9, {});
  const auto seeded = build_table(9, 9, small_exacts());
  for (const auto& r : base.records()) {
    const auto& s = seeded.at(r.n, r.d);
    CHECK(s.lower >= r.lower);
    CHECK(*s.upper <= *r.upper);
  }
}

TEST_CASE("cited values stay out unless allowed and conflicts are reported") {
  TableSeeds seeds;
  seeds.cited[{7, 3}] = SeedValue{99, "reference"};
  CHECK(build_table(7, 7, seeds).at(7, 3).lower < 99);
  const auto allowed = build_table(7, 7, seeds, true);
  CHECK(allowed.at(7, 3).lower == 99);
  CHECK(allowed.at(7, 3).lower_provenance.cited);
  seeds.cited[{5, 3}] = SeedValue{11, "wrong"};
  CHECK_THROWS_AS(build_table(7, 7, seeds, true), InconsistencyError);
}

TEST_CASE("diagonal evidence") {
  const auto t = build_table(12, 12, small_exacts());
  const auto r1 = diagonal_constants(t, 1);
  REQUIRE(r1.c);
  CHECK(*r1.c == 3);
  const auto r2 = diagonal_constants(t, 2);
  REQUIRE(r2.c);
  CHECK(*r2.c == 10);
}
