#include "chebpa/error.hpp"
#include "chebpa/sphere.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace chebpa;

TEST_CASE("sphere examples") {
  CHECK(sphere_size(4, 0).count == 1);
  CHECK(sphere_size(4, 1).count == 5);
  CHECK(sphere_size(6, 5).count == 720);
}

TEST_CASE("sphere matches enumeration up to n = 8") {
  for (int n = 1; n <= 8; ++n) {
    for (int d = 0; d <= n; ++d) {
      CAPTURE(n);
      CAPTURE(d);
      CHECK(sphere_size(n, d).count == oracle::sphere(n, d));
    }
  }
}

TEST_CASE("DP agrees with backtracking beyond enumeration range") {
  for (int n = 9; n <= 13; ++n) {
    for (int d = 1; d <= 3; ++d) CHECK(sphere_size(n, d).count == oracle::sphere_backtrack(n, d));
  }
}

TEST_CASE("radius one gives Fibonacci numbers") {
  for (int n = 1; n <= 20; ++n) CHECK(sphere_size(n, 1).count == oracle::fibonacci(n + 1));
}

TEST_CASE("sphere is monotone in the radius and saturates at n!") {
  for (int n = 1; n <= 14; ++n) {
    for (int d = 0; d + 1 < n; ++d) CHECK(sphere_size(n, d).count <= sphere_size(n, d + 1).count);
    CHECK(sphere_size(n, n - 1).count == factorial(n));
  }
}

TEST_CASE("GV and sphere-packing bounds") {
  CHECK(gv_lower_bound(3, 2) == 2);
  CHECK(gv_lower_bound(4, 3) == ceil_div(24, oracle::sphere(4, 2)));
  CHECK(gv_lower_bound(5, 4) == ceil_div(120, oracle::sphere(5, 3)));
  CHECK(sphere_packing_upper_bound(2, 2) == 2);
  CHECK(sphere_packing_upper_bound(4, 4) == 120 / oracle::sphere(5, 2));
  // Valid but weaker than the contraction bound 462 at (11, 6).
  const auto p116 = sphere_packing_upper_bound(11, 6);
  CHECK(p116 == factorial(12) / oracle::sphere_backtrack(12, 3));
  CHECK(p116 >= 462);
  CHECK_THROWS_AS(sphere_packing_upper_bound(5, 3), DomainError);
  CHECK_THROWS_AS(sphere_packing_upper_bound(9, 4), DomainError);
  CHECK_THROWS_AS(gv_lower_bound(3, 3), DomainError);
}

TEST_CASE("wide bands are refused unless trivially n!") {
  CHECK_THROWS_AS(sphere_size(40, 20), InfeasibleError);
  CHECK_FALSE(try_sphere_count(40, 20).has_value());
  CHECK(sphere_size(30, 29).count == factorial(30));
}
