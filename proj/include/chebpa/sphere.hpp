#pragma once

#include "chebpa/bigint.hpp"

#include <optional>

namespace chebpa {

// Number of permutations of [1..n] within Chebyshev distance d of the
// identity.
struct SphereSize {
  int n = 0;
  int d = 0;
  BigInt count;
};

// Widest occupancy window (in columns) the sphere DP accepts.
inline constexpr int kSphereWindowCap = 26;

// Exact count via a row-by-row DP over the occupancy bitmask of the active
// column band. Throws InfeasibleError when the band is wider than
// kSphereWindowCap and the count is not trivially n!.
SphereSize sphere_size(int n, int d);

// Same as sphere_size but returns nullopt instead of throwing on
// infeasibility.
std::optional<BigInt> try_sphere_count(int n, int d);

// ceil(n! / V(n, d-1)); requires n > d >= 2.
BigInt gv_lower_bound(int n, int d);

// floor((n+1)! / V(n+1, d/2)); requires even d and 2d >= n >= d >= 2.
BigInt sphere_packing_upper_bound(int n, int d);

}  // namespace chebpa
