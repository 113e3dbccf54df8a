#pragma once

#include "chebpa/bigint.hpp"
#include "chebpa/prefix_set.hpp"
#include "chebpa/search.hpp"

#include <optional>

namespace chebpa {

// Exact size of the largest length-m prefix set over [1..n] at distance d
// when some multiple k*d of d lies in [n .. n+d-m] and d >= m >= 2: k^m.
std::optional<BigInt> prefix_closed_form(int n, int m, int d);

// The set achieving the closed form: position i takes a symbol from
// {i, i+d, ..., i+(k-1)d}. Throws DomainError where no closed form applies.
PrefixSet prefix_witness(int n, int m, int d);

// Exact mode: maximum clique on the distance graph of length-m strings.
// Otherwise seeded Random/Greedy over the strings. Both certify the result.
PrefixSet prefix_search(int n, int m, int d, const SearchConfig& config, bool exact,
                        const CliqueOptions& options = {});

}  // namespace chebpa
