#pragma once

#include "chebpa/bigint.hpp"
#include "chebpa/core.hpp"

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace chebpa {

// ------------------------------------------------------- single-step rules

// Sum over i in `positions` of inner([1..n1+1] - {i}). Positions must lie
// in [1..n1+1], increase, and be spaced at least d apart.
BigInt one_step_lower(int n1, int d, std::span<const int> positions,
                      const std::function<BigInt(const Alphabet&)>& inner);

// (k+1)^d - C(k+d-1, d-1); requires d >= 3, k >= 1.
BigInt gen_coefficient(int d, int k);
// gen_coefficient(d, k) * base, a lower bound on P(dk+d-1, d).
BigInt gen_lower(int d, int k, const BigInt& base);

// pnmd * inner, a lower bound on P(n+m, d).
BigInt prefix_lower(int n, int m, int d, const BigInt& pnmd, const BigInt& inner);

// inner_upper * C(n, k); requires 1 <= k <= d < n.
BigInt contraction_upper(int n, int d, int k, const BigInt& inner_upper);

// Closed forms: d >= n -> 1, d = 1 -> n!, d = 2 -> n!/2^floor(n/2),
// d = n-1 (n >= 3) -> 3, d = n-2 (n >= 5) -> 10.
std::optional<BigInt> exact_formulas(int n, int d);

// The diagonal inequality 2k(m+1) < (n0+1)(1 + floor(n0/(2k-1))) exactly as
// stated; requires n0 >= 2k >= 2.
bool stabilization_check(int n0, int k, const BigInt& m);

// The form the table engine relies on: when true, P(n0, n0-k) <= m implies
// P(n, n-k) <= m for all n >= n0. Uses floor((n0-1)/(2k-1)) in place of
// floor(n0/(2k-1)); the two agree unless 2k-1 divides n0, where the
// counting step needs the smaller value (n0=2, k=1, m=2 passes the plain
// check yet P(3,2) = 3).
bool stabilization_applies(int n0, int k, const BigInt& m);

// --------------------------------------------------------------- provenance

// A rule name with ordered key=value parameters. Parameters carry every
// number the rule consumed, so replay needs nothing else.
struct Provenance {
  std::string rule;
  std::vector<std::pair<std::string, std::string>> params;
  bool cited = false;

  // rule(key=value;key=value), with a trailing "!cited" when cited.
  std::string text() const;
  static Provenance parse(const std::string& text);
  const std::string& param(const std::string& key) const;
  bool operator==(const Provenance&) const = default;
};

struct BoundRecord {
  int n = 0;
  int d = 0;
  BigInt lower = 1;
  std::optional<BigInt> upper;
  Provenance lower_provenance;
  Provenance upper_provenance;

  bool closed() const { return upper && *upper == lower; }
};

// Recomputes the number a provenance claims for cell (n, d).
BigInt replay_lower(int n, int d, const Provenance& p);
BigInt replay_upper(int n, int d, const Provenance& p);

// ------------------------------------------------------------ table engine

struct SeedValue {
  BigInt value;
  std::string source;  // free text, kept in provenance
};

struct TableSeeds {
  // Proven maxima (lower and upper) for P(n, d).
  std::map<std::pair<int, int>, SeedValue> exact;
  // Verified arrays over [1..n].
  std::map<std::pair<int, int>, SeedValue> search;
  // Verified arrays over other alphabets, feeding the one-step rule.
  std::map<std::pair<Alphabet, int>, SeedValue> alphabet_search;
  // Verified prefix sets, keyed (universe, length, distance).
  std::map<std::tuple<int, int, int>, SeedValue> prefix;
  // Unverified lower bounds, used only when explicitly allowed.
  std::map<std::pair<int, int>, SeedValue> cited;
};

class BoundTable {
 public:
  BoundTable(int n_max, int d_max, std::vector<BoundRecord> records);

  int n_max() const { return n_max_; }
  int d_max() const { return d_max_; }
  const BoundRecord& at(int n, int d) const;
  // Sorted by (n, d).
  const std::vector<BoundRecord>& records() const { return records_; }

 private:
  int n_max_;
  int d_max_;
  std::vector<BoundRecord> records_;
};

using ProgressSink = std::function<void(const std::string&)>;

// Fixed-point iteration of every lower and upper rule over n in [1..n_max],
// d in [1..d_max]. Throws InconsistencyError naming both provenances if a
// lower bound ever exceeds an upper bound.
BoundTable build_table(int n_max, int d_max, const TableSeeds& seeds, bool allow_cited = false,
                       const ProgressSink& progress = {});

// Replays every record and checks that each input a provenance cites is
// still covered by the table. Returns a description of the first problem.
std::optional<std::string> audit_table(const BoundTable& table);

// Evidence for the constant c_r with P(d+r, d) = c_r for all d >= d_r.
struct DiagonalConstants {
  int r = 0;
  std::optional<BigInt> c;
  std::optional<int> d_r;
};

DiagonalConstants diagonal_constants(const BoundTable& table, int r);

}  // namespace chebpa
