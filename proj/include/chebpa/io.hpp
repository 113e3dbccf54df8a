#pragma once

#include "chebpa/bigint.hpp"
#include "chebpa/bounds.hpp"
#include "chebpa/core.hpp"
#include "chebpa/prefix_set.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace chebpa {

// PA files: a header line "n d count" (n is the largest symbol) followed by
// one member per line, symbols separated by single spaces, members in
// lexicographic order, LF endings.
std::string format_pa(const PermutationArray& array);
// Throws FormatError on malformed input and VerificationError when `verify`
// is set and two members are closer than the declared distance.
PermutationArray parse_pa(std::string_view text, bool verify = true);
void write_pa(const PermutationArray& array, const std::filesystem::path& path);
PermutationArray read_pa(const std::filesystem::path& path, bool verify = true);

// Prefix-set files: header "n m d count", then one string per line.
std::string format_prefix(const PrefixSet& set);
PrefixSet parse_prefix(std::string_view text, bool verify = true);
void write_prefix(const PrefixSet& set, const std::filesystem::path& path);
PrefixSet read_prefix(const std::filesystem::path& path, bool verify = true);

// Bound tables as CSV: n,d,lower,upper,lower_provenance,upper_provenance,
// one row per cell sorted by (n, d).
std::string format_table_csv(const BoundTable& table);
BoundTable parse_table_csv(std::string_view text);

// Two markdown tables (lower, then upper bounds), rows n and columns d >= 2,
// closed cells in bold.
std::string format_table_markdown(const BoundTable& table);

// Writes through a temporary file and a rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

// ------------------------------------------------------------------- cache

// Either (alphabet, d) for permutation arrays or (n, m, d) for prefix sets.
class CacheKey {
 public:
  static CacheKey array(Alphabet alphabet, int d);
  static CacheKey prefix(int n, int m, int d);
  // Inverse of dir_name(); nullopt for foreign names.
  static std::optional<CacheKey> parse(const std::string& dir_name);

  std::string dir_name() const;
  bool is_array() const { return alphabet_.has_value(); }
  const Alphabet& alphabet() const { return *alphabet_; }
  int n() const { return n_; }
  int m() const { return m_; }
  int d() const { return d_; }

 private:
  CacheKey() = default;
  std::optional<Alphabet> alphabet_;
  int n_ = 0, m_ = 0, d_ = 0;
};

struct CacheEntry {
  BigInt size;
  // Certified entries point at their artifact; cited ones have none.
  std::optional<std::filesystem::path> artifact;
  bool exact = false;  // the artifact is known to be maximum
  bool cited = false;
  std::string source;
};

// A directory per key holding an index file, the artifact, and optionally a
// cited value. Puts keep the largest size; certified and cited values are
// stored apart so a cited number never masks a certificate.
class BoundCache {
 public:
  explicit BoundCache(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }

  // The best certified entry (re-verified from its artifact), or the cited
  // value when `allow_cited` and it is larger.
  std::optional<CacheEntry> get(const CacheKey& key, bool allow_cited = false) const;

  // Each returns true when the stored value changed. Artifacts are
  // verified before they are stored.
  bool put(const CacheKey& key, const PermutationArray& array, bool exact, const std::string& source);
  bool put(const CacheKey& key, const PrefixSet& set, bool exact, const std::string& source);
  bool put_cited(const CacheKey& key, const BigInt& value, const std::string& source);

  std::vector<CacheKey> keys() const;

 private:
  std::optional<CacheEntry> read_index(const CacheKey& key) const;
  bool store(const CacheKey& key, const BigInt& size, bool exact, const std::string& source,
             const std::string& artifact_name, const std::string& artifact_text);

  std::filesystem::path root_;
};

// Cache contents as table seeds: arrays over [1..n] become search (or
// exact) seeds, other alphabets feed the one-step rule, prefix sets the
// prefix rule, and cited values over [1..n] the cited map.
TableSeeds seeds_from_cache(const BoundCache& cache, bool allow_cited);

}  // namespace chebpa
