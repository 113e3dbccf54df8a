#include "chebpa/error.hpp"
#include "chebpa/io.hpp"
#include "chebpa/prefix.hpp"
#include "chebpa/search.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <filesystem>

using namespace chebpa;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("chebpa-test-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("PA files") {
  const auto s3 = parse_pa("3 2 3\n1 2 3\n2 3 1\n3 1 2\n");
  CHECK(s3 == oracle::array_of(3, 2, {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}}));
  CHECK(format_pa(s3) == "3 2 3\n1 2 3\n2 3 1\n3 1 2\n");
  // Members come out sorted whatever the input order.
  CHECK(format_pa(parse_pa("3 2 3\n3 1 2\n1 2 3\n2 3 1\n")) == "3 2 3\n1 2 3\n2 3 1\n3 1 2\n");
  const auto p = exact_max_array(Alphabet::range(5), 3);
  TempDir dir;
  write_pa(p, dir.path / "a.pa");
  CHECK(read_pa(dir.path / "a.pa") == p);
  CHECK(format_pa(parse_pa(format_pa(p))) == format_pa(p));
  CHECK(format_pa(parse_pa("10 9 1\n10 9 8 7 6 5 4 3 2 1\n")) == "10 9 1\n10 9 8 7 6 5 4 3 2 1\n");
}

TEST_CASE("PA parse errors") {
  CHECK_THROWS_AS(parse_pa("3 3 2\n1 2 3\n1 3 2\n"), VerificationError);
  CHECK(parse_pa("3 3 2\n1 2 3\n1 3 2\n", false).size() == 2);
  CHECK_THROWS_AS(parse_pa(""), FormatError);
  CHECK_THROWS_AS(parse_pa("3 2\n1 2 3\n"), FormatError);
  CHECK_THROWS_AS(parse_pa("3 2 2\n1 2 3\n"), FormatError);
  CHECK_THROWS_AS(parse_pa("3 2 1\n1 2\n"), FormatError);
  CHECK_THROWS_AS(parse_pa("3 2 1\n1 2 2\n"), FormatError);
  CHECK_THROWS_AS(parse_pa("3 2 1\n1 2 x\n"), FormatError);
  CHECK_THROWS_AS(read_pa("/nonexistent/file.pa"), FormatError);
}

TEST_CASE("prefix files") {
  const auto t = prefix_witness(6, 2, 3);
  CHECK(format_prefix(t) == "6 2 3 4\n1 2\n1 5\n4 2\n4 5\n");
  CHECK(parse_prefix(format_prefix(t)) == t);
  CHECK_THROWS_AS(parse_prefix("6 2 3 2\n1 2\n1 3\n"), VerificationError);
  CHECK_THROWS_AS(parse_prefix("6 2 3 1\n1 7\n"), FormatError);
}

TEST_CASE("table CSV and markdown") {
  const auto table = build_table(5, 4, {});
  const auto csv = format_table_csv(table);
  CHECK(csv.starts_with("n,d,lower,upper,lower_provenance,upper_provenance\n"));
  const auto back = parse_table_csv(csv);
  CHECK(format_table_csv(back) == csv);
  CHECK_FALSE(audit_table(back).has_value());
  const auto md = format_table_markdown(table);
  CHECK(md.find("### Lower bounds for P(n,d)") != std::string::npos);
  CHECK(md.find("| 5 | **30** |") != std::string::npos);
  CHECK_THROWS_AS(parse_table_csv("n,d\n1,2\n"), FormatError);
}

TEST_CASE("cache keys") {
  const auto a = CacheKey::array(Alphabet({1, 2, 3}), 3);
  CHECK(a.dir_name() == "alpha-1_2_3-d3");
  const auto p = CacheKey::prefix(8, 3, 3);
  CHECK(p.dir_name() == "prefix-n8-m3-d3");
  REQUIRE(CacheKey::parse(a.dir_name()));
  CHECK(CacheKey::parse(a.dir_name())->alphabet() == Alphabet({1, 2, 3}));
  CHECK(CacheKey::parse(p.dir_name())->m() == 3);
  CHECK_FALSE(CacheKey::parse("junk").has_value());
}

TEST_CASE("cache keeps the maximum") {
  TempDir dir;
  BoundCache cache(dir.path);
  const auto key = CacheKey::array(Alphabet::range(6), 3);
  CHECK_FALSE(cache.get(key).has_value());
  const auto best = exact_max_array(Alphabet::range(6), 3);
  const PermutationArray small(best.alphabet(), 3, {best.members().begin(), best.members().begin() + 5});
  REQUIRE(small.size() < best.size());
  CHECK(cache.put(key, small, false, "greedy"));
  CHECK(cache.get(key)->size == small.size());
  CHECK(cache.put(key, best, false, "clique"));
  CHECK(cache.get(key)->size == best.size());
  CHECK_FALSE(cache.put(key, small, false, "greedy"));
  CHECK(cache.get(key)->size == best.size());
  CHECK(cache.put(key, best, true, "clique"));
  CHECK(cache.get(key)->exact);

  CHECK(cache.put_cited(key, 25, "reference"));
  CHECK(cache.get(key)->size == best.size());
  CHECK(cache.get(key, true)->size == 25);
  CHECK(cache.get(key, true)->cited);

  const auto pkey = CacheKey::prefix(8, 3, 3);
  CHECK(cache.put(pkey, prefix_search(8, 3, 3, {}, true), true, "clique"));
  CHECK(cache.keys().size() == 2);

  const auto seeds = seeds_from_cache(cache, false);
  CHECK(seeds.exact.at({6, 3}).value == best.size());
  CHECK(seeds.prefix.at({8, 3, 3}).value == 24);
  CHECK(seeds.cited.empty());
  CHECK(seeds_from_cache(cache, true).cited.at({6, 3}).value == 25);
}

TEST_CASE("cache rejects tampered artifacts") {
  TempDir dir;
  BoundCache cache(dir.path);
  const auto key = CacheKey::array(Alphabet::range(3), 2);
  cache.put(key, oracle::array_of(3, 2, {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}}), true, "clique");
  const auto entry = cache.get(key);
  REQUIRE(entry);
  REQUIRE(entry->artifact);
  write_file_atomic(*entry->artifact, "3 2 2\n1 2 3\n1 3 2\n");
  // An altered artifact no longer certifies anything.
  CHECK_FALSE(cache.get(key).has_value());
  CHECK_THROWS_AS(cache.put(key, oracle::array_of(3, 2, {{1, 2, 3}, {1, 3, 2}}), false, "bad"), VerificationError);
}
