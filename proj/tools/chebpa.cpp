// Command-line front end: table, construct, verify, clique, prefix, sphere.
// Data goes to stdout (or --out), progress and diagnostics to stderr.

#include "chebpa/bounds.hpp"
#include "chebpa/construct.hpp"
#include "chebpa/error.hpp"
#include "chebpa/io.hpp"
#include "chebpa/prefix.hpp"
#include "chebpa/search.hpp"
#include "chebpa/seeds.hpp"
#include "chebpa/sphere.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace chebpa;
using nlohmann::json;

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDomain = 2,
  kInfeasible = 3,
  kVerification = 4,
  kInconsistency = 5,
  kStorage = 6,
};

struct Common {
  std::uint64_t seed = 0;
  int restarts = 50;
  double budget = 60.0;
  unsigned threads = 0;
  std::string completion = "lex";
  bool seed_identity = false;
  bool json = false;
  bool quiet = false;
  std::string out;
};

SearchConfig search_config(const Common& c) {
  SearchConfig config;
  config.seed = c.seed;
  config.restarts = c.restarts;
  config.time_budget = Seconds(c.budget);
  config.threads = c.threads;
  config.completion = c.completion == "shuffled" ? CompletionOrder::shuffled : CompletionOrder::lexicographic;
  config.seed_identity = c.seed_identity;
  config.validate();
  return config;
}

CliqueOptions clique_options(const Common& c) {
  CliqueOptions options;
  options.time_limit = Seconds(c.budget);
  return options;
}

// Numbers that fit stay JSON numbers; larger ones become decimal strings.
json big(const BigInt& v) {
  if (v <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(v);
  return to_string(v);
}

std::string spaced(const SymbolString& s) {
  std::string out;
  for (auto x : s) out += (out.empty() ? "" : " ") + std::to_string(x);
  return out;
}

json strings_json(const std::vector<SymbolString>& strings) {
  json out = json::array();
  for (const auto& s : strings) out.push_back(s);
  return out;
}

json array_members(const PermutationArray& array) {
  json out = json::array();
  for (const auto& p : array.members()) out.push_back(std::vector<Symbol>(p.values().begin(), p.values().end()));
  return out;
}

// Writes `text` to --out when given; otherwise it joins stdout unless JSON
// output already carries the members.
void emit_artifact(const Common& c, const std::string& text) {
  if (!c.out.empty()) {
    write_file_atomic(c.out, text);
  } else if (!c.json) {
    std::cout << text;
  }
}

ProgressSink progress_sink(const Common& c) {
  if (c.quiet) return {};
  return [](const std::string& line) { std::cerr << line << '\n'; };
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw DomainError("not an integer list: " + text);
    }
  }
  return out;
}

// -------------------------------------------------------------- commands

int run_sphere(const Common& c, int n, int d) {
  const auto s = sphere_size(n, d);
  if (c.json) {
    std::cout << json{{"command", "sphere"}, {"n", n}, {"d", d}, {"count", big(s.count)}}.dump() << '\n';
  } else {
    std::cout << to_string(s.count) << '\n';
  }
  return kOk;
}

struct ConstructArgs {
  std::string method;
  int n = 0, d = 0;
  std::string a, b, prefixes;
  int power = 0;
  std::string positions;
};

PermutationArray construct(const Common& c, const ConstructArgs& args) {
  const auto need_nd = [&] {
    if (args.n < 1 || args.d < 1) throw DomainError("--n and --d are required for --method " + args.method);
  };
  const auto need_a = [&] {
    if (args.a.empty()) throw DomainError("--a FILE is required for --method " + args.method);
    return read_pa(args.a);
  };
  const std::string& m = args.method;
  if (m == "mod") {
    need_nd();
    return mod_code(args.n, args.d);
  }
  if (m == "greedy") {
    need_nd();
    return greedy_lex(Alphabet::range(args.n), args.d, PermutationArray(Alphabet::range(args.n), args.d));
  }
  if (m == "random-greedy") {
    need_nd();
    return random_greedy(Alphabet::range(args.n), args.d, search_config(c));
  }
  if (m == "product") {
    const auto a = need_a();
    if (args.power > 0) return product_power(a, args.power);
    if (args.b.empty()) throw DomainError("--method product needs --b FILE or --power R");
    const auto b = read_pa(args.b);
    const auto split = ProductSplit::find(static_cast<int>(a.alphabet().size()), a.declared_distance(),
                                          static_cast<int>(b.alphabet().size()), b.declared_distance());
    if (!split) throw DomainError("no block split fits these factors");
    return product(a, b, *split);
  }
  if (m == "insert2") return insert_pair(need_a());
  if (m == "expand") return expand(need_a(), args.positions.empty() ? std::vector<int>{} : parse_int_list(args.positions));
  if (m == "lift") return lift_diagonal(need_a());
  if (m == "concat") {
    if (args.prefixes.empty()) throw DomainError("--method concat needs --prefixes FILE");
    const auto set = read_prefix(args.prefixes);
    const auto config = search_config(c);
    const auto options = clique_options(c);
    // Small complements are solved exactly, larger ones by Random/Greedy.
    const SuffixSupplier suffixes = [&](const SymbolString&, const Alphabet& rest) {
      if (rest.size() <= 7) return exact_max_array(rest, set.distance(), options);
      return random_greedy(rest, set.distance(), config);
    };
    return concat_prefixes(set, suffixes);
  }
  throw DomainError("unknown method: " + m);
}

int run_construct(const Common& c, const ConstructArgs& args) {
  const auto array = construct(c, args);
  emit_artifact(c, format_pa(array));
  if (c.json) {
    json j{{"command", "construct"},
           {"method", args.method},
           {"n", array.alphabet().size()},
           {"d", array.declared_distance()},
           {"size", array.size()}};
    if (c.out.empty()) j["members"] = array_members(array);
    else j["out"] = c.out;
    std::cout << j.dump() << '\n';
  } else if (!c.out.empty()) {
    std::cout << array.size() << '\n';
  }
  return kOk;
}

int run_verify(const Common& c, const std::string& path) {
  const std::string text = read_file(path);
  // Four header fields mean a prefix-set file.
  std::stringstream header(text.substr(0, text.find('\n')));
  int fields = 0;
  for (std::string tok; header >> tok;) ++fields;

  json j{{"command", "verify"}, {"file", path}};
  std::optional<std::string> problem;
  if (fields == 4) {
    const auto set = parse_prefix(text, false);
    j.update({{"kind", "prefix"}, {"n", set.universe()}, {"m", set.length()}, {"d", set.distance()}, {"count", set.size()}});
    if (const auto v = set.violation()) {
      problem = "strings closer than " + std::to_string(set.distance()) + ": " + spaced(v->first) + " / " + spaced(v->second);
      j["witness"] = {v->first, v->second};
    }
  } else {
    const auto array = parse_pa(text, false);
    j.update({{"kind", "pa"}, {"n", array.alphabet().size()}, {"d", array.declared_distance()}, {"count", array.size()}});
    if (const auto report = verify(array); !report.valid) {
      problem = report.reason;
      if (report.witness) {
        const auto& [p, q] = *report.witness;
        j["witness"] = {std::vector<Symbol>(p.values().begin(), p.values().end()),
                        std::vector<Symbol>(q.values().begin(), q.values().end())};
      }
    }
  }
  j["valid"] = !problem;
  if (c.json) {
    std::cout << j.dump() << '\n';
  } else if (!problem) {
    std::cout << "valid " << j["count"] << '\n';
  }
  if (problem) {
    std::cerr << path << ": " << *problem << '\n';
    return kVerification;
  }
  return kOk;
}

// One weighted prefix per line: m symbols then the weight.
std::map<SymbolString, std::uint64_t> read_weights(const std::string& path, int m) {
  std::map<SymbolString, std::uint64_t> weights;
  std::stringstream in(read_file(path));
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::stringstream fields(line);
    std::vector<long long> values;
    for (long long x; fields >> x;) values.push_back(x);
    if (!fields.eof() || values.size() != static_cast<std::size_t>(m) + 1 || values.back() < 0) {
      throw FormatError(path + ":" + std::to_string(line_no) + ": expected " + std::to_string(m) +
                        " symbols and a non-negative weight");
    }
    weights[SymbolString(values.begin(), values.end() - 1)] = static_cast<std::uint64_t>(values.back());
  }
  return weights;
}

int run_clique(const Common& c, int n, int d, int m, const std::string& weights_path, bool exact) {
  if (m == 0) m = n;
  if (m == n && weights_path.empty()) {
    PermutationArray array = exact ? exact_max_array(Alphabet::range(n), d, clique_options(c))
                                   : random_greedy(Alphabet::range(n), d, search_config(c));
    if (c.json) {
      json j{{"command", "clique"}, {"n", n}, {"d", d}, {"exact", exact}, {"size", array.size()}};
      if (c.out.empty()) j["members"] = array_members(array);
      else j["out"] = c.out;
      std::cout << j.dump() << '\n';
    } else {
      std::cout << array.size() << '\n';
    }
    emit_artifact(c, format_pa(array));
    return kOk;
  }
  PrefixWeight weight;
  std::map<SymbolString, std::uint64_t> table;
  if (!weights_path.empty()) {
    table = read_weights(weights_path, m);
    weight = [&table](std::span<const Symbol> s) {
      const auto it = table.find(SymbolString(s.begin(), s.end()));
      return it == table.end() ? std::uint64_t{0} : it->second;
    };
  }
  const auto result = weighted_clique_lower_bound(n, m, d, weight, exact, search_config(c), clique_options(c));
  if (c.json) {
    json j{{"command", "clique"}, {"n", n}, {"m", m}, {"d", d}, {"exact", exact},
           {"total", result.total}, {"optimal", result.optimal}, {"count", result.prefixes.size()}};
    if (c.out.empty()) {
      j["members"] = strings_json(result.prefixes.members());
      j["weights"] = result.weights;
    } else {
      j["out"] = c.out;
    }
    std::cout << j.dump() << '\n';
  } else {
    std::cout << result.total << '\n';
  }
  emit_artifact(c, format_prefix(result.prefixes));
  return kOk;
}

int run_prefix(const Common& c, int n, int m, int d, bool exact) {
  const auto set = prefix_search(n, m, d, search_config(c), exact, clique_options(c));
  const auto closed = prefix_closed_form(n, m, d);
  if (c.json) {
    json j{{"command", "prefix"}, {"n", n}, {"m", m}, {"d", d}, {"exact", exact}, {"count", set.size()}};
    j["closed_form"] = closed ? big(*closed) : json(nullptr);
    if (c.out.empty()) j["members"] = strings_json(set.members());
    else j["out"] = c.out;
    std::cout << j.dump() << '\n';
  } else if (!c.out.empty()) {
    std::cout << set.size() << '\n';
  }
  emit_artifact(c, format_prefix(set));
  return kOk;
}

struct TableArgs {
  int n_max = 8;
  int d_max = 8;
  std::string seeds_dir;
  bool allow_cited = false;
  bool emit_markdown = false;
  bool no_compute = false;
  int exact_n_max = 6;
  int search_n_max = 8;
  std::vector<std::string> cite;
};

int run_table(const Common& c, const TableArgs& args) {
  const auto progress = progress_sink(c);
  TableSeeds seeds;
  std::optional<BoundCache> cache;
  if (!args.seeds_dir.empty()) {
    cache.emplace(args.seeds_dir);
    seeds = seeds_from_cache(*cache, args.allow_cited);
  }
  if (!args.no_compute) {
    SeedPlan plan;
    plan.n_max = args.n_max;
    plan.d_max = args.d_max;
    plan.exact_n_max = args.exact_n_max;
    plan.search_n_max = std::min(args.search_n_max, args.n_max);
    plan.search = search_config(c);
    plan.clique = clique_options(c);
    SeedArtifacts artifacts;
    merge_seeds(seeds, compute_seeds(plan, progress, &artifacts));
    if (cache) {
      for (const auto& a : artifacts.arrays) {
        cache->put(CacheKey::array(a.array.alphabet(), a.array.declared_distance()), a.array, a.exact, a.source);
      }
      for (const auto& p : artifacts.prefixes) {
        cache->put(CacheKey::prefix(p.set.universe(), p.set.length(), p.set.distance()), p.set, p.exact, p.source);
      }
    }
  }
  for (const auto& item : args.cite) {
    std::stringstream in(item);
    std::string n, d, value;
    if (!std::getline(in, n, ':') || !std::getline(in, d, ':') || !std::getline(in, value)) {
      throw DomainError("--cite expects n:d:value, got " + item);
    }
    const std::pair<int, int> key{std::stoi(n), std::stoi(d)};
    const BigInt v = parse_bigint(value);
    if (cache) cache->put_cited(CacheKey::array(Alphabet::range(key.first), key.second), v, "command line");
    auto& slot = seeds.cited[key];
    if (slot.value < v) slot = SeedValue{v, "command line"};
  }

  const auto table = build_table(args.n_max, args.d_max, seeds, args.allow_cited, progress);
  if (const auto problem = audit_table(table)) throw InconsistencyError("audit failed: " + *problem);

  const std::string csv = format_table_csv(table);
  if (!c.out.empty()) write_file_atomic(c.out, csv);
  if (c.json) {
    json rows = json::array();
    for (const auto& r : table.records()) {
      rows.push_back({{"n", r.n},
                      {"d", r.d},
                      {"lower", big(r.lower)},
                      {"upper", r.upper ? big(*r.upper) : json(nullptr)},
                      {"lower_provenance", r.lower_provenance.text()},
                      {"upper_provenance", r.upper ? json(r.upper_provenance.text()) : json(nullptr)}});
    }
    std::cout << json{{"command", "table"}, {"n_max", args.n_max}, {"d_max", args.d_max}, {"records", rows}}.dump()
              << '\n';
  } else if (args.emit_markdown) {
    std::cout << format_table_markdown(table);
  } else if (c.out.empty()) {
    std::cout << csv;
  }
  return kOk;
}

void add_search_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "random seed");
  cmd->add_option("--restarts", c.restarts, "Random/Greedy restarts")->check(CLI::PositiveNumber);
  cmd->add_option("--budget", c.budget, "time budget in seconds")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", c.threads, "worker threads (0 = all cores)");
  cmd->add_option("--completion", c.completion, "greedy completion order")
      ->check(CLI::IsMember({"lex", "shuffled"}));
  cmd->add_flag("--seed-identity", c.seed_identity, "start every restart from the identity");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Permutation arrays under the Chebyshev metric"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  app.add_flag("--json", c.json, "machine-readable output on stdout");
  app.add_flag("--quiet", c.quiet, "no progress on stderr");

  int n = 0, d = 0, m = 0;
  bool exact = false;

  auto* sphere = app.add_subcommand("sphere", "count permutations within distance d of the identity");
  sphere->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  sphere->add_option("--d", d)->required()->check(CLI::NonNegativeNumber);

  ConstructArgs cargs;
  auto* construct_cmd = app.add_subcommand("construct", "build a permutation array");
  construct_cmd->add_option("--method", cargs.method)
      ->required()
      ->check(CLI::IsMember({"mod", "greedy", "random-greedy", "product", "insert2", "expand", "lift", "concat"}));
  construct_cmd->add_option("--n", cargs.n);
  construct_cmd->add_option("--d", cargs.d);
  construct_cmd->add_option("--a", cargs.a, "input PA file");
  construct_cmd->add_option("--b", cargs.b, "second factor for product");
  construct_cmd->add_option("--power", cargs.power, "product of --a with itself R times");
  construct_cmd->add_option("--positions", cargs.positions, "expand positions, comma separated");
  construct_cmd->add_option("--prefixes", cargs.prefixes, "prefix-set file for concat");
  construct_cmd->add_option("--out", c.out, "output PA file");
  add_search_flags(construct_cmd, c);

  std::string verify_path;
  auto* verify_cmd = app.add_subcommand("verify", "check a PA or prefix-set file");
  verify_cmd->add_option("file", verify_path)->required();

  std::string weights_path;
  auto* clique = app.add_subcommand("clique", "clique search on the distance graph");
  clique->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  clique->add_option("--d", d)->required()->check(CLI::PositiveNumber);
  clique->add_option("--m", m, "prefix length (default n)");
  clique->add_option("--weights", weights_path, "prefix weights: m symbols and a weight per line");
  clique->add_flag("--exact", exact, "branch and bound instead of the heuristic");
  clique->add_option("--out", c.out, "output file");
  add_search_flags(clique, c);

  auto* prefix = app.add_subcommand("prefix", "largest prefix set P(n,m,d)");
  prefix->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  prefix->add_option("--m", m)->required()->check(CLI::PositiveNumber);
  prefix->add_option("--d", d)->required()->check(CLI::PositiveNumber);
  prefix->add_flag("--exact", exact);
  prefix->add_option("--out", c.out, "output prefix-set file");
  add_search_flags(prefix, c);

  TableArgs targs;
  auto* table = app.add_subcommand("table", "lower and upper bound table with provenance");
  table->add_option("--n-max", targs.n_max)->check(CLI::Range(1, 64));
  table->add_option("--d-max", targs.d_max)->check(CLI::Range(1, 64));
  table->add_option("--seeds", targs.seeds_dir, "cache directory read and updated");
  table->add_flag("--allow-cited", targs.allow_cited, "use unverified cited values");
  table->add_option("--cite", targs.cite, "cited lower bound n:d:value (needs --allow-cited)");
  table->add_flag("--emit-markdown", targs.emit_markdown, "print markdown tables on stdout");
  table->add_flag("--no-compute", targs.no_compute, "only use seeds from the cache");
  table->add_option("--exact-n-max", targs.exact_n_max, "exact cliques for open cells up to this n");
  table->add_option("--search-n-max", targs.search_n_max, "Random/Greedy for open cells up to this n");
  table->add_option("--out", c.out, "output CSV file");
  add_search_flags(table, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? kOk : kUsage;
  }

  try {
    if (*sphere) return run_sphere(c, n, d);
    if (*construct_cmd) return run_construct(c, cargs);
    if (*verify_cmd) return run_verify(c, verify_path);
    if (*clique) return run_clique(c, n, d, m, weights_path, exact);
    if (*prefix) return run_prefix(c, n, m, d, exact);
    if (*table) return run_table(c, targs);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return kVerification;
  } catch (const InconsistencyError& e) {
    std::cerr << "inconsistent: " << e.what() << '\n';
    return kInconsistency;
  } catch (const FormatError& e) {
    std::cerr << "format: " << e.what() << '\n';
    return kStorage;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "storage: " << e.what() << '\n';
    return kStorage;
  }
  return kUsage;
}
