#include "chebpa/bounds.hpp"

#include "chebpa/construct.hpp"
#include "chebpa/error.hpp"
#include "chebpa/prefix.hpp"
#include "chebpa/sphere.hpp"

#include <algorithm>
#include <sstream>

namespace chebpa {

namespace {

std::string str(const BigInt& v) { return v.str(); }
std::string str(int v) { return std::to_string(v); }

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// Parameter values may not contain the provenance delimiters or CSV commas.
std::string sanitize(const std::string& text) {
  std::string out;
  for (char c : text) out += (c == ';' || c == '(' || c == ')' || c == ',' || c == '=' || c == '!' ||
                              c == '\n' || c == '"') ? '_' : c;
  return out;
}

int param_int(const Provenance& p, const std::string& key) {
  try {
    return std::stoi(p.param(key));
  } catch (const std::logic_error&) {
    throw FormatError("provenance " + p.text() + ": parameter " + key + " is not an integer");
  }
}

BigInt param_big(const Provenance& p, const std::string& key) { return parse_bigint(p.param(key)); }

void check_gaps(std::span<const int> positions, int lo, int hi, int d) {
  if (positions.empty()) throw DomainError("position set must be non-empty");
  for (std::size_t j = 0; j < positions.size(); ++j) {
    if (positions[j] < lo || positions[j] > hi) {
      throw DomainError("position " + std::to_string(positions[j]) + " outside [" + std::to_string(lo) + ".." +
                        std::to_string(hi) + "]");
    }
    if (j > 0 && positions[j] - positions[j - 1] < d) {
      throw DomainError("positions " + std::to_string(positions[j - 1]) + " and " + std::to_string(positions[j]) +
                        " are closer than " + std::to_string(d));
    }
  }
}

}  // namespace

// ------------------------------------------------------- single-step rules

BigInt one_step_lower(int n1, int d, std::span<const int> positions,
                      const std::function<BigInt(const Alphabet&)>& inner) {
  if (!(n1 >= 1 && d >= 1)) throw DomainError("one-step rule needs n >= 1 and d >= 1");
  check_gaps(positions, 1, n1 + 1, d);
  BigInt total = 0;
  for (int i : positions) {
    const int removed[] = {i};
    total += inner(Alphabet::complement_of(removed, n1 + 1));
  }
  return total;
}

BigInt gen_coefficient(int d, int k) {
  if (d < 3 || k < 1) throw DomainError("gen rule needs d >= 3 and k >= 1");
  return power(BigInt(k + 1), static_cast<unsigned>(d)) -
         binomial(static_cast<unsigned>(k + d - 1), static_cast<unsigned>(d - 1));
}

BigInt gen_lower(int d, int k, const BigInt& base) {
  if (base < 1) throw DomainError("gen rule needs a positive base");
  return gen_coefficient(d, k) * base;
}

BigInt prefix_lower(int n, int m, int d, const BigInt& pnmd, const BigInt& inner) {
  if (!(n >= 1 && m >= 1 && d >= 1)) throw DomainError("prefix rule needs n, m, d >= 1");
  if (pnmd < 1 || inner < 1) throw DomainError("prefix rule needs positive inputs");
  return pnmd * inner;
}

BigInt contraction_upper(int n, int d, int k, const BigInt& inner_upper) {
  if (!(1 <= k && k <= d && d < n)) {
    throw DomainError("contraction needs 1 <= k <= d < n (n=" + std::to_string(n) + ", d=" + std::to_string(d) +
                      ", k=" + std::to_string(k) + ")");
  }
  if (inner_upper < 1) throw DomainError("contraction needs a positive inner bound");
  return inner_upper * binomial(static_cast<unsigned>(n), static_cast<unsigned>(k));
}

std::optional<BigInt> exact_formulas(int n, int d) {
  if (n < 1 || d < 1) return std::nullopt;
  if (d >= n) return BigInt(1);
  if (d == 1) return factorial(static_cast<unsigned>(n));
  if (d == 2) return factorial(static_cast<unsigned>(n)) / power(BigInt(2), static_cast<unsigned>(n / 2));
  if (d == n - 1 && n >= 3) return BigInt(3);
  if (d == n - 2 && n >= 5) return BigInt(10);
  return std::nullopt;
}

bool stabilization_check(int n0, int k, const BigInt& m) {
  if (k < 1 || n0 < 2 * k) throw DomainError("stabilization needs n0 >= 2k >= 2");
  if (m < 0) throw DomainError("stabilization needs m >= 0");
  const BigInt lhs = BigInt(2 * k) * (m + 1);
  const BigInt rhs = BigInt(n0 + 1) * (1 + n0 / (2 * k - 1));
  return lhs < rhs;
}

bool stabilization_applies(int n0, int k, const BigInt& m) {
  if (k < 1 || n0 < 2 * k) throw DomainError("stabilization needs n0 >= 2k >= 2");
  if (m < 0) throw DomainError("stabilization needs m >= 0");
  const BigInt lhs = BigInt(2 * k) * (m + 1);
  const BigInt rhs = BigInt(n0 + 1) * (1 + (n0 - 1) / (2 * k - 1));
  return lhs < rhs;
}

// --------------------------------------------------------------- provenance

std::string Provenance::text() const {
  std::vector<std::string> parts;
  for (const auto& [k, v] : params) parts.push_back(k + "=" + v);
  return rule + "(" + join(parts, ';') + ")" + (cited ? "!cited" : "");
}

Provenance Provenance::parse(const std::string& text) {
  Provenance p;
  std::string body = text;
  const std::string tag = "!cited";
  if (body.size() >= tag.size() && body.compare(body.size() - tag.size(), tag.size(), tag) == 0) {
    p.cited = true;
    body.resize(body.size() - tag.size());
  }
  const auto open = body.find('(');
  if (open == std::string::npos || body.back() != ')' || open == 0) {
    throw FormatError("malformed provenance: " + text);
  }
  p.rule = body.substr(0, open);
  const std::string inside = body.substr(open + 1, body.size() - open - 2);
  if (!inside.empty()) {
    for (const auto& item : split(inside, ';')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw FormatError("malformed provenance parameter: " + item);
      p.params.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
  }
  return p;
}

const std::string& Provenance::param(const std::string& key) const {
  for (const auto& [k, v] : params) {
    if (k == key) return v;
  }
  throw FormatError("provenance " + text() + " lacks parameter " + key);
}

namespace {

Provenance make(std::string rule, std::vector<std::pair<std::string, std::string>> params = {},
                bool cited = false) {
  return Provenance{std::move(rule), std::move(params), cited};
}

std::vector<int> int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& s : split(text, ':')) out.push_back(std::stoi(s));
  return out;
}

}  // namespace

BigInt replay_lower(int n, int d, const Provenance& p) {
  const std::string& r = p.rule;
  if (r == "trivial") return 1;
  if (r == "formula") {
    const auto v = exact_formulas(n, d);
    if (!v) throw DomainError("no closed form at (" + str(n) + "," + str(d) + ")");
    return *v;
  }
  if (r == "clique" || r == "search" || r == "cited") return param_big(p, "value");
  if (r == "one_step") {
    const auto positions = int_list(p.param("A"));
    std::vector<BigInt> inner;
    for (const auto& s : split(p.param("inner"), ':')) inner.push_back(parse_bigint(s));
    if (inner.size() != positions.size()) throw FormatError("one_step provenance lists mismatch");
    std::size_t next = 0;
    return one_step_lower(n - 1, d, positions, [&](const Alphabet&) { return inner[next++]; });
  }
  if (r == "gen") {
    const int k = param_int(p, "k");
    if (d * k + d - 1 != n) throw DomainError("gen provenance does not match the cell");
    return gen_lower(d, k, param_big(p, "base"));
  }
  if (r == "prefix") {
    const int m = param_int(p, "m");
    return prefix_lower(n - m, m, d, param_big(p, "pnmd"), param_big(p, "inner"));
  }
  if (r == "product") {
    const int n1 = param_int(p, "n1");
    const int d1 = param_int(p, "d1");
    if (n1 < 1 || n1 >= n || d1 < 1 || d1 >= d) throw DomainError("product provenance does not match the cell");
    return param_big(p, "left") * param_big(p, "right");
  }
  if (r == "lift") {
    if (!(d - 1 < n - 1 && n - 1 <= 2 * (d - 1))) throw DomainError("lift outside d < n <= 2d");
    return param_big(p, "from");
  }
  if (r == "insert_pair") {
    if (d != 2 || n < 3) throw DomainError("insert_pair applies to d = 2, n >= 3");
    return param_big(p, "inner") * binomial(static_cast<unsigned>(n), 2);
  }
  if (r == "gv") return gv_lower_bound(n, d);
  if (r == "monotone") return param_big(p, "from");
  throw FormatError("unknown lower-bound rule " + r);
}

BigInt replay_upper(int n, int d, const Provenance& p) {
  const std::string& r = p.rule;
  if (r == "trivial") return factorial(static_cast<unsigned>(n));
  if (r == "formula") {
    const auto v = exact_formulas(n, d);
    if (!v) throw DomainError("no closed form at (" + str(n) + "," + str(d) + ")");
    return *v;
  }
  if (r == "clique") return param_big(p, "value");
  if (r == "contraction") return contraction_upper(n, d, param_int(p, "k"), param_big(p, "inner"));
  if (r == "sphere") return sphere_packing_upper_bound(n, d);
  if (r == "stabilization") {
    const int n0 = param_int(p, "n0");
    const int k = param_int(p, "k");
    const BigInt m = param_big(p, "m");
    if (n - d != k || n < n0) throw DomainError("stabilization provenance does not match the cell");
    if (!stabilization_applies(n0, k, m)) throw DomainError("stabilization inequality fails");
    return m;
  }
  if (r == "monotone_d" || r == "monotone_n") return param_big(p, "from");
  throw FormatError("unknown upper-bound rule " + r);
}

// ------------------------------------------------------------ table engine

BoundTable::BoundTable(int n_max, int d_max, std::vector<BoundRecord> records)
    : n_max_(n_max), d_max_(d_max), records_(std::move(records)) {
  if (records_.size() != static_cast<std::size_t>(n_max_) * static_cast<std::size_t>(d_max_)) {
    throw DomainError("bound table needs one record per cell");
  }
  std::sort(records_.begin(), records_.end(),
            [](const BoundRecord& a, const BoundRecord& b) { return std::tie(a.n, a.d) < std::tie(b.n, b.d); });
}

const BoundRecord& BoundTable::at(int n, int d) const {
  if (n < 1 || n > n_max_ || d < 1 || d > d_max_) {
    throw DomainError("cell (" + str(n) + "," + str(d) + ") outside the table");
  }
  return records_[static_cast<std::size_t>(n - 1) * static_cast<std::size_t>(d_max_) +
                  static_cast<std::size_t>(d - 1)];
}

namespace {

class Engine {
 public:
  Engine(int n_max, int d_max, const TableSeeds& seeds, bool allow_cited)
      : n_max_(n_max), d_max_(d_max), width_(std::max(n_max, d_max)), seeds_(seeds), allow_cited_(allow_cited) {
    cells_.resize(static_cast<std::size_t>(n_max_) * static_cast<std::size_t>(width_));
    for (int n = 1; n <= n_max_; ++n) {
      for (int d = 1; d <= width_; ++d) {
        auto& c = cell(n, d);
        c.n = n;
        c.d = d;
        c.lower = 1;
        c.lower_provenance = make("trivial");
        c.upper = factorial(static_cast<unsigned>(n));
        c.upper_provenance = make("trivial");
      }
    }
  }

  void run(const ProgressSink& progress) {
    seed();
    for (int round = 1;; ++round) {
      changed_ = 0;
      for (int n = 1; n <= n_max_; ++n) {
        for (int d = width_; d >= 1; --d) lower_rules(n, d);
      }
      for (int n = n_max_; n >= 1; --n) {
        for (int d = 1; d <= width_; ++d) upper_rules(n, d);
      }
      if (progress) progress("round " + std::to_string(round) + ": " + std::to_string(changed_) + " improvements");
      if (changed_ == 0) break;
    }
  }

  BoundTable table() const {
    std::vector<BoundRecord> out;
    for (int n = 1; n <= n_max_; ++n) {
      for (int d = 1; d <= d_max_; ++d) out.push_back(cell(n, d));
    }
    return BoundTable(n_max_, d_max_, std::move(out));
  }

 private:
  BoundRecord& cell(int n, int d) {
    return cells_[static_cast<std::size_t>(n - 1) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(d - 1)];
  }
  const BoundRecord& cell(int n, int d) const {
    return cells_[static_cast<std::size_t>(n - 1) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(d - 1)];
  }
  bool inside(int n, int d) const { return n >= 1 && n <= n_max_ && d >= 1 && d <= width_; }

  // Bounds for any cell; d >= n is always exactly 1.
  BigInt low(int n, int d) const { return inside(n, d) ? cell(n, d).lower : BigInt(1); }
  BigInt up(int n, int d) const { return inside(n, d) ? *cell(n, d).upper : BigInt(1); }

  [[noreturn]] void conflict(const BoundRecord& c) const {
    throw InconsistencyError("P(" + str(c.n) + "," + str(c.d) + "): lower bound " + str(c.lower) + " from " +
                             c.lower_provenance.text() + " exceeds upper bound " + str(*c.upper) + " from " +
                             c.upper_provenance.text());
  }

  void raise_lower(int n, int d, const BigInt& value, Provenance p) {
    auto& c = cell(n, d);
    if (value <= c.lower) return;
    c.lower = value;
    c.lower_provenance = std::move(p);
    ++changed_;
    if (c.lower > *c.upper) conflict(c);
  }

  void cut_upper(int n, int d, const BigInt& value, Provenance p) {
    auto& c = cell(n, d);
    if (value >= *c.upper) return;
    c.upper = value;
    c.upper_provenance = std::move(p);
    ++changed_;
    if (c.lower > *c.upper) conflict(c);
  }

  void seed() {
    for (int n = 1; n <= n_max_; ++n) {
      for (int d = 1; d <= width_; ++d) {
        if (auto v = exact_formulas(n, d)) {
          raise_lower(n, d, *v, make("formula"));
          cut_upper(n, d, *v, make("formula"));
        }
      }
    }
    for (const auto& [key, seed] : seeds_.exact) {
      const auto [n, d] = key;
      if (!inside(n, d)) continue;
      auto p = make("clique", {{"value", str(seed.value)}, {"source", sanitize(seed.source)}});
      raise_lower(n, d, seed.value, p);
      cut_upper(n, d, seed.value, p);
    }
    for (const auto& [key, seed] : seeds_.search) {
      const auto [n, d] = key;
      if (!inside(n, d)) continue;
      raise_lower(n, d, seed.value, make("search", {{"value", str(seed.value)}, {"source", sanitize(seed.source)}}));
    }
    if (allow_cited_) {
      for (const auto& [key, seed] : seeds_.cited) {
        const auto [n, d] = key;
        if (!inside(n, d)) continue;
        raise_lower(n, d, seed.value,
                    make("cited", {{"value", str(seed.value)}, {"source", sanitize(seed.source)}}, true));
      }
    }
  }

  // Best one-step yield over position sets with gaps >= d, each complement
  // alphabet weighted by the better of the (n-1, d) bound and its own seed.
  void one_step(int n, int d) {
    const int n1 = n - 1;
    if (!(n1 > d && d >= 1)) return;
    const BigInt base = low(n1, d);
    std::vector<BigInt> weight(static_cast<std::size_t>(n) + 1, base);
    bool seeded = false;
    for (int i = 1; i <= n; ++i) {
      const int removed[] = {i};
      auto it = seeds_.alphabet_search.find({Alphabet::complement_of(removed, n), d});
      if (it != seeds_.alphabet_search.end() && it->second.value > base) {
        weight[static_cast<std::size_t>(i)] = it->second.value;
        seeded = true;
      }
    }
    std::vector<int> positions;
    if (!seeded) {
      positions = [&] {
        std::vector<int> out;
        for (int s = 1; s <= n; s += d) out.push_back(s);
        return out;
      }();
    } else {
      // best[i]: optimum using positions <= i.
      std::vector<BigInt> best(static_cast<std::size_t>(n) + 1, 0);
      for (int i = 1; i <= n; ++i) {
        const BigInt take = weight[static_cast<std::size_t>(i)] + (i - d >= 1 ? best[static_cast<std::size_t>(i - d)] : BigInt(0));
        best[static_cast<std::size_t>(i)] = std::max(best[static_cast<std::size_t>(i - 1)], take);
      }
      for (int i = n; i >= 1;) {
        if (best[static_cast<std::size_t>(i)] == best[static_cast<std::size_t>(i - 1)]) {
          --i;
        } else {
          positions.push_back(i);
          i -= d;
        }
      }
      std::reverse(positions.begin(), positions.end());
    }
    std::vector<std::string> a_text, inner_text;
    BigInt total = 0;
    for (int i : positions) {
      a_text.push_back(str(i));
      inner_text.push_back(str(weight[static_cast<std::size_t>(i)]));
      total += weight[static_cast<std::size_t>(i)];
    }
    raise_lower(n, d, total, make("one_step", {{"A", join(a_text, ':')}, {"inner", join(inner_text, ':')}}));
  }

  void lower_rules(int n, int d) {
    if (d >= n || d == 1) return;  // closed forms
    one_step(n, d);

    if (d >= 3 && (n + 1) % d == 0 && (n + 1) / d >= 2) {
      const int k = (n + 1) / d - 1;
      const BigInt base = low(d * k - 1, d);
      raise_lower(n, d, gen_lower(d, k, base), make("gen", {{"k", str(k)}, {"base", str(base)}}));
    }

    for (int m = 2; m < n; ++m) {
      BigInt pnmd = 0;
      std::string source;
      if (auto v = prefix_closed_form(n, m, d)) {
        pnmd = *v;
        source = "closed_form";
      }
      auto it = seeds_.prefix.find({n, m, d});
      if (it != seeds_.prefix.end() && it->second.value > pnmd) {
        pnmd = it->second.value;
        source = sanitize(it->second.source);
      }
      if (pnmd == 0) continue;
      const BigInt inner = low(n - m, d);
      raise_lower(n, d, prefix_lower(n - m, m, d, pnmd, inner),
                  make("prefix", {{"m", str(m)}, {"pnmd", str(pnmd)}, {"pnmd_source", source}, {"inner", str(inner)}}));
    }

    for (int n1 = 1; n1 < n; ++n1) {
      for (int d1 = 1; d1 < d; ++d1) {
        const auto split = ProductSplit::find(n1, d1, n - n1, d - d1);
        if (!split) continue;
        const BigInt left = low(n1, d1);
        const BigInt right = low(n - n1, d - d1);
        raise_lower(n, d, left * right,
                    make("product", {{"n1", str(n1)}, {"d1", str(d1)}, {"a", str(split->a)}, {"left", str(left)},
                                     {"right", str(right)}}));
      }
    }

    if (d - 1 < n - 1 && n - 1 <= 2 * (d - 1)) {
      const BigInt from = low(n - 1, d - 1);
      raise_lower(n, d, from, make("lift", {{"from", str(from)}}));
    }

    if (d == 2 && n >= 3) {
      const BigInt inner = low(n - 2, 2);
      raise_lower(n, d, inner * binomial(static_cast<unsigned>(n), 2), make("insert_pair", {{"inner", str(inner)}}));
    }

    if (n > d && d >= 2 && try_sphere_count(n, d - 1)) {
      raise_lower(n, d, gv_lower_bound(n, d), make("gv"));
    }

    if (d + 1 <= width_) {
      const BigInt from = low(n, d + 1);
      raise_lower(n, d, from, make("monotone", {{"from", str(from)}}));
    }
  }

  void upper_rules(int n, int d) {
    if (d >= n || d == 1) return;
    for (int k = 1; k <= d; ++k) {
      const BigInt inner = up(n - k, d);
      cut_upper(n, d, contraction_upper(n, d, k, inner), make("contraction", {{"k", str(k)}, {"inner", str(inner)}}));
    }

    if (d % 2 == 0 && 2 * d >= n && n >= d && d >= 2 && try_sphere_count(n + 1, d / 2)) {
      cut_upper(n, d, sphere_packing_upper_bound(n, d), make("sphere"));
    }

    const int k = n - d;
    for (int n0 = 2 * k; n0 < n; ++n0) {
      if (n0 - k < 1) continue;
      const BigInt m = up(n0, n0 - k);
      if (stabilization_applies(n0, k, m)) {
        cut_upper(n, d, m, make("stabilization", {{"n0", str(n0)}, {"k", str(k)}, {"m", str(m)}}));
      }
    }

    if (d >= 2) {
      const BigInt from = up(n, d - 1);
      cut_upper(n, d, from, make("monotone_d", {{"from", str(from)}}));
    }
    if (n + 1 <= n_max_) {
      const BigInt from = up(n + 1, d);
      cut_upper(n, d, from, make("monotone_n", {{"from", str(from)}}));
    }
  }

  int n_max_;
  int d_max_;
  int width_;
  const TableSeeds& seeds_;
  bool allow_cited_;
  std::vector<BoundRecord> cells_;
  std::size_t changed_ = 0;
};

}  // namespace

BoundTable build_table(int n_max, int d_max, const TableSeeds& seeds, bool allow_cited, const ProgressSink& progress) {
  if (n_max < 1 || d_max < 1) throw DomainError("table needs n_max >= 1 and d_max >= 1");
  Engine engine(n_max, d_max, seeds, allow_cited);
  engine.run(progress);
  return engine.table();
}

std::optional<std::string> audit_table(const BoundTable& table) {
  auto has = [&](int n, int d) { return n >= 1 && n <= table.n_max() && d >= 1 && d <= table.d_max(); };
  auto low = [&](int n, int d) -> std::optional<BigInt> {
    if (d >= n && n >= 1) return BigInt(1);
    if (!has(n, d)) return std::nullopt;
    return table.at(n, d).lower;
  };
  auto up = [&](int n, int d) -> std::optional<BigInt> {
    if (d >= n && n >= 1) return BigInt(1);
    if (!has(n, d)) return std::nullopt;
    return *table.at(n, d).upper;
  };
  for (const auto& rec : table.records()) {
    const std::string where = "P(" + str(rec.n) + "," + str(rec.d) + ")";
    try {
      const auto& lp = rec.lower_provenance;
      if (replay_lower(rec.n, rec.d, lp) != rec.lower) return where + ": lower replay mismatch for " + lp.text();
      if (!rec.upper) return where + ": missing upper bound";
      const auto& upv = rec.upper_provenance;
      if (replay_upper(rec.n, rec.d, upv) != *rec.upper) return where + ": upper replay mismatch for " + upv.text();
      if (rec.lower > *rec.upper) return where + ": lower exceeds upper";

      // Inputs must still be covered by the referenced cells.
      auto below = [&](std::optional<BigInt> cellv, const std::string& key) {
        return !cellv || BigInt(parse_bigint(lp.param(key))) <= *cellv;
      };
      auto above = [&](std::optional<BigInt> cellv, const std::string& key) {
        return !cellv || BigInt(parse_bigint(upv.param(key))) >= *cellv;
      };
      bool ok = true;
      const int n = rec.n, d = rec.d;
      if (lp.rule == "gen") ok = below(low(n - d, d), "base");
      if (lp.rule == "prefix") ok = below(low(n - param_int(lp, "m"), d), "inner");
      if (lp.rule == "product") {
        const int n1 = param_int(lp, "n1"), d1 = param_int(lp, "d1");
        ok = below(low(n1, d1), "left") && below(low(n - n1, d - d1), "right");
      }
      if (lp.rule == "lift") ok = below(low(n - 1, d - 1), "from");
      if (lp.rule == "insert_pair") ok = below(low(n - 2, 2), "inner");
      if (lp.rule == "monotone") ok = below(low(n, d + 1), "from");
      if (!ok) return where + ": input of " + lp.text() + " is not covered by the table";
      if (upv.rule == "contraction") ok = above(up(n - param_int(upv, "k"), d), "inner");
      if (upv.rule == "stabilization") {
        const int n0 = param_int(upv, "n0");
        ok = above(up(n0, n0 - param_int(upv, "k")), "m");
      }
      if (upv.rule == "monotone_d") ok = above(up(n, d - 1), "from");
      if (upv.rule == "monotone_n") ok = above(up(n + 1, d), "from");
      if (!ok) return where + ": input of " + upv.text() + " is not covered by the table";
    } catch (const Error& e) {
      return where + ": " + e.what();
    }
  }
  return std::nullopt;
}

DiagonalConstants diagonal_constants(const BoundTable& table, int r) {
  if (r < 1) throw DomainError("diagonal offset must be positive");
  DiagonalConstants out;
  out.r = r;
  // Walk the diagonal n = d + r down from the largest d in the table while
  // the cells stay closed at one value; lifting (valid for d >= r) then
  // carries the lower bound forward, and a stabilization certificate the
  // upper bound.
  std::optional<BigInt> value;
  std::optional<int> first;
  for (int d = std::min(table.d_max(), table.n_max() - r); d >= 1; --d) {
    const auto& rec = table.at(d + r, d);
    if (!rec.closed() || (value && *value != rec.lower) || d < r) break;
    value = rec.lower;
    first = d;
  }
  if (!value) return out;
  bool certified = false;
  for (int d = *first; d <= std::min(table.d_max(), table.n_max() - r); ++d) {
    if (d + r >= 2 * r && stabilization_applies(d + r, r, *value)) certified = true;
  }
  if (certified) {
    out.c = value;
    out.d_r = first;
  }
  return out;
}

}  // namespace chebpa
