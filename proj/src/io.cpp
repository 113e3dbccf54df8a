#include "chebpa/io.hpp"

#include "chebpa/error.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>

namespace chebpa {

namespace fs = std::filesystem;

namespace {

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
    start = end + 1;
  }
  return out;
}

std::vector<std::string_view> fields_of(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long long to_int(std::string_view field, const char* what) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw FormatError(std::string("expected an integer for ") + what + ", got '" + std::string(field) + "'");
  }
  return v;
}

// Header fields followed by `count` rows of symbols; blank trailing lines
// are ignored.
struct Parsed {
  std::vector<long long> header;
  std::vector<std::vector<Symbol>> rows;
};

Parsed parse_blocks(std::string_view text, std::size_t header_fields, const char* kind) {
  auto lines = lines_of(text);
  while (!lines.empty() && fields_of(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw FormatError(std::string("empty ") + kind + " file");
  const auto head = fields_of(lines.front());
  if (head.size() != header_fields) {
    throw FormatError(std::string(kind) + " header needs " + std::to_string(header_fields) + " fields");
  }
  Parsed p;
  for (auto f : head) p.header.push_back(to_int(f, "header"));
  const long long count = p.header.back();
  if (count < 0) throw FormatError("negative count");
  if (static_cast<long long>(lines.size()) - 1 != count) {
    throw FormatError(std::string(kind) + " header declares " + std::to_string(count) + " rows but the file has " +
                      std::to_string(lines.size() - 1));
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<Symbol> row;
    for (auto f : fields_of(lines[i])) {
      const long long v = to_int(f, "symbol");
      if (v < 1 || v > 1'000'000) throw FormatError("symbol out of range on line " + std::to_string(i + 1));
      row.push_back(static_cast<Symbol>(v));
    }
    if (row.empty()) throw FormatError("empty row on line " + std::to_string(i + 1));
    p.rows.push_back(std::move(row));
  }
  return p;
}

void append_row(std::string& out, std::span<const Symbol> row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(row[i]);
  }
  out += '\n';
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> csv_split(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- PA files

std::string format_pa(const PermutationArray& array) {
  std::string out = std::to_string(array.alphabet().max()) + " " + std::to_string(array.declared_distance()) + " " +
                    std::to_string(array.size()) + "\n";
  for (const auto& p : array.members()) append_row(out, p.values());
  return out;
}

PermutationArray parse_pa(std::string_view text, bool verify) {
  auto parsed = parse_blocks(text, 3, "PA");
  const long long n = parsed.header[0];
  const long long d = parsed.header[1];
  if (n < 1 || d < 0) throw FormatError("PA header needs n >= 1 and d >= 0");
  std::vector<Permutation> members;
  try {
    for (auto& row : parsed.rows) members.emplace_back(std::move(row));
    Alphabet alphabet = members.empty() ? Alphabet::range(static_cast<int>(n)) : members.front().alphabet();
    if (alphabet.max() != n) {
      throw FormatError("PA header says n=" + std::to_string(n) + " but the largest symbol is " +
                        std::to_string(alphabet.max()));
    }
    PermutationArray out(std::move(alphabet), static_cast<int>(d), std::move(members));
    if (verify) require_valid(out, "PA file");
    return out;
  } catch (const DomainError& e) {
    throw FormatError(std::string("PA file: ") + e.what());
  }
}

void write_pa(const PermutationArray& array, const fs::path& path) { write_file_atomic(path, format_pa(array)); }

PermutationArray read_pa(const fs::path& path, bool verify) { return parse_pa(read_file(path), verify); }

// ------------------------------------------------------------ prefix files

std::string format_prefix(const PrefixSet& set) {
  std::string out = std::to_string(set.universe()) + " " + std::to_string(set.length()) + " " +
                    std::to_string(set.distance()) + " " + std::to_string(set.size()) + "\n";
  for (const auto& s : set.members()) append_row(out, s);
  return out;
}

PrefixSet parse_prefix(std::string_view text, bool verify) {
  auto parsed = parse_blocks(text, 4, "prefix");
  try {
    PrefixSet out(static_cast<int>(parsed.header[0]), static_cast<int>(parsed.header[1]),
                  static_cast<int>(parsed.header[2]), std::move(parsed.rows));
    if (verify) {
      if (auto bad = out.violation()) {
        std::string a, b;
        append_row(a, bad->first);
        append_row(b, bad->second);
        a.pop_back();
        b.pop_back();
        throw VerificationError("prefix file: strings (" + a + ") and (" + b + ") are closer than d=" +
                                std::to_string(out.distance()));
      }
    }
    return out;
  } catch (const DomainError& e) {
    throw FormatError(std::string("prefix file: ") + e.what());
  }
}

void write_prefix(const PrefixSet& set, const fs::path& path) { write_file_atomic(path, format_prefix(set)); }

PrefixSet read_prefix(const fs::path& path, bool verify) { return parse_prefix(read_file(path), verify); }

// ------------------------------------------------------------------ tables

std::string format_table_csv(const BoundTable& table) {
  std::string out = "n,d,lower,upper,lower_provenance,upper_provenance\n";
  for (const auto& r : table.records()) {
    out += std::to_string(r.n) + "," + std::to_string(r.d) + "," + r.lower.str() + "," +
           (r.upper ? r.upper->str() : std::string("unknown")) + "," + csv_field(r.lower_provenance.text()) + "," +
           csv_field(r.upper_provenance.text()) + "\n";
  }
  return out;
}

BoundTable parse_table_csv(std::string_view text) {
  auto lines = lines_of(text);
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || lines.front() != "n,d,lower,upper,lower_provenance,upper_provenance") {
    throw FormatError("bound CSV must start with the column header");
  }
  std::vector<BoundRecord> records;
  int n_max = 0, d_max = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = csv_split(lines[i]);
    if (f.size() != 6) throw FormatError("bound CSV line " + std::to_string(i + 1) + " needs 6 fields");
    BoundRecord r;
    r.n = static_cast<int>(to_int(f[0], "n"));
    r.d = static_cast<int>(to_int(f[1], "d"));
    r.lower = parse_bigint(f[2]);
    if (f[3] != "unknown") r.upper = parse_bigint(f[3]);
    r.lower_provenance = Provenance::parse(f[4]);
    r.upper_provenance = Provenance::parse(f[5]);
    n_max = std::max(n_max, r.n);
    d_max = std::max(d_max, r.d);
    records.push_back(std::move(r));
  }
  return BoundTable(n_max, d_max, std::move(records));
}

std::string format_table_markdown(const BoundTable& table) {
  std::string out;
  auto emit = [&](const char* title, bool upper) {
    out += std::string("### ") + title + "\n\n| n |";
    for (int d = 2; d <= table.d_max(); ++d) out += " d=" + std::to_string(d) + " |";
    out += "\n|---|";
    for (int d = 2; d <= table.d_max(); ++d) out += "---|";
    out += "\n";
    for (int n = 2; n <= table.n_max(); ++n) {
      out += "| " + std::to_string(n) + " |";
      for (int d = 2; d <= table.d_max(); ++d) {
        const auto& r = table.at(n, d);
        if (d > n) {
          out += " |";
          continue;
        }
        const std::string v = upper ? (r.upper ? r.upper->str() : "?") : r.lower.str();
        out += r.closed() ? " **" + v + "** |" : " " + v + " |";
      }
      out += "\n";
    }
    out += "\n";
  };
  emit("Lower bounds for P(n,d)", false);
  emit("Upper bounds for P(n,d)", true);
  return out;
}

// -------------------------------------------------------------- file utils

void write_file_atomic(const fs::path& path, std::string_view content) {
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  std::random_device rd;
  const fs::path tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(rd()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw FormatError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw FormatError("cannot rename into " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ------------------------------------------------------------------- cache

CacheKey CacheKey::array(Alphabet alphabet, int d) {
  if (d < 1) throw DomainError("cache keys need d >= 1");
  CacheKey k;
  k.alphabet_ = std::move(alphabet);
  k.d_ = d;
  return k;
}

CacheKey CacheKey::prefix(int n, int m, int d) {
  if (!(n >= 1 && m >= 1 && m <= n && d >= 1)) throw DomainError("prefix cache keys need 1 <= m <= n, d >= 1");
  CacheKey k;
  k.n_ = n;
  k.m_ = m;
  k.d_ = d;
  return k;
}

std::string CacheKey::dir_name() const {
  if (alphabet_) {
    std::string s = "alpha-";
    const auto syms = alphabet_->symbols();
    for (std::size_t i = 0; i < syms.size(); ++i) {
      if (i) s += '_';
      s += std::to_string(syms[i]);
    }
    return s + "-d" + std::to_string(d_);
  }
  return "prefix-n" + std::to_string(n_) + "-m" + std::to_string(m_) + "-d" + std::to_string(d_);
}

std::optional<CacheKey> CacheKey::parse(const std::string& name) {
  try {
    if (name.rfind("alpha-", 0) == 0) {
      const auto dash = name.rfind("-d");
      if (dash == std::string::npos || dash <= 6) return std::nullopt;
      std::vector<Symbol> syms;
      std::string cur;
      for (char c : name.substr(6, dash - 6) + "_") {
        if (c == '_') {
          syms.push_back(static_cast<Symbol>(to_int(cur, "symbol")));
          cur.clear();
        } else {
          cur += c;
        }
      }
      return array(Alphabet(std::move(syms)), static_cast<int>(to_int(name.substr(dash + 2), "d")));
    }
    if (name.rfind("prefix-n", 0) == 0) {
      const auto m_at = name.find("-m");
      const auto d_at = name.find("-d", m_at == std::string::npos ? 0 : m_at);
      if (m_at == std::string::npos || d_at == std::string::npos) return std::nullopt;
      return prefix(static_cast<int>(to_int(name.substr(8, m_at - 8), "n")),
                    static_cast<int>(to_int(name.substr(m_at + 2, d_at - m_at - 2), "m")),
                    static_cast<int>(to_int(name.substr(d_at + 2), "d")));
    }
  } catch (const Error&) {
    return std::nullopt;
  }
  return std::nullopt;
}

BoundCache::BoundCache(fs::path root) : root_(std::move(root)) { fs::create_directories(root_); }

namespace {

struct IndexFile {
  BigInt size;
  bool exact = false;
  std::string artifact;
  std::string source;
};

std::string format_index(const IndexFile& f) {
  return "size " + f.size.str() + "\nexact " + (f.exact ? "1" : "0") + "\nartifact " + f.artifact + "\nsource " +
         f.source + "\n";
}

IndexFile parse_index(const std::string& text) {
  IndexFile f;
  bool have_size = false;
  for (auto line : lines_of(text)) {
    const auto sp = line.find(' ');
    const auto key = line.substr(0, sp);
    const auto value = sp == std::string_view::npos ? std::string_view{} : line.substr(sp + 1);
    if (key == "size") {
      f.size = parse_bigint(std::string(value));
      have_size = true;
    } else if (key == "exact") {
      f.exact = value == "1";
    } else if (key == "artifact") {
      f.artifact = value;
    } else if (key == "source") {
      f.source = value;
    }
  }
  if (!have_size || f.artifact.empty()) throw FormatError("cache index lacks size or artifact");
  return f;
}

std::string one_line(const std::string& text) {
  std::string out = text;
  std::replace(out.begin(), out.end(), '\n', ' ');
  return out;
}

}  // namespace

std::optional<CacheEntry> BoundCache::read_index(const CacheKey& key) const {
  const fs::path dir = root_ / key.dir_name();
  std::optional<CacheEntry> best;
  if (fs::exists(dir / "index")) {
    const auto idx = parse_index(read_file(dir / "index"));
    const fs::path artifact = dir / idx.artifact;
    // Re-check the certificate; a missing or altered artifact is ignored.
    try {
      const std::string text = read_file(artifact);
      const std::size_t size = key.is_array() ? parse_pa(text).size() : parse_prefix(text).size();
      if (BigInt(size) == idx.size) best = CacheEntry{idx.size, artifact, idx.exact, false, idx.source};
    } catch (const Error&) {
    }
  }
  return best;
}

std::optional<CacheEntry> BoundCache::get(const CacheKey& key, bool allow_cited) const {
  auto best = read_index(key);
  const fs::path cited = root_ / key.dir_name() / "cited";
  if (allow_cited && fs::exists(cited)) {
    const auto lines = lines_of(read_file(cited));
    if (!lines.empty()) {
      const auto f = fields_of(lines.front());
      if (!f.empty()) {
        const BigInt value = parse_bigint(std::string(f.front()));
        const std::string source = lines.size() > 1 ? std::string(lines[1]) : std::string();
        if (!best || value > best->size) best = CacheEntry{value, std::nullopt, false, true, source};
      }
    }
  }
  return best;
}

bool BoundCache::store(const CacheKey& key, const BigInt& size, bool exact, const std::string& source,
                       const std::string& artifact_name, const std::string& artifact_text) {
  const auto current = read_index(key);
  if (current && (current->size > size || (current->size == size && (current->exact || !exact)))) return false;
  const fs::path dir = root_ / key.dir_name();
  fs::create_directories(dir);
  write_file_atomic(dir / artifact_name, artifact_text);
  write_file_atomic(dir / "index", format_index({size, exact, artifact_name, one_line(source)}));
  return true;
}

bool BoundCache::put(const CacheKey& key, const PermutationArray& array, bool exact, const std::string& source) {
  if (!key.is_array() || key.alphabet() != array.alphabet() || array.declared_distance() != key.d()) {
    throw DomainError("array does not match cache key " + key.dir_name());
  }
  require_valid(array, "cache put");
  return store(key, BigInt(array.size()), exact, source, "array.pa", format_pa(array));
}

bool BoundCache::put(const CacheKey& key, const PrefixSet& set, bool exact, const std::string& source) {
  if (key.is_array() || key.n() != set.universe() || key.m() != set.length() || key.d() != set.distance()) {
    throw DomainError("prefix set does not match cache key " + key.dir_name());
  }
  if (set.violation()) throw VerificationError("prefix set is not at distance " + std::to_string(set.distance()));
  return store(key, BigInt(set.size()), exact, source, "prefix.txt", format_prefix(set));
}

bool BoundCache::put_cited(const CacheKey& key, const BigInt& value, const std::string& source) {
  const fs::path dir = root_ / key.dir_name();
  const fs::path path = dir / "cited";
  if (fs::exists(path)) {
    const auto lines = lines_of(read_file(path));
    if (!lines.empty() && !fields_of(lines.front()).empty() &&
        parse_bigint(std::string(fields_of(lines.front()).front())) >= value) {
      return false;
    }
  }
  fs::create_directories(dir);
  write_file_atomic(path, value.str() + "\n" + one_line(source) + "\n");
  return true;
}

std::vector<CacheKey> BoundCache::keys() const {
  std::vector<std::pair<std::string, CacheKey>> found;
  for (const auto& entry : fs::directory_iterator(root_)) {
    if (!entry.is_directory()) continue;
    const auto name = entry.path().filename().string();
    if (auto key = CacheKey::parse(name)) found.emplace_back(name, *key);
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<CacheKey> out;
  for (auto& [name, key] : found) out.push_back(key);
  return out;
}

TableSeeds seeds_from_cache(const BoundCache& cache, bool allow_cited) {
  TableSeeds seeds;
  for (const auto& key : cache.keys()) {
    if (auto entry = cache.get(key, false)) {
      const SeedValue seed{entry->size, "cache:" + key.dir_name()};
      if (!key.is_array()) {
        seeds.prefix[{key.n(), key.m(), key.d()}] = seed;
      } else if (key.alphabet().is_range()) {
        const std::pair<int, int> cell{static_cast<int>(key.alphabet().size()), key.d()};
        (entry->exact ? seeds.exact : seeds.search)[cell] = seed;
      } else {
        seeds.alphabet_search[{key.alphabet(), key.d()}] = seed;
      }
    }
    if (allow_cited && key.is_array() && key.alphabet().is_range()) {
      auto entry = cache.get(key, true);
      if (entry && entry->cited) {
        seeds.cited[{static_cast<int>(key.alphabet().size()), key.d()}] = {entry->size, entry->source};
      }
    }
  }
  return seeds;
}

}  // namespace chebpa
