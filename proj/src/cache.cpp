#include "lieab/cache.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace lieab {

namespace {

constexpr std::string_view kMagic = "lieab-dim-v1";

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string join(std::span<const int> xs) {
  std::string out;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(xs[k]);
  }
  return out;
}

std::optional<std::vector<int>> split_ints(std::string_view s) {
  std::vector<int> out;
  if (s.empty()) return out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = std::min(s.find(',', pos), s.size());
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + comma, v);
    if (ec != std::errc() || ptr != s.data() + comma) return std::nullopt;
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

std::string hex(std::uint64_t x) {
  std::ostringstream os;
  os << std::hex << x;
  return os.str();
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t tab = line.find('\t', pos);
    out.push_back(line.substr(pos, tab == std::string_view::npos ? std::string_view::npos : tab - pos));
    if (tab == std::string_view::npos) break;
    pos = tab + 1;
  }
  return out;
}

}  // namespace

DimensionCache::DimensionCache(std::filesystem::path path) : path_(std::move(path)) { load(); }

std::uint64_t DimensionCache::word_hash(std::span<const int> word_labels) { return fnv1a(join(word_labels)); }

std::string DimensionCache::format_line(const std::string& target, std::uint64_t hash, std::span<const int> word_labels,
                                        std::span<const int> weight, const CachedDimension& value) {
  std::string body = std::string(kMagic) + '\t' + target + '\t' + hex(hash) + '\t' + join(word_labels) + '\t' +
                     join(weight) + '\t' + value.dimension.str() + '\t' + std::to_string(value.weight_count);
  return body + '\t' + hex(fnv1a(body));
}

void DimensionCache::load() {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto warn = [&](const std::string& why) {
      warnings_.push_back(path_.string() + ":" + std::to_string(lineno) + ": ignoring cache entry (" + why + ")");
    };
    const auto fields = split_tabs(line);
    if (fields.size() != 8 || fields[0] != kMagic) {
      warn("malformed");
      continue;
    }
    const std::string_view body(line.data(), line.size() - fields[7].size() - 1);
    if (hex(fnv1a(body)) != fields[7]) {
      warn("checksum mismatch");
      continue;
    }
    std::uint64_t hash = 0;
    const auto word = split_ints(fields[3]);
    const auto weight = split_ints(fields[4]);
    std::size_t count = 0;
    const auto h = std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), hash, 16);
    const auto c = std::from_chars(fields[6].data(), fields[6].data() + fields[6].size(), count);
    if (!word || !weight || h.ec != std::errc() || c.ec != std::errc()) {
      warn("unparsable field");
      continue;
    }
    CachedDimension value;
    try {
      value.dimension = BigInt(std::string(fields[5]));
    } catch (const std::exception&) {
      warn("bad dimension");
      continue;
    }
    value.weight_count = count;
    entries_.emplace(Key{std::string(fields[1]), hash, *weight}, Entry{*word, value});
  }
}

std::optional<CachedDimension> DimensionCache::lookup(const std::string& target, std::span<const int> word_labels,
                                                      std::span<const int> weight) const {
  std::lock_guard lock(mutex_);
  const Key key{target, word_hash(word_labels), std::vector<int>(weight.begin(), weight.end())};
  const auto [lo, hi] = entries_.equal_range(key);
  for (auto it = lo; it != hi; ++it) {
    if (std::equal(it->second.word.begin(), it->second.word.end(), word_labels.begin(), word_labels.end())) {
      ++hits_;
      return it->second.value;
    }
  }
  ++misses_;
  return std::nullopt;
}

void DimensionCache::store(const std::string& target, std::span<const int> word_labels, std::span<const int> weight,
                           const CachedDimension& value) {
  std::lock_guard lock(mutex_);
  const Key key{target, word_hash(word_labels), std::vector<int>(weight.begin(), weight.end())};
  const auto [lo, hi] = entries_.equal_range(key);
  for (auto it = lo; it != hi; ++it) {
    if (std::equal(it->second.word.begin(), it->second.word.end(), word_labels.begin(), word_labels.end())) {
      it->second.value = value;
      return;
    }
  }
  entries_.emplace(key, Entry{std::vector<int>(word_labels.begin(), word_labels.end()), value});
}

void DimensionCache::save() const { save(path_); }

void DimensionCache::save(const std::filesystem::path& path) const {
  std::lock_guard lock(mutex_);
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write cache " + path.string());
  for (const auto& [key, entry] : entries_)
    out << format_line(std::get<0>(key), std::get<1>(key), entry.word, std::get<2>(key), entry.value) << '\n';
  if (!out) throw Error(ErrorKind::IoError, "failed writing cache " + path.string());
}

std::size_t DimensionCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

std::vector<std::string> DimensionCache::warnings() const {
  std::lock_guard lock(mutex_);
  return warnings_;
}

std::size_t DimensionCache::hits() const {
  std::lock_guard lock(mutex_);
  return hits_;
}

std::size_t DimensionCache::misses() const {
  std::lock_guard lock(mutex_);
  return misses_;
}

}  // namespace lieab
