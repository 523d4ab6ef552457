#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "lieab/charcalc.hpp"

namespace lieab {

struct CachedDimension {
  BigInt dimension;
  std::size_t weight_count = 0;
};

/// On-disk memo of Demazure dimensions keyed by (target label, word hash,
/// weight). Lines are tab separated and end in a checksum; lines that fail to
/// parse or verify are dropped with a warning. A hash hit only counts if the
/// stored word matches letter for letter.
class DimensionCache {
 public:
  DimensionCache() = default;
  /// Loads `path` if it exists; a missing file is a cold cache.
  explicit DimensionCache(std::filesystem::path path);

  std::optional<CachedDimension> lookup(const std::string& target, std::span<const int> word_labels,
                                        std::span<const int> weight) const;
  void store(const std::string& target, std::span<const int> word_labels, std::span<const int> weight,
             const CachedDimension& value);

  /// Writes every entry back to the load path. Throws IoError.
  void save() const;
  void save(const std::filesystem::path& path) const;

  std::size_t size() const;
  std::vector<std::string> warnings() const;
  std::size_t hits() const;
  std::size_t misses() const;

  static std::uint64_t word_hash(std::span<const int> word_labels);
  /// Serialised entry line, exposed so tests can craft cache files.
  static std::string format_line(const std::string& target, std::uint64_t hash, std::span<const int> word_labels,
                                 std::span<const int> weight, const CachedDimension& value);

 private:
  struct Entry {
    std::vector<int> word;
    CachedDimension value;
  };
  using Key = std::tuple<std::string, std::uint64_t, std::vector<int>>;

  void load();

  std::filesystem::path path_;
  mutable std::mutex mutex_;
  std::multimap<Key, Entry> entries_;
  std::vector<std::string> warnings_;
  mutable std::size_t hits_ = 0;
  mutable std::size_t misses_ = 0;
};

}  // namespace lieab
