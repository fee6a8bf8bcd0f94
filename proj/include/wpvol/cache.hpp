#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "wpvol/rational.hpp"

namespace wpvol {

inline constexpr int kCacheVersion = 1;

/// Persistent memo: canonical key string -> exact value.
///
/// On disk it is a JSON object with one entry per line so diffs stay readable:
///
///   {
///     "version": 1,
///     "entries": {
///       "g=2;psi=4;kappa=": "1/1152"
///     }
///   }
struct CacheFile {
  int version = kCacheVersion;
  std::map<std::string, BigRational> entries;

  friend bool operator==(const CacheFile&, const CacheFile&) = default;
};

std::string serialize_cache(const CacheFile& cache);

/// Throws FormatError on bad JSON, an unsupported version, or an entry whose
/// key or value is not canonical; the message names the offending line.
CacheFile parse_cache(std::string_view text);

/// A missing file reads as an empty cache.
CacheFile load_cache(const std::filesystem::path& path);

/// Writes to a temporary sibling, then renames over `path`.
void store_cache(const std::filesystem::path& path, const CacheFile& cache);

}  // namespace wpvol
