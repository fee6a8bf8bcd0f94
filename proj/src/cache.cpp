#include "wpvol/cache.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "wpvol/moduli.hpp"

namespace wpvol {

namespace {

std::size_t line_of(std::string_view text, const std::string& needle) {
  auto pos = text.find(needle);
  if (pos == std::string_view::npos) return 0;
  std::size_t line = 1;
  for (std::size_t i = 0; i < pos; ++i)
    if (text[i] == '\n') ++line;
  return line;
}

[[noreturn]] void reject(std::string_view text, const std::string& key, const std::string& why) {
  std::string quoted = nlohmann::json(key).dump();
  std::size_t line = line_of(text, quoted);
  std::string where = line ? "line " + std::to_string(line) : "entry " + quoted;
  throw FormatError("cache " + where + ": " + why);
}

}  // namespace

std::string serialize_cache(const CacheFile& cache) {
  std::string out = "{\n  \"version\": " + std::to_string(cache.version) + ",\n  \"entries\": {";
  bool first = true;
  for (const auto& [key, value] : cache.entries) {
    out += first ? "\n" : ",\n";
    out += "    " + nlohmann::json(key).dump() + ": " + nlohmann::json(to_string(value)).dump();
    first = false;
  }
  out += first ? "}\n}\n" : "\n  }\n}\n";
  return out;
}

CacheFile parse_cache(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("cache is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("version") || !doc.contains("entries"))
    throw FormatError("cache must be an object with \"version\" and \"entries\"");
  if (!doc["version"].is_number_integer()) throw FormatError("cache version must be an integer");
  const int version = doc["version"].get<int>();
  if (version != kCacheVersion)
    throw FormatError("unsupported cache version " + std::to_string(version) + " (expected " +
                      std::to_string(kCacheVersion) + ")");
  if (doc.size() != 2) throw FormatError("cache has unexpected top-level fields");
  const auto& entries = doc["entries"];
  if (!entries.is_object()) throw FormatError("cache \"entries\" must be an object");

  CacheFile out;
  out.version = version;
  for (auto it = entries.begin(); it != entries.end(); ++it) {
    const std::string& key = it.key();
    try {
      parse_key(key);
    } catch (const FormatError& e) {
      reject(text, key, std::string("bad key: ") + e.what());
    } catch (const DomainError& e) {
      reject(text, key, std::string("bad key: ") + e.what());
    }
    if (!it.value().is_string()) reject(text, key, "value must be a string-encoded rational");
    try {
      out.entries.emplace(key, parse_rational(it.value().get<std::string>()));
    } catch (const FormatError& e) {
      reject(text, key, std::string("bad value: ") + e.what());
    }
  }
  return out;
}

CacheFile load_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    if (!std::filesystem::exists(path)) return {};
    throw FormatError("cannot read cache file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_cache(buf.str());
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void store_cache(const std::filesystem::path& path, const CacheFile& cache) {
  std::random_device rd;
  auto tmp = path;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    out << serialize_cache(cache);
    out.flush();
    if (!out) throw std::runtime_error("failed writing cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace wpvol
