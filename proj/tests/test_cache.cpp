#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "wpvol/cache.hpp"
#include "wpvol/intersection.hpp"

using namespace wpvol;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "wpvol_cache_tests";
  std::filesystem::create_directories(dir);
  auto p = dir / name;
  std::filesystem::remove(p);
  return p;
}

}  // namespace

TEST_CASE("empty cache round trips") {
  CacheFile empty;
  std::string text = serialize_cache(empty);
  CHECK(text == "{\n  \"version\": 1,\n  \"entries\": {}\n}\n");
  CHECK(parse_cache(text) == empty);
}

TEST_CASE("single entry is stored bit-exactly") {
  CacheFile c;
  c.entries["g=2;psi=4;kappa="] = BigRational(1, 1152);
  std::string text = serialize_cache(c);
  CHECK(text.find("\"g=2;psi=4;kappa=\": \"1/1152\"") != std::string::npos);
  CHECK(parse_cache(text) == c);

  auto path = temp_file("single.json");
  store_cache(path, c);
  CHECK(load_cache(path) == c);
  CHECK(load_cache(temp_file("missing.json")).entries.empty());
}

TEST_CASE("engine memo round trips through a file") {
  IntersectionEngine e;
  e.wp_volume({3, 1});
  e.wp_volume({0, 9});
  CacheFile c{kCacheVersion, e.snapshot()};
  REQUIRE(c.entries.size() > 50);
  auto path = temp_file("memo.json");
  store_cache(path, c);
  CacheFile back = load_cache(path);
  CHECK(back == c);
  CHECK(serialize_cache(back) == serialize_cache(c));
}

TEST_CASE("malformed caches are rejected with the offending line") {
  const std::string bad_value = "{\n  \"version\": 1,\n  \"entries\": {\n    \"g=1;psi=1;kappa=\": \"1/24\",\n"
                                "    \"g=2;psi=4;kappa=\": \"2/4\"\n  }\n}\n";
  try {
    parse_cache(bad_value);
    FAIL("expected rejection");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("line 5") != std::string::npos);
    CHECK(std::string(e.what()).find("lowest terms") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_cache("{\"version\": 2, \"entries\": {}}"), FormatError);
  CHECK_THROWS_AS(parse_cache("{\"version\": \"1\", \"entries\": {}}"), FormatError);
  CHECK_THROWS_AS(parse_cache("{\"entries\": {}}"), FormatError);
  CHECK_THROWS_AS(parse_cache("not json"), FormatError);
  CHECK_THROWS_AS(parse_cache("{\"version\": 1, \"entries\": {\"g=1;psi=0,1;kappa=\": \"0\"}}"), FormatError);
  CHECK_THROWS_AS(parse_cache("{\"version\": 1, \"entries\": {\"g=1;psi=1;kappa=\": 3}}"), FormatError);
  CHECK_THROWS_AS(parse_cache("{\"version\": 1, \"entries\": {\"g=1;psi=1;kappa=\": \"1/0\"}}"), FormatError);
  CHECK_THROWS_AS(parse_cache("{\"version\": 1, \"entries\": {}, \"extra\": 0}"), FormatError);
}
