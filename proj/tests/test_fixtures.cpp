#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "plr/cache.hpp"
#include "plr/fixtures.hpp"

using namespace plr;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_SUITE("fixtures") {
  TEST_CASE("size tables load losslessly") {
    auto rows = load_size_rows(data_dir() + "/table1_4.csv");
    REQUIRE_FALSE(rows.empty());
    bool seen_total = false, seen_latin6 = false;
    for (const auto& r : rows) {
      CHECK(r.table == size_table_of(r.dims));
      if (r.dims == Dims{4, 4, 4} && !r.m) {
        CHECK(r.count == 127545137);
        CHECK(r.key() == "4,4,4,TOTAL");
        seen_total = true;
      }
      if (r.dims == Dims{6, 6, 6} && r.m == 36) {
        CHECK(r.count == 812851200);
        seen_latin6 = true;
      }
    }
    CHECK(seen_total);
    CHECK(seen_latin6);
    CHECK(size_table_of({2, 3, 4}) == 1);
    CHECK(size_table_of({3, 5, 5}) == 2);
    CHECK(size_table_of({3, 4, 6}) == 3);
    CHECK(size_table_of({4, 4, 6}) == 4);
  }

  TEST_CASE("structure tables load losslessly") {
    auto t5 = load_class_rows(data_dir() + "/table5.csv", 5);
    auto t6 = load_class_rows(data_dir() + "/table6.csv", 6);
    CHECK(t5.size() == 136);
    CHECK(t6.size() == 301);
    CHECK(t5[1].key() == "2|1,1|1,1");
    CHECK(t5[1].ic.has_value());
    CHECK_FALSE(t6[0].ic.has_value());
    CHECK(t6[0].m == 3);
  }

  TEST_CASE("malformed fixtures are parse errors") {
    auto bad = write_temp("plr_bad_size.csv", "r,s,n,m,count\n1,1,x,0,1\n");
    CHECK_THROWS_AS(load_size_rows(bad), Error);
    auto quote = write_temp("plr_bad_class.csv", "m,z1,z2,z3,count,mc\n3,\"2,1,\"2,1\",\"2,1\",1,1\n");
    CHECK_THROWS_AS(load_class_rows(quote, 6), Error);
    CHECK_THROWS_AS(load_size_rows("/nonexistent/table.csv"), Error);
  }

  TEST_CASE("skip-list") {
    auto mc = find_issue(6, "3,3,1,1|3,2,2,1|3,2,1,1,1", "mc");
    REQUIRE(mc.has_value());
    CHECK(mc->kind == IssueKind::Skip);
    CHECK_FALSE(find_issue(6, "3,3,1,1|3,2,2,1|3,2,1,1,1", "count").has_value());
    CHECK(find_issue(3, "4,4,6,4", "count")->kind == IssueKind::FormatOnly);
  }

  TEST_CASE("cache round trip") {
    CHECK(request_digest("count", "dims=3,3,3") == request_digest("count", "dims=3,3,3"));
    CHECK(request_digest("count", "dims=3,3,3") != request_digest("count", "dims=3,3,4"));
    CHECK(request_digest("a", "b").size() == 16);
    auto dir = std::filesystem::temp_directory_path() / "plr_cache_unit";
    std::filesystem::remove_all(dir);
    setenv("PLR_CACHE_DIR", dir.c_str(), 1);
    ResultCache cache;
    REQUIRE(cache.enabled());
    const std::string d = request_digest("count", "x");
    CHECK_FALSE(cache.get(d).has_value());
    cache.put(d, "1 27 270\n");
    CHECK(cache.get(d) == std::string("1 27 270\n"));
    CHECK_FALSE(ResultCache(false).enabled());
    unsetenv("PLR_CACHE_DIR");
    CHECK_FALSE(ResultCache().enabled());
    std::filesystem::remove_all(dir);
  }
}
