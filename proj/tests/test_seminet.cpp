#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "plr/classify.hpp"
#include "plr/counting.hpp"
#include "plr/seminet.hpp"

using namespace plr;

namespace {

Plr fig1() { return plr_from_grid("1234/2143/3412/4321"); }
Plr fig2() { return Plr({4, 4, 4}, {{1, 2, 1}, {1, 4, 2}, {2, 1, 1}, {2, 3, 2}, {3, 1, 2}}); }

std::size_t line_count(const Seminet& s) { return s.lines[0].size() + s.lines[1].size() + s.lines[2].size(); }

}  // namespace

TEST_SUITE("seminet") {
  TEST_CASE("grid parsing") {
    Plr h = plr_from_grid("123/2.1/31.");
    CHECK(h.dims() == Dims{3, 3, 3});
    CHECK(h.size() == 7);
    CHECK(plr_from_grid(".1.2/1.2./2.../....") == fig2());
    CHECK_THROWS_AS(plr_from_grid("1x/.."), Error);
  }

  TEST_CASE("a Latin square gives a net") {
    Seminet s = seminet_from_pls(fig1());
    CHECK(point_rank(s) == 16);
    CHECK(line_count(s) == 12);
    CHECK(is_n_regular(s, 4));
    CHECK(l_order(s) == 4);
    CHECK(is_connected(s));
    CHECK(satisfies_axioms(s));
  }

  TEST_CASE("the size-5 order-4 example") {
    Seminet s = seminet_from_pls(fig2());
    CHECK(point_rank(s) == 5);
    CHECK(l_order(s) == 4);
    CHECK(is_connected(s));
    CHECK_FALSE(is_n_regular(s, 2));
    CHECK(reconstruct(s) == fig2());
  }

  TEST_CASE("sources that are not seminets") {
    CHECK_THROWS_AS(seminet_from_pls(Plr({3, 3, 3}, {})), Error);
    CHECK_THROWS_AS(seminet_from_pls(Plr({2, 3, 3}, {{1, 1, 1}})), Error);
    CHECK_THROWS_AS(seminet_from_pls(Plr({2, 2, 2}, {{1, 1, 1}})), Error);
    CHECK_THROWS_AS(seminet_from_pls(Plr({3, 3, 3}, {{1, 1, 1}, {2, 2, 2}})), Error);
  }

  TEST_CASE("configurations") {
    Seminet h = seminet_from_pls(plr_from_grid("123/2.1/31."));
    CHECK(is_configuration(h));
    Seminet sem8 = seminet_from_pls(plr_from_grid("12../21../..34/..43"));
    CHECK_FALSE(is_connected(sem8));
    CHECK(min_line_size(sem8) == 2);
    CHECK_FALSE(is_configuration(sem8));
    auto reps = class_representatives({Structure({2, 1}), Structure({2, 1}), Structure({2, 1})}, true,
                                      GroupKind::Paratopism);
    REQUIRE(reps.size() == 1);
    CHECK_FALSE(is_configuration(seminet_from_pls(reps[0])));
  }

  TEST_CASE("axioms and reconstruction for every regular non-compressible square of order 3") {
    int checked = 0;
    oracle::for_each_plr(3, 3, 3, [&](const oracle::Square& q) {
      Plr p = oracle::to_plr(q, {3, 3, 3});
      if (q.empty() || !is_noncompressible(p) || !is_regular(p)) return;
      Seminet s = seminet_from_pls(p);
      CHECK(satisfies_axioms(s));
      CHECK(reconstruct(s) == p);
      ++checked;
    });
    CHECK(checked > 0);
  }

  TEST_CASE("axioms and reconstruction at order 4 up to size 6") {
    int checked = 0;
    for (int m = 1; m <= 6; ++m)
      for (const auto& t : unordered_triples(m, 4)) {
        ClassifyOptions o;
        o.keep_representatives = true;
        auto rep = classify_structure_triple(t, true, o);
        for (const auto& p : rep.representatives) {
          Seminet s = seminet_from_pls(p);
          CHECK(satisfies_axioms(s));
          CHECK(reconstruct(s) == p);
          CHECK(point_rank(s) == m);
          ++checked;
        }
      }
    CHECK(checked > 50);
  }

  TEST_CASE("broken incidences violate the axioms") {
    Seminet s = seminet_from_pls(plr_from_grid("123/2.1/31."));
    Seminet lost = s;
    lost.lines[0][0].pop_back();
    CHECK_FALSE(satisfies_axioms(lost));
    Seminet merged = s;
    // Points 0 and 1 share row 1; putting them on one column line too breaks
    // the at-most-one-point rule.
    for (auto& line : merged.lines[1]) std::erase(line, 1);
    for (auto& line : merged.lines[1])
      if (std::find(line.begin(), line.end(), 0) != line.end()) line.push_back(1);
    CHECK_FALSE(satisfies_axioms(merged));
  }

  TEST_CASE("named grids and main-class keys") {
    std::set<Plr> keys;
    for (const auto& g : named_grids()) {
      Plr p = plr_from_grid(g.grid);
      CHECK(named_match(p) == g.label);
      keys.insert(main_class_key(p));
    }
    CHECK(keys.size() == named_grids().size());
    Plr h = plr_from_grid("123/2.1/31.");
    CHECK(named_match(parastrophe(h, Parastrophe::from_name("(123)"))) == std::string("H"));
    CHECK(compress(Plr({4, 4, 4}, {{2, 3, 4}})) == Plr({1, 1, 1}, {{1, 1, 1}}));
    CHECK_FALSE(named_match(fig2()).has_value());
  }

  TEST_CASE("census at small ranks") {
    CHECK_THROWS_AS(census(9), Error);
    CHECK_THROWS_AS(census_rank(0), Error);
    std::map<int, int> per_rank;
    for (const auto& rec : census(5)) ++per_rank[rec.rank];
    CHECK(per_rank[1] == 0);
    CHECK(per_rank[2] == 0);
    CHECK(per_rank[3] == 1);
    CHECK(per_rank[4] == 4);
    CHECK(per_rank[5] == 7);
    auto four = census_rank(4);
    int configs = 0;
    for (const auto& rec : four) configs += rec.configuration;
    CHECK(configs == 1);
    CHECK(census_record_json(four.front()).rfind("{\"rank\":4,\"structure\":", 0) == 0);
  }

  TEST_CASE("padding the census order changes nothing at rank 4") {
    // Main classes of regular non-compressible squares of size 4 found by
    // brute force at order 5, compressed and padded to their longest line.
    std::set<Plr> brute;
    oracle::for_each_plr(4, 5, 5, [&](const oracle::Square& q) {
      if (q.size() != 4) return;
      Plr p = oracle::to_plr(q, {4, 5, 5});
      Plr c = compress(p);
      const int N = std::max({c.dims().r, c.dims().s, c.dims().n});
      Plr sq = pad_to_order(c, N);
      if (!is_regular(sq)) return;
      brute.insert(main_class_key(p));
    }, 4);
    std::set<Plr> engine;
    for (const auto& rec : census_rank(4)) engine.insert(main_class_key(rec.representative));
    CHECK(brute == engine);
  }

  TEST_CASE("census records are identical across worker counts") {
    CHECK(census_jsonl(census(6, 1)) == census_jsonl(census(6, 3)));
  }
}
