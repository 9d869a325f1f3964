#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "disp/cff.hpp"
#include "oracles.hpp"

using namespace disp;

namespace {

SetFamily random_family(int n, int d, std::mt19937_64& rng, bool allow_duplicates = true) {
  std::vector<std::vector<int>> sets;
  for (int i = 0; i < d; ++i) {
    std::vector<int> s;
    for (int e = 1; e <= n; ++e)
      if (rng() & 1) s.push_back(e);
    sets.push_back(std::move(s));
  }
  if (allow_duplicates && d >= 2 && (rng() % 4) == 0)
    sets[static_cast<std::size_t>(rng() % d)] = sets[0];
  return SetFamily(n, sets);
}

}  // namespace

TEST_CASE("verify_cover_free on textbook families") {
  SetFamily singletons(3, {{1}, {2}, {3}});
  CHECK(verify_cover_free(singletons, 1, 1).cover_free);

  SetFamily pairs(3, {{1, 2}, {2, 3}, {1, 3}});
  auto r12 = verify_cover_free(pairs, 1, 2);
  REQUIRE_FALSE(r12.cover_free);
  CHECK(r12.witness->K == std::vector<int>{0});
  CHECK(r12.witness->L == std::vector<int>{1, 2});  // {1,2} in {2,3} union {1,3}

  CHECK(verify_cover_free(pairs, 1, 1).cover_free);
}

TEST_CASE("verify_cover_free parameter errors") {
  SetFamily f(2, {{1}, {2}});
  CHECK_THROWS_AS(verify_cover_free(f, 1, 2), ValidityError);  // k + r > |F|
  CHECK_THROWS_AS(verify_cover_free(f, 0, 1), ValidityError);
}

TEST_CASE("empty or repeated members violate immediately") {
  SetFamily with_empty(3, {{}, {1}, {2}});
  CHECK_FALSE(verify_cover_free(with_empty, 1, 1).cover_free);
  SetFamily repeated(3, {{1, 2}, {1, 2}, {3}});
  auto r = verify_cover_free(repeated, 1, 1);
  REQUIRE_FALSE(r.cover_free);
  CHECK(r.witness->K == std::vector<int>{0});
  CHECK(r.witness->L == std::vector<int>{1});
}

TEST_CASE("verifier agrees with the naive reference, exhaustively") {
  // all unordered families of distinct subsets, n <= 4, d <= 4
  for (int n = 1; n <= 4; ++n) {
    const int masks = 1 << n;
    for (int d = 2; d <= 4; ++d) {
      if (masks < d) continue;
      std::vector<int> choice(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) choice[static_cast<std::size_t>(i)] = i;
      auto next_comb = [&](std::vector<int>& c) {
        for (int i = d - 1; i >= 0; --i) {
          if (c[static_cast<std::size_t>(i)] < masks - d + i) {
            ++c[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < d; ++j)
              c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
            return true;
          }
        }
        return false;
      };
      do {
        std::vector<std::vector<int>> sets;
        for (int i = 0; i < d; ++i) {
          std::vector<int> elems;
          for (int e = 0; e < n; ++e)
            if ((choice[static_cast<std::size_t>(i)] >> e) & 1) elems.push_back(e + 1);
          sets.push_back(std::move(elems));
        }
        SetFamily family(n, sets);
        for (int k = 1; k <= 2; ++k)
          for (int r = 1; r <= 2; ++r) {
            if (k + r > d) continue;
            auto fast = verify_cover_free(family, k, r);
            auto naive = oracle::naive_cover_free(sets, k, r);
            REQUIRE(fast.cover_free == naive.cover_free);
          }
      } while (next_comb(choice));
    }
  }
}

TEST_CASE("verifier agrees with the naive reference on random families (n=5, d=5, duplicates)") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 400; ++t) {
    SetFamily family = random_family(5, 5, rng);
    for (int k = 1; k <= 2; ++k)
      for (int r = 1; r <= 2; ++r) {
        auto fast = verify_cover_free(family, k, r);
        auto naive = oracle::naive_cover_free(family, k, r);
        REQUIRE(fast.cover_free == naive.cover_free);
      }
  }
}

TEST_CASE("violation witnesses are sound, re-checked independently") {
  std::mt19937_64 rng(78);
  int checked = 0;
  for (int t = 0; t < 300 && checked < 100; ++t) {
    SetFamily family = random_family(6, 5, rng);
    auto r = verify_cover_free(family, 2, 2);
    if (r.cover_free) continue;
    ++checked;
    // intersection over K must be inside the union over L, on raw elements
    std::vector<int> inter = family.set_elements(r.witness->K[0]);
    for (std::size_t i = 1; i < r.witness->K.size(); ++i) {
      std::vector<int> other = family.set_elements(r.witness->K[i]);
      std::vector<int> tmp;
      std::set_intersection(inter.begin(), inter.end(), other.begin(), other.end(),
                            std::back_inserter(tmp));
      inter = std::move(tmp);
    }
    std::set<int> uni;
    for (int j : r.witness->L) {
      auto elems = family.set_elements(j);
      uni.insert(elems.begin(), elems.end());
    }
    for (int e : inter) CHECK(uni.count(e) == 1);
    // K and L disjoint
    for (int i : r.witness->K)
      for (int j : r.witness->L) CHECK(i != j);
  }
  CHECK(checked > 10);
}

TEST_CASE("monotonicity in r and k") {
  std::mt19937_64 rng(79);
  for (int t = 0; t < 200; ++t) {
    SetFamily family = random_family(6, 6, rng, false);
    // (k,r)-cover-free implies (k,r')-cover-free for r' <= r
    if (verify_cover_free(family, 2, 3).cover_free) {
      CHECK(verify_cover_free(family, 2, 2).cover_free);
      CHECK(verify_cover_free(family, 2, 1).cover_free);
    }
    // and (k',r)-cover-free for k' <= k
    if (verify_cover_free(family, 2, 2).cover_free)
      CHECK(verify_cover_free(family, 1, 2).cover_free);
  }
}

TEST_CASE("min_ground_size exact values, cross-checked naively") {
  auto c112 = min_ground_size(1, 1, 2);
  REQUIRE(c112.exact.has_value());
  CHECK(*c112.exact == 2);
  CHECK(oracle::naive_min_ground(1, 1, 2) == 2);

  auto c113 = min_ground_size(1, 1, 3);
  REQUIRE(c113.exact.has_value());
  CHECK(*c113.exact == 3);
  CHECK(oracle::naive_min_ground(1, 1, 3) == 3);

  auto c123 = min_ground_size(1, 2, 3);
  REQUIRE(c123.exact.has_value());
  CHECK(*c123.exact == 3);
  CHECK(oracle::naive_min_ground(1, 2, 3) == 3);

  // returned witness families really are cover-free at the claimed size
  REQUIRE(c123.family.has_value());
  CHECK(c123.family->ground_size() == 3);
  CHECK(c123.family->size() == 3);
  CHECK(verify_cover_free(*c123.family, 1, 2).cover_free);
  CHECK(oracle::naive_cover_free(*c123.family, 1, 2).cover_free);
}

TEST_CASE("min_ground_size a few more exact values") {
  // (1,1): d-member antichains; Sperner gives C = min n with binom(n, n/2) >= d
  auto c114 = min_ground_size(1, 1, 4);
  REQUIRE(c114.exact.has_value());
  CHECK(*c114.exact == 4);
  auto c116 = min_ground_size(1, 1, 6);
  REQUIRE(c116.exact.has_value());
  CHECK(*c116.exact == 4);  // binom(4,2) = 6
  CHECK(*min_ground_size(2, 2, 4).exact == 6);  // every pair needs its own element
}

TEST_CASE("min_ground_size budget bracket") {
  auto r = min_ground_size(2, 2, 4, 50);
  CHECK_FALSE(r.exact.has_value());
  CHECK(r.budget_exhausted);
  CHECK(r.lower_bound >= 1);
  CHECK_FALSE(r.upper_bound.has_value());
  CHECK_THROWS_AS(min_ground_size(1, 1, 1), ValidityError);  // d < k + r
}

TEST_CASE("michel_scott_bound values") {
  CHECK(michel_scott_bound(1, 1, 1, 3) == 1.0);
  CHECK(michel_scott_bound(2, 2, 3, 10) == 6.25);
  CHECK(michel_scott_bound(1, 5, 2, 4) == 2.0);
  CHECK_THROWS_AS(michel_scott_bound(2, 1, 3, 4), ValidityError);  // d < k + t
  CHECK_THROWS_AS(michel_scott_bound(0, 1, 1, 3), ValidityError);
}

TEST_CASE("split_st") {
  CHECK(split_st(4, 1).s == 3);
  CHECK(split_st(4, 1).t == 1);
  CHECK(split_st(25, 1).s == 13);
  CHECK(split_st(25, 1).t == 12);
  CHECK(split_st(7, 2).s == 3);
  CHECK(split_st(7, 2).t == 4);
  CHECK_THROWS_AS(split_st(2, 1), ValidityError);  // t would be 0
  CHECK_THROWS_AS(split_st(1, 1), ValidityError);

  for (int k = 1; k <= 10; ++k)
    for (long long ell = 1; ell <= 10000; ++ell) {
      if (static_cast<long long>(k) * ell < k + 2) continue;  // t < 1 domain
      auto [s, t] = split_st(ell, k);
      REQUIRE(s + t == ell);
      REQUIRE(s >= 1);
      REQUIRE(t >= 1);
    }
}

TEST_CASE("exact C values never undercut the michel-scott bound at tiny scale") {
  for (int k = 1; k <= 2; ++k)
    for (int s = 1; s <= 2; ++s)
      for (int t = 1; t <= 2; ++t) {
        if (s + t > 3) continue;
        const int r = s + t;
        for (int d = k + r; d <= 5; ++d) {
          if (d < k + t) continue;
          double ms = michel_scott_bound(k, s, t, d);
          auto res = min_ground_size(k, r, d, 20'000'000);
          int proven = res.exact ? *res.exact : res.lower_bound;
          CHECK(proven >= static_cast<int>(std::ceil(ms)));
        }
      }
}

TEST_CASE("set-family file round trip and parsing") {
  SetFamily family(4, {{1, 3}, {}, {2, 4}});
  std::stringstream ss;
  write_set_family(ss, family);
  SetFamily back = read_set_family(ss);
  CHECK(back.ground_size() == 4);
  REQUIRE(back.size() == 3);
  CHECK(back.set_elements(0) == std::vector<int>{1, 3});
  CHECK(back.set_elements(1).empty());
  CHECK(back.set_elements(2) == std::vector<int>{2, 4});

  {
    std::stringstream in("# family\nground=3\n1 2\n\n3\n");
    SetFamily f = read_set_family(in);
    REQUIRE(f.size() == 3);
    CHECK(f.set_elements(1).empty());  // blank line is an empty set
  }
  {
    std::stringstream in("1 2\n");
    CHECK_THROWS_AS(read_set_family(in), ParseError);  // missing ground header
  }
  {
    std::stringstream in("ground=2\n1 5\n");
    CHECK_THROWS_AS(read_set_family(in), ParseError);  // element out of range
  }
}

TEST_CASE("cover-free verdict JSON shape") {
  SetFamily pairs(3, {{1, 2}, {2, 3}, {1, 3}});
  auto ok = nlohmann::json::parse(verify_cover_free(pairs, 1, 1).to_json());
  CHECK(ok["verdict"] == "cover-free");
  auto bad = nlohmann::json::parse(verify_cover_free(pairs, 1, 2).to_json());
  CHECK(bad["verdict"] == "violation");
  CHECK(bad["K"] == nlohmann::json::array({1}));        // 1-based outside
  CHECK(bad["L"] == nlohmann::json::array({2, 3}));
}
