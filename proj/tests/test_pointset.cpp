#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "doctest.h"
#include "dyadic/pointset.hpp"

using namespace dyadic;

TEST_CASE("base family") {
  auto P = construct_p(0);
  REQUIRE(P.size() == 2);
  CHECK(P.square(0) == DyadicRect(DyadicInterval(1, 0), DyadicInterval(1, 0)));
  CHECK(P.square(1) == DyadicRect(DyadicInterval(1, 1), DyadicInterval(1, 1)));
  auto rep = verify_separation(P);
  CHECK(rep.min_dist_sq == LogDyadic{0});
  CHECK(rep.violations.empty());
}

TEST_CASE("m=1 family is pinned") {
  auto P = construct_p(1);
  REQUIRE(P.size() == 8);
  CHECK(P.col == std::vector<std::int64_t>{4, 1, 6, 3, 0, 5, 2, 7});
  for (std::int64_t r = 0; r < 8; ++r) CHECK(P.row_of[P.col[r]] == r);
}

TEST_CASE("separation and counts for small m") {
  for (long m = 0; m <= 3; ++m) {
    auto P = construct_p(m);
    CHECK(P.size() == (std::int64_t(1) << (2 * m + 1)));
    std::set<std::int64_t> cols(P.col.begin(), P.col.end());
    CHECK(std::int64_t(cols.size()) == P.size());
    auto rep = verify_separation(P);
    CHECK(rep.violations.empty());
    CHECK(rep.min_dist_sq == LogDyadic{m == 0 ? 0 : -2 * m});
  }
}

TEST_CASE("determinism") {
  auto a = construct_p(3), b = construct_p(3);
  CHECK(a.col == b.col);
}

TEST_CASE("resource cap") {
  CHECK_THROWS_AS(construct_p(20), error);
  CHECK_THROWS_AS(construct_p(-1), error);
}

TEST_CASE("count_in_rect pigeonhole") {
  auto P = construct_p(2);
  CHECK(count_in_rect(P, unit_square()) == 32);
  long s = 2 * P.m + 1;  // |R| = 2^(-2m-1)
  for (long lx = 0; lx <= s; ++lx)
    for (std::int64_t ix = 0; ix < (std::int64_t(1) << lx); ++ix)
      for (std::int64_t iy = 0; iy < (std::int64_t(1) << (s - lx)); ++iy)
        CHECK(count_in_rect(P, DyadicRect(DyadicInterval(lx, ix),
                                          DyadicInterval(s - lx, iy))) == 1);
  // below the pigeonhole scale: at most one point
  for (long lx = 0; lx <= s + 2; ++lx)
    for (std::int64_t ix = 0; ix < (std::int64_t(1) << lx); ++ix)
      for (std::int64_t iy = 0; iy < (std::int64_t(1) << (s + 2 - lx)); ++iy)
        CHECK(count_in_rect(P, DyadicRect(DyadicInterval(lx, ix),
                                          DyadicInterval(s + 2 - lx, iy))) <= 1);
}

TEST_CASE("count_in_rect vs direct scan") {
  auto P = construct_p(2);
  for (long lx = 0; lx <= 6; ++lx)
    for (long ly = 0; ly <= 6 - lx; ++ly)
      for (std::int64_t ix = 0; ix < (std::int64_t(1) << lx); ix += 3)
        for (std::int64_t iy = 0; iy < (std::int64_t(1) << ly); iy += 2) {
          DyadicRect R(DyadicInterval(lx, ix), DyadicInterval(ly, iy));
          std::int64_t direct = 0;
          for (std::int64_t r = 0; r < P.size(); ++r)
            if (R.contains(P.point(r))) ++direct;
          CHECK(count_in_rect(P, R) == direct);
        }
}

TEST_CASE("standard rectangles") {
  auto P0 = construct_p(0);
  CHECK(enumerate_standard_rectangles(P0).size() == 6);
  auto P = construct_p(1);
  auto E = enumerate_standard_rectangles(P);
  CHECK(std::int64_t(E.size()) == 5 * P.size());
  std::set<std::string> distinct;
  for (const auto& S : E) {
    CHECK(S.rect.area() == LogDyadic{-2 * P.m - 2});
    CHECK(S.rect.in_unit());
    CHECK(count_in_rect(P, S.rect) == 1);
    CHECK(S.rect.contains(P.point(S.anchor)));
    distinct.insert(S.rect.str());
  }
  CHECK(distinct.size() == E.size());
}

TEST_CASE("corrupted family is detected") {
  auto P = construct_p(2);
  P.col[3] = P.col[7];  // duplicate a column
  auto rep = verify_separation(P);
  CHECK(!rep.violations.empty());
}
