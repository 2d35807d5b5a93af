#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "dyadic/geometry.hpp"

using namespace dyadic;

namespace {

DyadicCoord coord(std::int64_t n, int e) { return DyadicCoord(n, e); }

// Oracle: scan all dyadic intervals of level <= max_level for the smallest
// one containing both coordinates.
LogDyadic delta_oracle(const DyadicCoord& x, const DyadicCoord& y, int max_level = 8) {
  long best = -1;
  for (long lv = 0; lv <= max_level; ++lv) {
    if (interval_index_of(x, lv) == interval_index_of(y, lv)) best = lv;
  }
  REQUIRE(best >= 0);
  return {-best};
}

DyadicCoord random_coord(std::mt19937_64& rng, int max_exp) {
  std::uniform_int_distribution<int> de(0, max_exp);
  int e = de(rng);
  std::uniform_int_distribution<std::int64_t> dn(0, (std::int64_t(1) << e) - 1);
  return DyadicCoord(dn(rng), e);
}

}  // namespace

TEST_CASE("delta examples") {
  CHECK(delta(coord(0, 0), coord(3, 3)) == LogDyadic{-1});   // (0, 3/8) -> 1/2
  CHECK(delta(coord(1, 2), coord(3, 2)) == LogDyadic{0});    // (1/4, 3/4) -> 1
  // (5/16, 3/8): the level-3 cells split at 3/8, so [1/4,1/2) is forced
  CHECK(delta(coord(5, 4), coord(3, 3)) == LogDyadic{-2});
  CHECK(delta(coord(5, 4), coord(3, 3)) == delta_oracle(coord(5, 4), coord(3, 3)));
  CHECK_THROWS_AS(delta(coord(1, 2), coord(1, 2)), error);
}

TEST_CASE("delta properties") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 2000; ++it) {
    auto x = random_coord(rng, 8);
    auto y = random_coord(rng, 8);
    if (x == y) continue;
    auto d = delta(x, y);
    CHECK(d == delta(y, x));
    CHECK(d == delta_oracle(x, y, 10));
    // delta dominates the linear distance
    Rat lin = x.to_rat() - y.to_rat();
    if (lin < 0) lin = -lin;
    CHECK(d.to_rat() >= lin);
  }
}

TEST_CASE("delta_to_interval examples") {
  CHECK(delta_to_interval(coord(0, 0), DyadicInterval(1, 1)) == LogDyadic{0});   // (0,[1/2,1)) -> 1
  CHECK(delta_to_interval(coord(0, 0), DyadicInterval(2, 1)) == LogDyadic{-1});  // (0,[1/4,1/2)) -> 1/2
  CHECK(delta_to_interval(coord(3, 3), DyadicInterval(2, 0)) == LogDyadic{-1});  // (3/8,[0,1/4)) -> 1/2
  // convention: x inside K returns |K|
  CHECK(delta_to_interval(coord(1, 3), DyadicInterval(2, 0)) == LogDyadic{-2});
}

TEST_CASE("delta_to_interval minimizes over the interval") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 300; ++it) {
    auto x = random_coord(rng, 6);
    std::uniform_int_distribution<long> dl(0, 5);
    long lv = dl(rng);
    std::uniform_int_distribution<std::int64_t> di(0, (std::int64_t(1) << lv) - 1);
    DyadicInterval K(lv, di(rng));
    if (interval_contains(K, x)) continue;
    // oracle: minimize delta over the level-10 grid points of K
    long best = 100;
    for (std::int64_t j = K.index << (10 - lv); j < (K.index + 1) << (10 - lv); ++j) {
      DyadicCoord y(j, 10);
      if (y == x) continue;
      best = std::min(best, -delta(x, y).e);
    }
    CHECK(delta_to_interval(x, K) == LogDyadic{-best});
  }
}

TEST_CASE("dist_h_sq examples") {
  DyadicPoint p(coord(1, 2), coord(1, 2)), q(coord(3, 2), coord(3, 2));
  CHECK(dist_h_sq(p, q) == LogDyadic{0});  // opposite quadrants -> exactly 1
  CHECK(dist_h_sq(DyadicPoint(coord(0, 0), coord(0, 0)), DyadicPoint(coord(3, 3), coord(3, 3))) ==
        LogDyadic{-2});
  // ((1/8,1/2),(3/16,9/16)): both coordinates force a length-1/8 interval
  CHECK(dist_h_sq(DyadicPoint(coord(1, 3), coord(1, 1)), DyadicPoint(coord(3, 4), coord(9, 4))) ==
        LogDyadic{-6});
  CHECK_THROWS_AS(dist_h_sq(DyadicPoint(coord(1, 2), coord(1, 2)),
                            DyadicPoint(coord(1, 2), coord(3, 2))),
                  error);
}

TEST_CASE("dist_h_sq_rects examples") {
  DyadicRect a(DyadicInterval(1, 0), DyadicInterval(1, 0));
  DyadicRect b(DyadicInterval(1, 1), DyadicInterval(1, 1));
  CHECK(dist_h_sq_rects(a, b) == LogDyadic{0});
  CHECK(dist_h_sq_rects(DyadicRect(DyadicInterval(2, 0), DyadicInterval(2, 0)),
                        DyadicRect(DyadicInterval(2, 1), DyadicInterval(2, 1))) == LogDyadic{-2});
  // [0,1/8)x[1/2,5/8) vs [1/4,3/8)x[3/4,7/8): hull is [0,1/2)x[1/2,1)
  CHECK(dist_h_sq_rects(DyadicRect(DyadicInterval(3, 0), DyadicInterval(3, 4)),
                        DyadicRect(DyadicInterval(3, 2), DyadicInterval(3, 6))) == LogDyadic{-2});
  CHECK_THROWS_AS(dist_h_sq_rects(a, a), error);
}

TEST_CASE("dist_h_sq_rects agrees with representative points") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 500; ++it) {
    std::uniform_int_distribution<long> dl(1, 5);
    long l1 = dl(rng), l2 = dl(rng), l3 = dl(rng), l4 = dl(rng);
    auto ri = [&](long lv) {
      std::uniform_int_distribution<std::int64_t> di(0, (std::int64_t(1) << lv) - 1);
      return DyadicInterval(lv, di(rng));
    };
    DyadicRect r1(ri(l1), ri(l2)), r2(ri(l3), ri(l4));
    if (!r1.side(0).disjoint(r2.side(0)) || !r1.side(1).disjoint(r2.side(1))) continue;
    // random representative points inside each rectangle at level 9
    auto rep = [&](const DyadicInterval& I) {
      std::uniform_int_distribution<std::int64_t> di(0, (std::int64_t(1) << (9 - I.level)) - 1);
      return DyadicCoord((I.index << (9 - I.level)) + di(rng), 9);
    };
    DyadicPoint p(rep(r1.side(0)), rep(r1.side(1)));
    DyadicPoint q(rep(r2.side(0)), rep(r2.side(1)));
    CHECK(dist_h_sq_rects(r1, r2) == dist_h_sq(p, q));
  }
}

TEST_CASE("min_enclosing_rect examples and minimality") {
  DyadicPoint a(coord(0, 0), coord(0, 0)), b(coord(3, 3), coord(3, 3));
  CHECK(min_enclosing_rect(a, b) == DyadicRect(DyadicInterval(1, 0), DyadicInterval(1, 0)));
  DyadicPoint c(coord(1, 2), coord(1, 2)), d(coord(3, 2), coord(3, 2));
  CHECK(min_enclosing_rect(c, d) == unit_square());
  DyadicPoint e(coord(5, 4), coord(1, 3)), f(coord(3, 3), coord(1, 2));
  CHECK(min_enclosing_rect(e, f) == DyadicRect(DyadicInterval(2, 1), DyadicInterval(1, 0)));

  std::mt19937_64 rng(5);
  for (int it = 0; it < 1000; ++it) {
    DyadicPoint p(random_coord(rng, 7), random_coord(rng, 7));
    DyadicPoint q(random_coord(rng, 7), random_coord(rng, 7));
    if (p[0] == q[0] || p[1] == q[1]) continue;
    auto R = min_enclosing_rect(p, q);
    CHECK(R.contains(p));
    CHECK(R.contains(q));
    CHECK(R.area() == dist_h_sq(p, q));
    // every dyadic rectangle containing both also contains R
    for (long lx = 0; lx <= 7; ++lx)
      for (long ly = 0; ly <= 7; ++ly) {
        DyadicRect S(interval_containing(p[0], lx), interval_containing(p[1], ly));
        if (S.contains(q)) CHECK(S.contains(R));
      }
  }
}

TEST_CASE("offspring examples") {
  auto unit = DyadicInterval::unit();
  CHECK(offspring(unit, coord(1, 2), 1) == DyadicInterval(1, 1));  // [1/2,1)
  CHECK(offspring(unit, coord(1, 2), 2) == DyadicInterval(2, 0));  // [0,1/4)
  CHECK(offspring(DyadicInterval(1, 0), coord(0, 0), 3) == DyadicInterval(4, 1));  // [1/16,1/8)
  CHECK_THROWS_AS(offspring(DyadicInterval(1, 1), coord(0, 0), 1), error);
}

TEST_CASE("offspring characterization") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 500; ++it) {
    std::uniform_int_distribution<long> dl(0, 3);
    long lv = dl(rng);
    std::uniform_int_distribution<std::int64_t> di(0, (std::int64_t(1) << lv) - 1);
    DyadicInterval I(lv, di(rng));
    auto x = random_coord(rng, 8);
    if (!interval_contains(I, x)) continue;
    std::uniform_int_distribution<long> dk(1, 4);
    long k = dk(rng);
    auto J = offspring(I, x, k);
    CHECK(I.contains(J));
    CHECK(J.level == I.level + k);
    CHECK(!interval_contains(J, x));
    CHECK(interval_contains(J.parent(), x));
    // delta(x, I_(k)) = 2^(1-k)|I| exactly, and the sibling containing x fails
    CHECK(delta_to_interval(x, J) == LogDyadic{-I.level - k + 1});
    DyadicInterval sib(J.level, J.index ^ 1);
    CHECK(interval_contains(sib, x));
  }
}

TEST_CASE("parent and ancestor") {
  CHECK(DyadicInterval(2, 1).parent() == DyadicInterval(1, 0));
  CHECK(DyadicInterval(3, 3).ancestor(2) == DyadicInterval(1, 0));  // [3/8,1/2) -> [0,1/2)
  CHECK(DyadicInterval(3, 0).ancestor(3) == DyadicInterval::unit());
  CHECK_THROWS_AS(DyadicInterval(1, 0).ancestor(2), error);
}

TEST_CASE("dil examples") {
  DyadicRect R(DyadicInterval(1, 0), DyadicInterval(1, 0));
  DyadicPoint origin(coord(0, 0), coord(0, 0));
  CHECK(dil(R, origin, 1) == DyadicRect(DyadicInterval(0, 0), DyadicInterval(2, 0)));
  CHECK(dil(R, origin, -1) == DyadicRect(DyadicInterval(2, 0), DyadicInterval(0, 0)));
  DyadicRect S(DyadicInterval(2, 2), DyadicInterval(2, 1));
  DyadicPoint p(coord(5, 3), coord(3, 3));
  CHECK(dil(S, p, 1) == DyadicRect(DyadicInterval(1, 1), DyadicInterval(3, 3)));
  CHECK_THROWS_AS(dil(R, origin, 2), error);
}

TEST_CASE("intersection orientation") {
  DyadicRect r1(DyadicInterval(1, 0), DyadicInterval(0, 0));
  DyadicRect r2(DyadicInterval(0, 0), DyadicInterval(2, 0));
  CHECK(intersects_horizontally(r1, r2));
  CHECK(!intersects_vertically(r1, r2));
  DyadicRect r3(DyadicInterval(2, 0), DyadicInterval(0, 0));
  DyadicRect r4(DyadicInterval(0, 0), DyadicInterval(2, 2));
  CHECK(intersects_horizontally(r3, r4));
  DyadicRect nested(DyadicInterval(1, 0), DyadicInterval(1, 0));
  CHECK_THROWS_AS(intersects_horizontally(unit_square(), nested), error);
}

TEST_CASE("interval text encoding round-trips") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 500; ++it) {
    std::uniform_int_distribution<long> dl(-8, 20);
    long lv = dl(rng);
    std::uniform_int_distribution<std::int64_t> di(0, lv > 0 ? (std::int64_t(1) << lv) - 1 : 40);
    DyadicInterval I(lv, di(rng));
    CHECK(DyadicInterval::parse(I.str()) == I);
  }
  CHECK(DyadicInterval::parse("3:5") == DyadicInterval(3, 5));
  DyadicRect R(DyadicInterval(3, 5), DyadicInterval(0, 0));
  CHECK(DyadicRect::parse(R.str()) == R);
  CHECK(DyadicCoord::parse(coord(5, 4).str()) == coord(5, 4));
}
