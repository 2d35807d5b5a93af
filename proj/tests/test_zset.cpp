#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <set>

#include "doctest.h"
#include "dyadic/zset.hpp"

using namespace dyadic;

namespace {

// brute-force version of maximal_foreign_rectangles
std::vector<DyadicRect> oracle_maximal(const PointSetP& P, const StandardRectangle& S, long ell,
                                       int axis) {
  auto p = P.point(S.anchor);
  DyadicInterval Il = offspring(S.rect.side(std::size_t(axis)), p[std::size_t(axis)], ell);
  std::vector<DyadicRect> all;
  for (const auto& T : enumerate_standard_rectangles(P)) {
    if (T.anchor == S.anchor) continue;
    if (!T.rect.intersects(S.rect) || S.rect.contains(T.rect) || T.rect.contains(S.rect)) continue;
    bool dir = axis == 0 ? intersects_vertically(S.rect, T.rect)
                         : intersects_horizontally(S.rect, T.rect);
    if (!dir) continue;
    if (!Il.contains(T.rect.side(std::size_t(axis)))) continue;
    all.push_back(T.rect);
  }
  std::vector<DyadicRect> maximal;
  for (const auto& a : all) {
    bool top = true;
    for (const auto& b : all)
      if (a != b && b.side(std::size_t(axis)).contains(a.side(std::size_t(axis)))) top = false;
    if (top) maximal.push_back(a);
  }
  std::sort(maximal.begin(), maximal.end());
  return maximal;
}

}  // namespace

TEST_CASE("maximal foreign rectangles match brute force") {
  auto P = construct_p(3);
  for (long ell : {1L, 2L})
    for (int axis : {0, 1}) {
      for (const auto& S : enumerate_standard_rectangles(P)) {
        auto fast = maximal_foreign_rectangles(P, S, ell, axis);
        std::vector<DyadicRect> got;
        for (const auto& T : fast) got.push_back(T.rect);
        std::sort(got.begin(), got.end());
        CHECK(got == oracle_maximal(P, S, ell, axis));
      }
    }
}

TEST_CASE("widest maximal rectangle is unique with the stated shape") {
  for (long m = 2; m <= 3; ++m) {
    auto P = construct_p(m);
    for (long ell : {1L, 2L})
      for (int axis : {0, 1}) {
        auto rep = verify_widest_unique(P, ell, axis);
        CHECK(rep.checked > 0);
        CHECK(rep.violations == 0);
      }
  }
}

TEST_CASE("maximal widths halve") {
  for (long m = 2; m <= 3; ++m) {
    auto P = construct_p(m);
    for (long ell : {1L, 2L})
      for (int axis : {0, 1}) {
        auto rep = verify_exponential_decay(P, ell, axis);
        CHECK(rep.checked > 0);
        CHECK(rep.violations == 0);
      }
  }
}

TEST_CASE("one foreign point in the localization rectangle") {
  for (long m = 2; m <= 3; ++m) {
    auto P = construct_p(m);
    for (long ell : {1L, 2L}) {
      auto rep = verify_localize_ps(P, ell);
      CHECK(rep.checked > 0);
      CHECK(rep.violations == 0);
    }
  }
}

TEST_CASE("r_star avoids every foreign standard rectangle") {
  auto P = construct_p(3);
  long m = P.m, s = 2 * m + 2, k = 1, ell = 1;
  // map standard rectangle -> anchor
  std::map<std::string, std::int64_t> anchor_of;
  for (const auto& T : enumerate_standard_rectangles(P)) anchor_of[T.rect.str()] = T.anchor;
  long G = 2 * m + 4;
  for (const auto& S : enumerate_standard_rectangles(P)) {
    auto p = P.point(S.anchor);
    DyadicInterval Il = offspring(S.rect.side(0), p[0], ell);
    DyadicInterval Jk = offspring(S.rect.side(1), p[1], k);
    auto R = construct_r_star(P, S, k, ell);
    CHECK(Il.contains(R.side(0)));
    CHECK(Jk.contains(R.side(1)));
    // rasterize R* at level G and test every cell against foreign members
    for (std::int64_t cx = R.side(0).index << (G - R.side(0).level);
         cx < (R.side(0).index + 1) << (G - R.side(0).level); ++cx)
      for (std::int64_t cy = R.side(1).index << (G - R.side(1).level);
           cy < (R.side(1).index + 1) << (G - R.side(1).level); ++cy) {
        DyadicCoord x(2 * cx + 1, int(G) + 1), y(2 * cy + 1, int(G) + 1);
        for (long lx = 0; lx <= s; ++lx) {
          DyadicRect cand(interval_containing(x, lx), interval_containing(y, s - lx));
          auto it = anchor_of.find(cand.str());
          if (it != anchor_of.end()) CHECK(it->second == S.anchor);
        }
      }
  }
}

TEST_CASE("gap finding") {
  DyadicInterval host(1, 0);  // [0,1/2)
  // blocking [0,1/4) and [3/8,1/2) leaves [1/4,3/8); largest dyadic piece is [1/4,5/16)...
  auto g = detail::dyadic_gap(host, {DyadicInterval(2, 0), DyadicInterval(3, 3)}, 3);
  CHECK(g == DyadicInterval(3, 2));  // [1/4,3/8)
  // leftmost free component wins even when a larger one exists further right
  auto g2 = detail::dyadic_gap(host, {DyadicInterval(4, 1)}, 4);
  CHECK(g2 == DyadicInterval(4, 0));
  // fully blocked host is an internal-consistency failure
  CHECK_THROWS_AS(detail::dyadic_gap(host, {DyadicInterval(2, 0), DyadicInterval(2, 1)}, 3),
                  error);
}

TEST_CASE("construct_z: counts and properties") {
  auto P = construct_p(3);
  auto Z = construct_z(P, 1);
  CHECK(std::int64_t(Z.witnesses.size()) == 9 * 128);
  for (const auto& w : Z.witnesses) {
    auto p = P.point(w.anchor);
    DyadicInterval Il = offspring(w.source.rect.side(0), p[0], 1);
    DyadicInterval Jk = offspring(w.source.rect.side(1), p[1], 1);
    CHECK(Il.contains(w.r_star.side(0)));
    CHECK(Jk.contains(w.r_star.side(1)));
    CHECK(w.r_star.contains(w.z));
    CHECK(w.t_rect.contains(w.z));
    CHECK(w.t_rect.contains(p));
  }
  auto rep = verify_z_properties(P, Z);
  CHECK(rep.ok());
  CHECK(rep.z4_constant > 0);
  CHECK(rep.z5_constant > 0);
  auto trz = verify_trz(P, Z);
  CHECK(trz.ok(std::int64_t(Z.witnesses.size())));
}

TEST_CASE("construct_z at k=2") {
  auto P = construct_p(4);
  auto Z = construct_z(P, 2);
  CHECK(std::int64_t(Z.witnesses.size()) == 11 * 512);
  auto rep = verify_z_properties(P, Z);
  CHECK(rep.ok());
  CHECK(verify_trz(P, Z).ok(std::int64_t(Z.witnesses.size())));
}

TEST_CASE("construct_z preconditions") {
  auto P = construct_p(2);
  CHECK_THROWS_AS(construct_z(P, 1), error);  // m >= k + 2 fails
  auto P3 = construct_p(3);
  CHECK_THROWS_AS(construct_z(P3, 0), error);
}
