#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>

#include "dyadic/error.hpp"
#include "dyadic/interval.hpp"
#include "dyadic/point.hpp"
#include "dyadic/rect.hpp"

namespace dyadic {

/// Level of the smallest dyadic interval in [0,1) containing both x and y.
inline long common_level(const DyadicCoord& x, const DyadicCoord& y) {
  require(!(x == y), errc::equal_points, "delta of equal coordinates");
  int e = std::max(x.exp, y.exp);
  std::uint64_t a = std::uint64_t(x.num) << (e - x.exp);
  std::uint64_t b = std::uint64_t(y.num) << (e - y.exp);
  return e - std::bit_width(a ^ b);
}

/// |Q| for the smallest dyadic interval Q in [0,1) containing x and y.
inline LogDyadic delta(const DyadicCoord& x, const DyadicCoord& y) {
  return {-common_level(x, y)};
}

inline DyadicInterval min_enclosing_interval(const DyadicCoord& x, const DyadicCoord& y) {
  long lv = common_level(x, y);
  return interval_containing(x, lv);
}

/// delta(x, K) = inf_{y in K} delta(x, y); returns |K| when x lies in K
/// (documented convention, the construction only uses x outside K).
inline LogDyadic delta_to_interval(const DyadicCoord& x, const DyadicInterval& K) {
  require(K.in_unit(), errc::out_of_universe, "delta_to_interval needs a unit-universe interval");
  if (interval_contains(K, x)) return K.length();
  // The smallest dyadic interval containing x and K's left endpoint cannot sit
  // inside K (it holds x), so it contains all of K.
  long e = std::max<long>(x.exp, K.level);
  std::uint64_t a = std::uint64_t(x.num) << (e - x.exp);
  std::uint64_t b = std::uint64_t(K.index) << (e - K.level);
  return {long(std::bit_width(a ^ b)) - e};
}

/// dist_H(p,q)^2: the area of the smallest dyadic rectangle containing p and q.
inline LogDyadic dist_h_sq(const DyadicPoint& p, const DyadicPoint& q) {
  require(p.dim() == q.dim(), errc::bad_input, "dimension mismatch");
  long e = 0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    require(!(p[i] == q[i]), errc::shared_coordinate, "points share coordinate " + std::to_string(i));
    e -= common_level(p[i], q[i]);
  }
  return {e};
}

inline DyadicRect min_enclosing_rect(const DyadicPoint& p, const DyadicPoint& q) {
  require(p.dim() == q.dim(), errc::bad_input, "dimension mismatch");
  std::vector<DyadicInterval> sides;
  sides.reserve(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) {
    require(!(p[i] == q[i]), errc::shared_coordinate, "points share coordinate " + std::to_string(i));
    sides.push_back(min_enclosing_interval(p[i], q[i]));
  }
  return DyadicRect(std::move(sides));
}

/// Area of the smallest dyadic rectangle containing both rectangles.
/// Requires coordinatewise disjoint projections.
inline LogDyadic dist_h_sq_rects(const DyadicRect& r1, const DyadicRect& r2) {
  require(r1.dim() == r2.dim(), errc::bad_input, "dimension mismatch");
  long e = 0;
  for (std::size_t i = 0; i < r1.dim(); ++i) {
    require(r1.side(i).disjoint(r2.side(i)), errc::overlapping_projections,
            "projections overlap in coordinate " + std::to_string(i));
    e -= common_ancestor(r1.side(i), r2.side(i)).level;
  }
  return {e};
}

/// Area of the smallest dyadic rectangle containing the point p and the
/// rectangle r (coordinatewise: the side itself when it holds p's coordinate).
inline LogDyadic dist_sq_point_rect(const DyadicPoint& p, const DyadicRect& r) {
  long e = 0;
  for (std::size_t i = 0; i < p.dim(); ++i) e += delta_to_interval(p[i], r.side(i)).e;
  return {e};
}

/// I_(k): the generation-k descendant J of I with x outside J and x inside
/// the parent of J. Equivalently the largest dyadic I' with
/// delta(x, I') = 2^(1-k)|I|.
inline DyadicInterval offspring(const DyadicInterval& I, const DyadicCoord& x, long k) {
  require(k >= 1, errc::bad_input, "offspring generation must be >= 1");
  require(interval_contains(I, x), errc::point_not_in_interval, "offspring: x not in I");
  return DyadicInterval(I.level + k, interval_index_of(x, I.level + k) ^ 1);
}

/// Dil_j: the dyadic rectangle of dimensions 2^j|I| x 2^-j|J| containing p.
inline DyadicRect dil(const DyadicRect& R, const DyadicPoint& p, long j) {
  require(R.dim() == 2 && p.dim() == 2, errc::bad_input, "dil is two-dimensional");
  require(R.contains(p), errc::point_not_in_interval, "dil: p not in R");
  long lx = R.side(0).level - j;
  long ly = R.side(1).level + j;
  require(lx >= 0 && ly >= 0, errc::universe_exceeded, "dilated shape leaves [0,1)^2");
  return DyadicRect(interval_containing(p[0], lx), interval_containing(p[1], ly));
}

namespace detail {
inline void check_proper_overlap(const DyadicRect& r1, const DyadicRect& r2) {
  require(r1.dim() == 2 && r2.dim() == 2, errc::bad_input, "two-dimensional rectangles expected");
  require(r1.intersects(r2) && !r1.contains(r2) && !r2.contains(r1), errc::nested_or_disjoint,
          "rectangles must properly overlap");
}
}  // namespace detail

/// r2 intersects r1 horizontally when pi_2(r2) is strictly inside pi_2(r1).
inline bool intersects_horizontally(const DyadicRect& r1, const DyadicRect& r2) {
  detail::check_proper_overlap(r1, r2);
  return r1.side(1).contains(r2.side(1)) && r1.side(1) != r2.side(1);
}

/// r2 intersects r1 vertically when pi_1(r2) is strictly inside pi_1(r1).
inline bool intersects_vertically(const DyadicRect& r1, const DyadicRect& r2) {
  detail::check_proper_overlap(r1, r2);
  return r1.side(0).contains(r2.side(0)) && r1.side(0) != r2.side(0);
}

}  // namespace dyadic
