#pragma once

#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include "dyadic/geometry.hpp"

namespace dyadic {

/// The separated point set P: 2^(2m+1) dyadic squares of side 2^(-2m-1),
/// one per grid row and column (a permutation matrix), with pairwise
/// dist_H^2 >= 2^(-2m). Points are the square centers.
struct PointSetP {
  long m = 0;
  long level = 1;                       // squares live at this level (2m+1)
  std::vector<std::int64_t> col;        // col[row] = x-index of the square in that row
  std::vector<std::int64_t> row_of;     // inverse permutation

  std::int64_t size() const { return std::int64_t(col.size()); }

  DyadicRect square(std::int64_t row) const {
    return DyadicRect(DyadicInterval(level, col[row]), DyadicInterval(level, row));
  }

  DyadicPoint point(std::int64_t row) const {
    return DyadicPoint(DyadicCoord(2 * col[row] + 1, int(level) + 1),
                       DyadicCoord(2 * row + 1, int(level) + 1));
  }
};

/// Theorem-style induction: scale the (m-1)-family into each quadrant and
/// pick one first-generation child per placed square. The free diagonal
/// (upper-left, lower-right quadrants) takes the lower-left child; the other
/// diagonal is then forced to the child untouched by the projections of its
/// two same-row/same-column partners, which is always the upper-right one.
inline PointSetP construct_p(long m, std::int64_t cap = std::int64_t(1) << 24) {
  require(m >= 0, errc::bad_input, "m must be non-negative");
  require((std::int64_t(1) << (2 * m + 1)) <= cap, errc::resource_cap,
          "2^(2m+1) squares exceed the configured cap");
  std::vector<std::int64_t> col = {0, 1};
  for (long step = 1; step <= m; ++step) {
    std::int64_t g = std::int64_t(1) << (2 * step - 1);  // quadrant sub-grid size
    std::vector<std::int64_t> next(4 * g);
    for (int qx = 0; qx < 2; ++qx)
      for (int qy = 0; qy < 2; ++qy) {
        std::int64_t off = (qx == qy) ? 1 : 0;
        for (std::int64_t b = 0; b < g; ++b) {
          std::int64_t r = 2 * (qy * g + b) + off;
          next[r] = 2 * (qx * g + col[b]) + off;
        }
      }
    col = std::move(next);
  }
  PointSetP P;
  P.m = m;
  P.level = 2 * m + 1;
  P.row_of.resize(col.size());
  for (std::int64_t r = 0; r < std::int64_t(col.size()); ++r) P.row_of[col[r]] = r;
  P.col = std::move(col);
  return P;
}

struct SeparationReport {
  LogDyadic min_dist_sq{0};
  std::vector<std::pair<std::int64_t, std::int64_t>> violations;  // dist^2 < 2^(-2m)
};

/// Exhaustive pairwise check of dist_H^2 over the squares.
inline SeparationReport verify_separation(const PointSetP& P) {
  SeparationReport rep;
  long L = P.level;
  long best = 1;
  std::int64_t n = P.size();
  for (std::int64_t i = 0; i < n; ++i) {
    std::uint64_t xi = std::uint64_t(P.col[i]), yi = std::uint64_t(i);
    for (std::int64_t j = i + 1; j < n; ++j) {
      long e = long(std::bit_width(xi ^ std::uint64_t(P.col[j]))) +
               long(std::bit_width(yi ^ std::uint64_t(j))) - 2 * L;
      if (e < -2 * P.m) rep.violations.push_back({i, j});
      if (e < best) best = e;
    }
  }
  rep.min_dist_sq = LogDyadic{n > 1 ? best : 0};
  return rep;
}

/// Exact number of P-points inside a dyadic rectangle.
inline std::int64_t count_in_rect(const PointSetP& P, const DyadicRect& R) {
  require(R.dim() == 2 && R.in_unit(), errc::out_of_universe, "count_in_rect needs R in [0,1)^2");
  const DyadicInterval &I = R.side(0), &J = R.side(1);
  std::int64_t r0, r1;  // candidate row range at the square level
  if (J.level <= P.level) {
    r0 = J.index << (P.level - J.level);
    r1 = (J.index + 1) << (P.level - J.level);
  } else {
    r0 = J.index >> (J.level - P.level);
    r1 = r0 + 1;
  }
  std::int64_t count = 0;
  for (std::int64_t r = r0; r < r1; ++r) {
    auto p = P.point(r);
    if (interval_contains(I, p[0]) && interval_contains(J, p[1])) ++count;
  }
  return count;
}

/// Dyadic rectangle of area 2^(-2m-2) holding exactly one P-point.
struct StandardRectangle {
  DyadicRect rect;
  std::int64_t anchor = 0;  // row index of p_R in P

  friend bool operator==(const StandardRectangle& a, const StandardRectangle& b) {
    return a.rect == b.rect && a.anchor == b.anchor;
  }
};

/// All standard rectangles, grouped by anchor (2m+3 shapes per point).
inline std::vector<StandardRectangle> enumerate_standard_rectangles(const PointSetP& P) {
  std::vector<StandardRectangle> out;
  long s = 2 * P.m + 2;
  out.reserve(std::size_t(P.size()) * std::size_t(s + 1));
  for (std::int64_t r = 0; r < P.size(); ++r) {
    auto p = P.point(r);
    for (long lx = 0; lx <= s; ++lx)
      out.push_back({DyadicRect(interval_containing(p[0], lx), interval_containing(p[1], s - lx)),
                     r});
  }
  return out;
}

}  // namespace dyadic
