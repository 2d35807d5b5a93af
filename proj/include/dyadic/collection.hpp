#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "dyadic/maximal.hpp"
#include "dyadic/rect.hpp"

namespace dyadic {

/// Axis-parallel box with rational corners, half-open per axis. Arrangement
/// faces of dyadic rectangles have dyadic corners but need not be dyadic
/// intervals themselves, so certificates speak in boxes.
struct Box {
  std::vector<Rat> lo, hi;

  std::size_t dim() const { return lo.size(); }

  Rat volume() const {
    Rat v = 1;
    for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
    return v;
  }

  bool inside(const DyadicRect& R) const {
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (lo[i] < R.side(i).lo() || hi[i] > R.side(i).hi()) return false;
    return true;
  }
};

/// Finite weighted family of dyadic rectangles (ambient mode allowed);
/// weight defaults to 1 on members.
struct RectCollection {
  std::vector<DyadicRect> rects;
  std::map<DyadicRect, Rat> weights;

  std::size_t size() const { return rects.size(); }

  Rat weight(const DyadicRect& R) const {
    auto it = weights.find(R);
    return it == weights.end() ? Rat(1) : it->second;
  }
};

inline RectCollection make_collection(std::vector<DyadicRect> rects) {
  std::sort(rects.begin(), rects.end());
  rects.erase(std::unique(rects.begin(), rects.end()), rects.end());
  RectCollection S;
  S.rects = std::move(rects);
  return S;
}

namespace detail {

/// Sorted distinct breakpoints per axis over a rect family.
inline std::vector<std::vector<Rat>> breakpoints(const std::vector<DyadicRect>& rects,
                                                 std::size_t d) {
  std::vector<std::vector<Rat>> bp(d);
  for (const auto& R : rects) {
    require(R.dim() == d, errc::bad_input, "dimension mismatch in rect family");
    for (std::size_t i = 0; i < d; ++i) {
      bp[i].push_back(R.side(i).lo());
      bp[i].push_back(R.side(i).hi());
    }
  }
  for (auto& v : bp) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return bp;
}

/// Visit every cell of the compressed grid: f(box, cell-multi-index).
template <typename F>
inline void for_each_cell(const std::vector<std::vector<Rat>>& bp, F&& f) {
  std::size_t d = bp.size();
  std::vector<std::size_t> ix(d, 0);
  for (std::size_t i = 0; i < d; ++i)
    if (bp[i].size() < 2) return;
  for (;;) {
    Box cell;
    for (std::size_t i = 0; i < d; ++i) {
      cell.lo.push_back(bp[i][ix[i]]);
      cell.hi.push_back(bp[i][ix[i] + 1]);
    }
    f(cell, ix);
    std::size_t i = 0;
    while (i < d && ++ix[i] == bp[i].size() - 1) ix[i++] = 0;
    if (i == d) return;
  }
}

}  // namespace detail

/// Exact area/volume of a union of dyadic rectangles (any fixed dimension),
/// by coordinate compression.
inline Rat union_volume(const std::vector<DyadicRect>& rects) {
  if (rects.empty()) return Rat(0);
  auto bp = detail::breakpoints(rects, rects.front().dim());
  Rat total = 0;
  detail::for_each_cell(bp, [&](const Box& cell, const std::vector<std::size_t>&) {
    for (const auto& R : rects)
      if (cell.inside(R)) {
        total += cell.volume();
        return;
      }
  });
  return total;
}

/// Whether R is covered by the union of the given family.
inline bool contained_in_union(const DyadicRect& R, const std::vector<DyadicRect>& cover) {
  std::vector<DyadicRect> all = cover;
  all.push_back(R);
  auto bp = detail::breakpoints(all, R.dim());
  bool ok = true;
  detail::for_each_cell(bp, [&](const Box& cell, const std::vector<std::size_t>&) {
    if (!ok || !cell.inside(R)) return;
    for (const auto& C : cover)
      if (cell.inside(C)) return;
    ok = false;
  });
  return ok;
}

/// Carleson ratio of S against the open set Omega = union of the given
/// rectangles: sum of alpha_R |R| over members contained in Omega, divided
/// by |Omega|.
inline Rat carleson_sum(const RectCollection& S, const std::vector<DyadicRect>& omega) {
  Rat vol = union_volume(omega);
  require(vol > 0, errc::bad_input, "carleson_sum needs a nonempty union");
  Rat num = 0;
  for (const auto& R : S.rects)
    if (contained_in_union(R, omega)) num += S.weight(R) * R.area().to_rat();
  return num / vol;
}

/// |R intersect [0,1)^d| for a possibly ambient rectangle, exact.
inline Rat unit_part(const DyadicRect& R) {
  Rat v = 1;
  for (std::size_t i = 0; i < R.dim(); ++i) {
    const DyadicInterval& I = R.side(i);
    if (I.level >= 0)
      v *= I.in_unit() ? I.length().to_rat() : Rat(0);
    else
      v *= I.index == 0 ? Rat(1) : Rat(0);
  }
  return v;
}

/// Eccentricity classes: R lands in S_j when |R cap [0,1)^2| sits in
/// (2^{-j-1}|R|, 2^{-j}|R|], with j = 0 housing everything of ratio > 1/2
/// (in particular all members inside the unit square). Members disjoint from
/// the unit square are dropped.
inline std::map<long, RectCollection> split_by_eccentricity(const RectCollection& S) {
  std::map<long, RectCollection> out;
  for (const auto& R : S.rects) {
    Rat bar = unit_part(R);
    if (bar == 0) continue;
    Rat ratio = bar / R.area().to_rat();
    long j = 0;
    while (ratio <= pow2_rat(-j - 1)) ++j;
    out[j].rects.push_back(R);
    auto it = S.weights.find(R);
    if (it != S.weights.end()) out[j].weights.insert(*it);
  }
  return out;
}

}  // namespace dyadic
