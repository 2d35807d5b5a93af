#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dyadic/pointset.hpp"

namespace dyadic {

/// z = z_R together with everything that produced it.
struct ZWitness {
  StandardRectangle source;  // R = I x J
  DyadicRect r_star;         // E x F inside I_(ell) x J_(k)
  DyadicPoint z;
  std::int64_t anchor = 0;   // p(z), equal to source.anchor
  DyadicRect t_rect;         // parent(I_(ell)) x parent(J_(k))
};

struct ZSet {
  long m = 0, k = 1, ell = 1;
  std::vector<ZWitness> witnesses;
};

namespace detail {

inline std::int64_t range_lo(const DyadicInterval& I, long G) {
  return G >= I.level ? I.index << (G - I.level) : I.index >> (I.level - G);
}
inline std::int64_t range_hi(const DyadicInterval& I, long G) {
  return G >= I.level ? (I.index + 1) << (G - I.level) : (I.index >> (I.level - G)) + 1;
}

}  // namespace detail

/// Maximal elements of the collection of standard rectangles that intersect R
/// along the given axis (axis 0: "vertically", pi_1(T) inside I_(ell); axis 1:
/// "horizontally", pi_2(T) inside J_(ell)), ordered by non-increasing width
/// along that axis.
inline std::vector<StandardRectangle> maximal_foreign_rectangles(const PointSetP& P,
                                                                 const StandardRectangle& S,
                                                                 long ell, int axis) {
  require(ell >= 1 && (axis == 0 || axis == 1), errc::bad_input, "need ell >= 1, axis in {0,1}");
  long s = 2 * P.m + 2, L = P.level;
  const DyadicInterval& I = S.rect.side(axis);
  const DyadicInterval& J = S.rect.side(1 - axis);
  auto p = P.point(S.anchor);
  DyadicInterval Il = offspring(I, p[std::size_t(axis)], ell);

  struct Cand {
    std::int64_t lo, hi;  // range of the I-side at level s
    long lw;
    std::int64_t row;
  };
  std::vector<Cand> cands;
  for (long lw = std::max(Il.level, I.level + 1); lw <= s; ++lw) {
    long lh = s - lw;
    if (lh >= J.level) continue;  // the other side must strictly contain J
    DyadicInterval H = J.ancestor(J.level - lh);
    // points of P in Il x H, iterating the shorter side of the grid
    std::int64_t a0 = detail::range_lo(Il, L), a1 = detail::range_hi(Il, L);
    std::int64_t b0 = detail::range_lo(H, L), b1 = detail::range_hi(H, L);
    auto consider = [&](std::int64_t row) {
      auto q = P.point(row);
      if (!interval_contains(Il, q[std::size_t(axis)]) ||
          !interval_contains(H, q[std::size_t(1 - axis)]))
        return;
      DyadicInterval W = interval_containing(q[std::size_t(axis)], lw);
      cands.push_back({detail::range_lo(W, s), detail::range_hi(W, s), lw, row});
    };
    if (a1 - a0 <= b1 - b0) {
      for (std::int64_t c = a0; c < a1; ++c) consider(axis == 0 ? P.row_of[c] : c);
    } else {
      for (std::int64_t c = b0; c < b1; ++c) consider(axis == 0 ? c : P.row_of[c]);
    }
  }
  // maximal by inclusion of the I-side (dyadic: overlap implies nesting)
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    return a.lo != b.lo ? a.lo < b.lo : a.hi > b.hi;
  });
  std::vector<Cand> maximal;
  std::int64_t covered = -1;
  for (const auto& c : cands) {
    if (c.hi <= covered) continue;
    maximal.push_back(c);
    covered = c.hi;
  }
  std::sort(maximal.begin(), maximal.end(), [](const Cand& a, const Cand& b) {
    return a.lw != b.lw ? a.lw < b.lw : a.lo < b.lo;
  });
  std::vector<StandardRectangle> out;
  out.reserve(maximal.size());
  for (const auto& c : maximal) {
    auto q = P.point(c.row);
    DyadicInterval W = interval_containing(q[std::size_t(axis)], c.lw);
    DyadicInterval H = interval_containing(q[std::size_t(1 - axis)], s - c.lw);
    out.push_back({axis == 0 ? DyadicRect(W, H) : DyadicRect(H, W), c.row});
  }
  return out;
}

namespace detail {

/// Largest dyadic interval inside the leftmost free component of `host` after
/// removing the given blocked intervals.
inline DyadicInterval dyadic_gap(const DyadicInterval& host,
                                 const std::vector<DyadicInterval>& blocked, long grid) {
  long G = std::max(grid, host.level);
  for (const auto& b : blocked) G = std::max(G, b.level);
  std::int64_t lo = range_lo(host, G), hi = range_hi(host, G);
  std::vector<std::pair<std::int64_t, std::int64_t>> spans;
  for (const auto& b : blocked) spans.push_back({range_lo(b, G), range_hi(b, G)});
  std::sort(spans.begin(), spans.end());
  std::int64_t gap_lo = lo, gap_hi = hi;
  for (const auto& sp : spans) {
    if (sp.first > gap_lo) {
      gap_hi = sp.first;
      break;
    }
    gap_lo = std::max(gap_lo, sp.second);
  }
  require(gap_lo < gap_hi, errc::no_gap_found, "no free dyadic gap (internal inconsistency)");
  // largest aligned dyadic block inside [gap_lo, gap_hi), leftmost on ties
  for (long h = 62; h >= 0; --h) {
    if ((std::int64_t(1) << h) > gap_hi - gap_lo) continue;
    std::int64_t start = ((gap_lo + (std::int64_t(1) << h) - 1) >> h) << h;
    if (start + (std::int64_t(1) << h) <= gap_hi) return DyadicInterval(G - h, start >> h);
  }
  fail(errc::internal, "unreachable");
}

}  // namespace detail

/// R* = E x F inside I_(ell) x J_(k): a dyadic sub-rectangle avoiding every
/// standard rectangle with a foreign anchor.
inline DyadicRect construct_r_star(const PointSetP& P, const StandardRectangle& S, long k,
                                   long ell = 1) {
  require(k >= 1 && ell >= 1, errc::bad_input, "need k, ell >= 1");
  long s = 2 * P.m + 2;
  auto p = P.point(S.anchor);
  DyadicInterval Il = offspring(S.rect.side(0), p[0], ell);
  DyadicInterval Jk = offspring(S.rect.side(1), p[1], k);
  std::vector<DyadicInterval> blocked_x, blocked_y;
  for (const auto& T : maximal_foreign_rectangles(P, S, ell, 0)) blocked_x.push_back(T.rect.side(0));
  for (const auto& T : maximal_foreign_rectangles(P, S, k, 1)) blocked_y.push_back(T.rect.side(1));
  return DyadicRect(detail::dyadic_gap(Il, blocked_x, s), detail::dyadic_gap(Jk, blocked_y, s));
}

namespace detail {

inline std::uint64_t coord_key(const DyadicCoord& c) {
  return (std::uint64_t(std::uint32_t(c.exp)) << 56) | std::uint64_t(c.num);
}

}  // namespace detail

/// One witness per standard rectangle; z is the center of R*, nudged into
/// lower-left children until it shares no coordinate with any earlier point.
inline ZSet construct_z(const PointSetP& P, long k, long ell = 1) {
  require(k >= 1, errc::bad_input, "need k >= 1");
  require(P.m >= k + 2, errc::bad_input, "need m >= k + 2");
  ZSet Z;
  Z.m = P.m;
  Z.k = k;
  Z.ell = ell;
  std::unordered_set<std::uint64_t> used_x, used_y;
  for (std::int64_t r = 0; r < P.size(); ++r) {
    auto p = P.point(r);
    used_x.insert(detail::coord_key(p[0]));
    used_y.insert(detail::coord_key(p[1]));
  }
  for (const auto& S : enumerate_standard_rectangles(P)) {
    ZWitness w;
    w.source = S;
    w.anchor = S.anchor;
    w.r_star = construct_r_star(P, S, k, ell);
    DyadicRect cur = w.r_star;
    for (int tries = 0;; ++tries) {
      require(tries < 128, errc::coordinate_collision, "collision rule exhausted");
      DyadicCoord zx(2 * cur.side(0).index + 1, int(cur.side(0).level) + 1);
      DyadicCoord zy(2 * cur.side(1).index + 1, int(cur.side(1).level) + 1);
      if (!used_x.count(detail::coord_key(zx)) && !used_y.count(detail::coord_key(zy))) {
        w.z = DyadicPoint(zx, zy);
        used_x.insert(detail::coord_key(zx));
        used_y.insert(detail::coord_key(zy));
        break;
      }
      cur = DyadicRect(cur.side(0).child(0), cur.side(1).child(0));
    }
    auto p = P.point(S.anchor);
    w.t_rect = DyadicRect(offspring(S.rect.side(0), p[0], ell).parent(),
                          offspring(S.rect.side(1), p[1], k).parent());
    Z.witnesses.push_back(std::move(w));
  }
  return Z;
}

struct ZReport {
  std::int64_t count = 0;
  std::int64_t expected_count = 0;
  bool distinct = false;            // all z pairwise distinct
  bool coords_distinct = false;     // no shared coordinate across P union Z
  std::int64_t z2_violations = 0;   // foreign q with dist^2 < 2^(-2m-1), or anchor not closest
  std::int64_t z3_violations = 0;   // dist^2(p(z), z) != 2^(-2m-k-1)
  Rat z4_constant{0};               // max over standard R of #(R cap Z) / k
  Rat z5_constant{0};               // max over |R| >= 2^(-2m-1) of #(R cap Z)/(2^(2m) m k |R|)
  bool ok() const {
    return count == expected_count && distinct && coords_distinct && z2_violations == 0 &&
           z3_violations == 0;
  }
};

inline ZReport verify_z_properties(const PointSetP& P, const ZSet& Z) {
  ZReport rep;
  long m = Z.m, k = Z.k, s = 2 * m + 2, L = P.level;
  rep.count = std::int64_t(Z.witnesses.size());
  rep.expected_count = (2 * m + 3) * (std::int64_t(1) << (2 * m + 1));

  std::unordered_set<std::uint64_t> xs, ys;
  for (std::int64_t r = 0; r < P.size(); ++r) {
    auto p = P.point(r);
    xs.insert(detail::coord_key(p[0]));
    ys.insert(detail::coord_key(p[1]));
  }
  rep.coords_distinct = true;
  for (const auto& w : Z.witnesses) {
    if (!xs.insert(detail::coord_key(w.z[0])).second) rep.coords_distinct = false;
    if (!ys.insert(detail::coord_key(w.z[1])).second) rep.coords_distinct = false;
  }
  rep.distinct = rep.coords_distinct ||
                 [&] {
                   std::unordered_set<std::uint64_t> seen;
                   for (const auto& w : Z.witnesses)
                     if (!seen.insert(detail::coord_key(w.z[0]) * 0x9e3779b97f4a7c15ull ^
                                      detail::coord_key(w.z[1]))
                              .second)
                       return false;
                   return true;
                 }();

  for (const auto& w : Z.witnesses) {
    if (dist_h_sq(P.point(w.anchor), w.z) != LogDyadic{-2 * m - k - 1}) ++rep.z3_violations;
    std::int64_t close = 0;
    bool anchor_close = false;
    for (std::int64_t r = 0; r < P.size(); ++r) {
      if (dist_h_sq(P.point(r), w.z) < LogDyadic{-2 * m - 1}) {
        ++close;
        if (r == w.anchor) anchor_close = true;
      }
    }
    if (close != 1 || !anchor_close) ++rep.z2_violations;
  }

  // Z.4: count witnesses per standard rectangle via the shapes containing z
  std::unordered_set<std::uint64_t> std_rects;
  for (std::int64_t r = 0; r < P.size(); ++r) {
    auto p = P.point(r);
    for (long lx = 0; lx <= s; ++lx)
      std_rects.insert((std::uint64_t(lx) << 56) |
                       (std::uint64_t(interval_index_of(p[0], lx)) << 28) |
                       std::uint64_t(interval_index_of(p[1], s - lx)));
  }
  std::unordered_map<std::uint64_t, std::int64_t> per_std, per_big;
  for (const auto& w : Z.witnesses) {
    for (long lx = 0; lx <= s; ++lx) {
      std::uint64_t key = (std::uint64_t(lx) << 56) |
                          (std::uint64_t(interval_index_of(w.z[0], lx)) << 28) |
                          std::uint64_t(interval_index_of(w.z[1], s - lx));
      if (std_rects.count(key)) ++per_std[key];
    }
    for (long sum = 0; sum <= 2 * m + 1; ++sum)
      for (long lx = 0; lx <= sum; ++lx)
        ++per_big[(std::uint64_t(lx) << 58) | (std::uint64_t(sum - lx) << 52) |
                  (std::uint64_t(interval_index_of(w.z[0], lx)) << 26) |
                  std::uint64_t(interval_index_of(w.z[1], sum - lx))];
  }
  std::int64_t max_std = 0, max_big_scaled = 0;
  for (const auto& [key, c] : per_std) max_std = std::max(max_std, c);
  for (const auto& [key, c] : per_big) {
    long sum = long(key >> 58) + long((key >> 52) & 0x3f);
    max_big_scaled = std::max(max_big_scaled, c << sum);  // c / |R|, |R| = 2^(-sum)
  }
  rep.z4_constant = Rat(max_std, k);
  rep.z5_constant = Rat(max_big_scaled) / (Rat(Int(1) << (2 * m)) * m * k);
  (void)L;
  return rep;
}

struct TrzReport {
  std::int64_t cross_violations = 0;  // z_T inside T_R for T != R
  std::int64_t own_misses = 0;        // z_R outside T_R
  std::int64_t t_rects = 0;           // distinct T_R (must equal witness count)
  std::int64_t multi_p = 0;           // T_R not containing exactly one P-point
  bool ok(std::int64_t n) const {
    return cross_violations == 0 && own_misses == 0 && t_rects == n && multi_p == 0;
  }
};

inline TrzReport verify_trz(const PointSetP& P, const ZSet& Z) {
  TrzReport rep;
  long m = Z.m, k = Z.k, s = 2 * m + k + 1;  // |T_R| = 2^(-2m-k-1)
  std::unordered_map<std::uint64_t, std::size_t> t_map;
  for (std::size_t i = 0; i < Z.witnesses.size(); ++i) {
    const auto& t = Z.witnesses[i].t_rect;
    t_map[(std::uint64_t(t.side(0).level) << 52) | (std::uint64_t(t.side(0).index) << 26) |
          std::uint64_t(t.side(1).index)] = i;
    if (count_in_rect(P, t) != 1) ++rep.multi_p;
  }
  rep.t_rects = std::int64_t(t_map.size());
  for (std::size_t i = 0; i < Z.witnesses.size(); ++i) {
    const auto& w = Z.witnesses[i];
    if (!w.t_rect.contains(w.z)) ++rep.own_misses;
    for (long lx = 0; lx <= std::min(s, 2 * m + 2); ++lx) {
      if (s - lx < 0) continue;
      std::uint64_t key = (std::uint64_t(lx) << 52) |
                          (std::uint64_t(interval_index_of(w.z[0], lx)) << 26) |
                          std::uint64_t(interval_index_of(w.z[1], s - lx));
      auto it = t_map.find(key);
      if (it != t_map.end() && it->second != i) ++rep.cross_violations;
    }
  }
  return rep;
}

struct LemmaReport {
  std::int64_t checked = 0;
  std::int64_t violations = 0;
};

/// I_(ell) x J^(ell+1) holds exactly one foreign P-point, in the outer annulus.
inline LemmaReport verify_localize_ps(const PointSetP& P, long ell) {
  LemmaReport rep;
  for (const auto& S : enumerate_standard_rectangles(P)) {
    const DyadicInterval &I = S.rect.side(0), &J = S.rect.side(1);
    if (J.level < ell + 1) continue;  // J^(ell+1) must stay inside [0,1)
    ++rep.checked;
    auto p = P.point(S.anchor);
    DyadicInterval Il = offspring(I, p[0], ell);
    DyadicInterval Jup = J.ancestor(ell + 1);
    DyadicRect region(Il, Jup);
    if (count_in_rect(P, region) != 1) {
      ++rep.violations;
      continue;
    }
    bool in_annulus = false;
    for (std::int64_t r = detail::range_lo(Jup, P.level); r < detail::range_hi(Jup, P.level); ++r) {
      auto q = P.point(r);
      if (!region.contains(q)) continue;
      in_annulus = !interval_contains(J.ancestor(ell), q[1]);
    }
    if (!in_annulus) ++rep.violations;
  }
  return rep;
}

/// Lemma on the widest maximal rectangle: unique, width |I_(ell)|/2, height J^(ell+1).
inline LemmaReport verify_widest_unique(const PointSetP& P, long ell, int axis) {
  LemmaReport rep;
  for (const auto& S : enumerate_standard_rectangles(P)) {
    const DyadicInterval &I = S.rect.side(axis), &J = S.rect.side(1 - axis);
    if (J.level < ell + 1) continue;  // 2^(ell+1)|J| <= 1
    ++rep.checked;
    auto list = maximal_foreign_rectangles(P, S, ell, axis);
    auto p = P.point(S.anchor);
    DyadicInterval Il = offspring(I, p[std::size_t(axis)], ell);
    bool ok = !list.empty() && list[0].rect.side(axis).level == Il.level + 1 &&
              list[0].rect.side(1 - axis) == J.ancestor(ell + 1) &&
              (list.size() < 2 || list[1].rect.side(axis).level > Il.level + 1);
    if (!ok) ++rep.violations;
  }
  return rep;
}

/// Widths of the maximal rectangles halve: a_i = 2^(-i)|I_(ell)| for i <= m - ell.
inline LemmaReport verify_exponential_decay(const PointSetP& P, long ell, int axis) {
  LemmaReport rep;
  for (const auto& S : enumerate_standard_rectangles(P)) {
    const DyadicInterval &I = S.rect.side(axis), &J = S.rect.side(1 - axis);
    if (J.level < ell + 1) continue;
    ++rep.checked;
    auto list = maximal_foreign_rectangles(P, S, ell, axis);
    auto p = P.point(S.anchor);
    long base = offspring(I, p[std::size_t(axis)], ell).level;
    long upto = std::min<long>(long(list.size()), P.m - ell);
    bool ok = long(list.size()) >= std::min(P.m - ell, J.level - ell - 1);
    for (long i = 1; i <= upto; ++i)
      if (list[std::size_t(i - 1)].rect.side(axis).level != base + i) ok = false;
    if (!ok) ++rep.violations;
  }
  return rep;
}

}  // namespace dyadic
