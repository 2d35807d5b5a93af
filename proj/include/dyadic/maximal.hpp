#pragma once

#include <algorithm>
#include <vector>

#include "dyadic/geometry.hpp"
#include "dyadic/measure.hpp"

namespace dyadic {

/// Value of the strong maximal function; the supremum is +infinity whenever
/// the evaluation point shares a coordinate with an atom.
struct MsValue {
  bool infinite = false;
  Rat value{0};

  friend bool operator==(const MsValue& a, const MsValue& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
};

namespace detail {

/// Dominance enumeration: mu(R(i_1..i_d)) depends only on whether
/// i_j <= t_j(atom) for every j, where t_j is the deepest level at which the
/// evaluation point and the atom still share a dyadic interval. A histogram
/// over threshold vectors plus suffix sums yields every candidate average.
inline MsValue ms_eval_impl(const AtomicMeasure& mu, const DyadicPoint& z, long cap) {
  std::size_t d = z.dim();
  if (mu.size() == 0) return {false, Rat(0)};
  std::vector<long> L(d, 0);
  std::vector<std::vector<long>> th(mu.size(), std::vector<long>(d));
  for (std::size_t a = 0; a < mu.size(); ++a) {
    const auto& p = mu.points[a];
    require(p.dim() == d, errc::bad_input, "dimension mismatch");
    for (std::size_t j = 0; j < d; ++j) {
      if (p[j] == z[j]) return {true, Rat(0)};
      th[a][j] = common_level(z[j], p[j]);
      if (cap >= 0) th[a][j] = std::min(th[a][j], cap);
      L[j] = std::max(L[j], th[a][j]);
    }
  }
  std::vector<std::size_t> stride(d);
  std::size_t total = 1;
  for (std::size_t j = 0; j < d; ++j) {
    stride[j] = total;
    total *= std::size_t(L[j] + 1);
    require(total <= (std::size_t(1) << 24), errc::resource_cap, "ms_eval grid too large");
  }
  std::vector<Int> H(total);
  for (std::size_t a = 0; a < mu.size(); ++a) {
    std::size_t c = 0;
    for (std::size_t j = 0; j < d; ++j) c += std::size_t(th[a][j]) * stride[j];
    H[c] += mu.nums[a];
  }
  for (std::size_t j = 0; j < d; ++j) {
    std::size_t len = std::size_t(L[j] + 1), str = stride[j];
    for (std::size_t base = 0; base < total; base += len * str)
      for (std::size_t off = 0; off < str; ++off)
        for (std::size_t i = len - 1; i-- > 0;)
          H[base + off + i * str] += H[base + off + (i + 1) * str];
  }
  Int best = 0;
  for (std::size_t c = 0; c < total; ++c) {
    if (H[c] == 0) continue;
    long sum = 0;
    std::size_t rem = c;
    for (std::size_t j = d; j-- > 0;) {
      sum += long(rem / stride[j]);
      rem %= stride[j];
    }
    Int cand = H[c] << sum;
    if (cand > best) best = cand;
  }
  return {false, Rat(best, mu.denom)};
}

}  // namespace detail

/// Exact sup over dyadic rectangles R containing z of mu(R)/|R|.
inline MsValue ms_eval(const AtomicMeasure& mu, const DyadicPoint& z) {
  return detail::ms_eval_impl(mu, z, -1);
}

/// <M_S(mu), nu>: infinite as soon as one evaluation is.
inline MsValue pairing_ms(const AtomicMeasure& mu, const AtomicMeasure& nu) {
  MsValue out;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    auto v = ms_eval(mu, nu.points[i]);
    if (v.infinite) return {true, Rat(0)};
    out.value += nu.weights[i] * v.value;
  }
  return out;
}

/// Strong maximal function of a simple function (always finite). The four
/// histogram passes split each piece/axis pair into its "partial overlap"
/// range (ratio |B|/|R|) and its "full overlap" range (ratio 1).
inline Rat ms_eval_simple(const SimpleFunction& f, const DyadicPoint& z) {
  require(z.dim() == 2, errc::bad_input, "ms_eval_simple is two-dimensional");
  if (f.pieces.empty()) return Rat(0);
  long Lx = 0, Ly = 0;
  for (const auto& B : f.pieces) {
    require(B.dim() == 2 && B.in_unit(), errc::out_of_universe, "pieces must be in [0,1)^2");
    Lx = std::max(Lx, B.side(0).level);
    Ly = std::max(Ly, B.side(1).level);
  }
  Int denomV = 1;
  for (const auto& v : f.values)
    denomV = boost::multiprecision::lcm(denomV, Int(boost::multiprecision::denominator(v)));
  long E = Lx + Ly;
  std::size_t W = std::size_t(Lx + 1), Hh = std::size_t(Ly + 1);
  auto idx = [&](long i, long j) { return std::size_t(i) * Hh + std::size_t(j); };
  std::vector<Int> PP(W * Hh), PF(W * Hh), FP(W * Hh), FF(W * Hh);
  for (std::size_t c = 0; c < f.pieces.size(); ++c) {
    if (f.values[c] == 0) continue;
    Int nv = Int(boost::multiprecision::numerator(f.values[c])) *
             (denomV / Int(boost::multiprecision::denominator(f.values[c])));
    const DyadicInterval &Bx = f.pieces[c].side(0), &By = f.pieces[c].side(1);
    long bx = Bx.level, by = By.level;
    bool fx = interval_contains(Bx, z[0]), fy = interval_contains(By, z[1]);
    long px = fx ? bx - 1 : -delta_to_interval(z[0], Bx).e;
    long py = fy ? by - 1 : -delta_to_interval(z[1], By).e;
    if (px >= 0 && py >= 0) PP[idx(px, py)] += nv << (E - bx - by);
    if (px >= 0 && fy) PF[idx(px, by)] += nv << (E - bx);
    if (fx && py >= 0) FP[idx(bx, py)] += nv << (E - by);
    if (fx && fy) FF[idx(bx, by)] += nv << E;
  }
  // suffix sums where the condition is "threshold >= i", prefix where "<= i"
  for (long i = Lx - 1; i >= 0; --i)
    for (long j = 0; j <= Ly; ++j) {
      PP[idx(i, j)] += PP[idx(i + 1, j)];
      PF[idx(i, j)] += PF[idx(i + 1, j)];
    }
  for (long j = Ly - 1; j >= 0; --j)
    for (long i = 0; i <= Lx; ++i) {
      PP[idx(i, j)] += PP[idx(i, j + 1)];
      FP[idx(i, j)] += FP[idx(i, j + 1)];
    }
  for (long i = 1; i <= Lx; ++i)
    for (long j = 0; j <= Ly; ++j) {
      FP[idx(i, j)] += FP[idx(i - 1, j)];
      FF[idx(i, j)] += FF[idx(i - 1, j)];
    }
  for (long j = 1; j <= Ly; ++j)
    for (long i = 0; i <= Lx; ++i) {
      PF[idx(i, j)] += PF[idx(i, j - 1)];
      FF[idx(i, j)] += FF[idx(i, j - 1)];
    }
  Int best = 0;
  for (long i = 0; i <= Lx; ++i)
    for (long j = 0; j <= Ly; ++j) {
      Int cand = (PP[idx(i, j)] << (i + j)) + (PF[idx(i, j)] << i) + (FP[idx(i, j)] << j) +
                 FF[idx(i, j)];
      if (cand > best) best = cand;
    }
  return Rat(best, denomV << E);
}

struct StairsRegion {
  std::vector<DyadicRect> cells;
  Rat area{0};
};

/// Cells of the level-`res` grid on [0,1)^2 where the grid-scale maximal
/// function exceeds lambda (averages over rectangles at the grid scale and
/// coarser; cells holding an atom evaluate to the capped supremum).
inline StairsRegion stairs_level_set(const AtomicMeasure& mu, const Rat& lambda, long res) {
  require(res >= 0 && res <= 12, errc::resource_cap, "resolution out of range");
  StairsRegion out;
  for (std::int64_t cx = 0; cx < (std::int64_t(1) << res); ++cx)
    for (std::int64_t cy = 0; cy < (std::int64_t(1) << res); ++cy) {
      DyadicPoint center(DyadicCoord(2 * cx + 1, int(res) + 1),
                         DyadicCoord(2 * cy + 1, int(res) + 1));
      auto v = detail::ms_eval_impl(mu, center, res);
      if (v.infinite || v.value > lambda)
        out.cells.push_back(DyadicRect(DyadicInterval(res, cx), DyadicInterval(res, cy)));
    }
  out.area = Rat(std::int64_t(out.cells.size())) * pow2_rat(-2 * res);
  return out;
}

/// Omega_j = {M_S(1_{[0,1)^2}) >= 2^(-j)}: the dyadic staircase
/// union over s = 0..j of [0,2^s) x [0,2^(j-s)), with exact area.
inline StairsRegion omega_region(long j) {
  require(j >= 0 && j < 60, errc::bad_input, "omega_region: j out of range");
  StairsRegion out;
  for (long s = 0; s <= j; ++s)
    out.cells.push_back(DyadicRect(DyadicInterval(-s, 0), DyadicInterval(-(j - s), 0)));
  out.area = Rat(Int(1) << j) + (j > 0 ? Rat(Int(j) * (Int(1) << (j - 1))) : Rat(0));
  return out;
}

/// Whether an ambient dyadic rectangle lies inside Omega_j.
inline bool omega_contains(long j, const DyadicRect& R) {
  require(R.dim() == 2, errc::bad_input, "two-dimensional rectangle expected");
  long need = 0;
  for (int i = 0; i < 2; ++i) {
    const auto& I = R.side(std::size_t(i));
    need += std::max<long>(0, long(std::bit_width(std::uint64_t(I.index))) - I.level);
  }
  return need <= j;
}

}  // namespace dyadic
