#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "dyadic/measure.hpp"
#include "dyadic/zset.hpp"

namespace dyadic {

/// sign * 2^(twice_exp / 2); lone Haar values can carry a sqrt(2) factor, so
/// the exponent is stored doubled. Any pairing of two factors is rational.
struct HaarValue {
  int sign = 0;
  long twice_exp = 0;
};

/// Tensor Haar function h_R(p): +|R|^(-1/2) on lower children, -|R|^(-1/2)
/// on upper children, 0 outside R.
inline HaarValue haar_eval(const DyadicRect& R, const DyadicPoint& p) {
  require(R.dim() == p.dim(), errc::bad_input, "dimension mismatch");
  HaarValue v{1, 0};
  for (std::size_t i = 0; i < R.dim(); ++i) {
    const DyadicInterval& I = R.side(i);
    if (!interval_contains(I, p[i])) return {0, 0};
    if (interval_index_of(p[i], I.level + 1) & 1) v.sign = -v.sign;
    v.twice_exp += I.level;
  }
  return v;
}

/// Martingale transform symbol: finitely supported signs.
struct HaarSymbol {
  std::map<DyadicRect, int> entries;
};

/// sigma supported exactly on {T_R}, with the sign that turns every witness
/// contribution h(p_R) h(z_R) sigma into +|T_R|^(-1).
inline HaarSymbol build_sigma(const PointSetP& P, const ZSet& Z) {
  HaarSymbol sigma;
  for (const auto& w : Z.witnesses) {
    auto hp = haar_eval(w.t_rect, P.point(w.anchor));
    auto hz = haar_eval(w.t_rect, w.z);
    require(hp.sign != 0 && hz.sign != 0, errc::internal, "T_R must contain p(z) and z");
    int xi = hp.sign * hz.sign;
    auto [it, fresh] = sigma.entries.insert({w.t_rect, xi});
    require(fresh, errc::internal, "{T_R} must be one-to-one");
  }
  return sigma;
}

namespace detail {

/// Atom indices sorted along one coordinate, for range extraction per side.
struct AxisIndex {
  std::vector<std::size_t> order[2];

  explicit AxisIndex(const AtomicMeasure& mu) {
    for (int ax = 0; ax < 2; ++ax) {
      order[ax].resize(mu.size());
      std::iota(order[ax].begin(), order[ax].end(), std::size_t(0));
      std::sort(order[ax].begin(), order[ax].end(), [&](std::size_t a, std::size_t b) {
        return mu.points[a][std::size_t(ax)] < mu.points[b][std::size_t(ax)];
      });
    }
  }

  std::pair<std::size_t, std::size_t> range(const AtomicMeasure& mu, int ax,
                                            const DyadicInterval& I) const {
    auto lo = std::partition_point(order[ax].begin(), order[ax].end(), [&](std::size_t a) {
      return interval_index_of(mu.points[a][std::size_t(ax)], I.level) < I.index;
    });
    auto hi = std::partition_point(lo, order[ax].end(), [&](std::size_t a) {
      return interval_index_of(mu.points[a][std::size_t(ax)], I.level) == I.index;
    });
    return {std::size_t(lo - order[ax].begin()), std::size_t(hi - order[ax].begin())};
  }
};

/// Sum of w * sign(h_R) over atoms inside R, iterating the narrower side.
inline Rat haar_sum(const AtomicMeasure& mu, const AxisIndex& ix, const DyadicRect& R) {
  auto rx = ix.range(mu, 0, R.side(0));
  auto ry = ix.range(mu, 1, R.side(1));
  int ax = (rx.second - rx.first <= ry.second - ry.first) ? 0 : 1;
  auto r = ax == 0 ? rx : ry;
  Rat sum = 0;
  for (std::size_t t = r.first; t < r.second; ++t) {
    std::size_t a = ix.order[ax][t];
    auto h = haar_eval(R, mu.points[a]);
    if (h.sign > 0)
      sum += mu.weights[a];
    else if (h.sign < 0)
      sum -= mu.weights[a];
  }
  return sum;
}

}  // namespace detail

/// <T_sigma(mu), nu> = sum over supp sigma of
/// sigma_R (sum mu h_R) (sum nu h_R), exact.
inline Rat martingale_pairing(const HaarSymbol& sigma, const AtomicMeasure& mu,
                              const AtomicMeasure& nu) {
  detail::AxisIndex imu(mu), inu(nu);
  Rat total = 0;
  for (const auto& [R, s] : sigma.entries) {
    require(R.dim() == 2, errc::bad_input, "two-dimensional symbol expected");
    if (s == 0) continue;
    Rat a = detail::haar_sum(mu, imu, R);
    if (a == 0) continue;
    Rat b = detail::haar_sum(nu, inu, R);
    if (b == 0) continue;
    long e = R.side(0).level + R.side(1).level;  // |R|^(-1/2) twice
    total += Rat(s) * a * b * pow2_rat(e);
  }
  return total;
}

}  // namespace dyadic
