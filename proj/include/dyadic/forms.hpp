#pragma once

#include <unordered_map>
#include <vector>

#include "dyadic/orlicz.hpp"
#include "dyadic/sparsity.hpp"

namespace dyadic {

/// Sparse bilinear form: sum of alpha_R mu(R) nu(R) / |R| over members.
inline Rat form_11(const RectCollection& S, const AtomicMeasure& mu, const AtomicMeasure& nu) {
  Rat total = 0;
  for (const auto& R : S.rects) {
    Rat a = mu.mass_in(R);
    if (a == 0) continue;
    Rat b = nu.mass_in(R);
    if (b == 0) continue;
    total += S.weight(R) * a * b / R.area().to_rat();
  }
  return total;
}

/// Orlicz-average form: sum of alpha_R <f>_{R,phi} nu(R), as a certified
/// bracket; exact (width 0) for phi = power(1).
inline RatInterval form_phi(const RectCollection& S, const SimpleFunction& f,
                            const AtomicMeasure& nu, const OrliczGauge& phi) {
  RatInterval total;
  for (const auto& R : S.rects) {
    Rat b = nu.mass_in(R);
    if (b == 0) continue;
    auto avg = orlicz_average(f, R, phi);
    Rat w = S.weight(R) * b;
    total.lo += w * avg.lo;
    total.hi += w * avg.hi;
  }
  return total;
}

/// Measured constant in the product-of-averages bound:
/// max over R of <mu>_R <nu>_R / [k (1 + 2^{2k}/m) (|R cap [0,1)^2| / |R|)^2].
/// The eccentricity factor makes the ratio invariant under widening a side
/// beyond the unit square ([0,1) -> [0,2^a) rescales both numerator and bound
/// by 2^{-2a}), so the exhaustive in-unit pool down to level 2m+2 per side is
/// already the full supremum over ambient rectangles meeting the support.
struct ProductAveragesReport {
  Rat constant{0};
  DyadicRect argmax;
};

inline ProductAveragesReport product_averages_check(const AtomicMeasure& mu,
                                                    const AtomicMeasure& nu, long m, long k) {
  require(m >= 1 && k >= 1, errc::bad_input, "need m, k >= 1");
  Rat bound = Rat(k) * (1 + Rat(Int(1) << (2 * k)) / m);
  ProductAveragesReport rep;
  long L = 2 * m + 2;
  for (long lx = 0; lx <= L; ++lx)
    for (long ly = 0; ly <= L; ++ly) {
      std::unordered_map<std::uint64_t, std::pair<Int, Int>> cells;
      for (std::size_t a = 0; a < mu.size(); ++a) {
        std::uint64_t key =
            (std::uint64_t(interval_index_of(mu.points[a][0], lx)) << 32) |
            std::uint64_t(interval_index_of(mu.points[a][1], ly));
        cells[key].first += mu.nums[a];
      }
      for (std::size_t a = 0; a < nu.size(); ++a) {
        std::uint64_t key =
            (std::uint64_t(interval_index_of(nu.points[a][0], lx)) << 32) |
            std::uint64_t(interval_index_of(nu.points[a][1], ly));
        auto it = cells.find(key);
        if (it != cells.end()) it->second.second += nu.nums[a];
      }
      for (const auto& [key, masses] : cells) {
        if (masses.second == 0) continue;
        Rat a = Rat(masses.first, mu.denom) * (Int(1) << (lx + ly));
        Rat b = Rat(masses.second, nu.denom) * (Int(1) << (lx + ly));
        Rat ratio = a * b / bound;
        if (ratio > rep.constant) {
          rep.constant = ratio;
          rep.argmax = DyadicRect(DyadicInterval(lx, std::int64_t(key >> 32)),
                                  DyadicInterval(ly, std::int64_t(key & 0xffffffffu)));
        }
      }
    }
  return rep;
}

/// Candidate rectangles ranked by form contribution mu(R) nu(R) / |R|,
/// deduplicated, capped in size.
inline std::vector<DyadicRect> default_rect_pool(const AtomicMeasure& mu, const AtomicMeasure& nu,
                                                 long max_level, std::size_t cap) {
  std::vector<std::pair<Rat, DyadicRect>> scored;
  for (long lx = 0; lx <= max_level; ++lx)
    for (long ly = 0; ly <= max_level; ++ly) {
      std::unordered_map<std::uint64_t, std::pair<Int, Int>> cells;
      for (std::size_t a = 0; a < mu.size(); ++a) {
        std::uint64_t key =
            (std::uint64_t(interval_index_of(mu.points[a][0], lx)) << 32) |
            std::uint64_t(interval_index_of(mu.points[a][1], ly));
        cells[key].first += mu.nums[a];
      }
      for (std::size_t a = 0; a < nu.size(); ++a) {
        std::uint64_t key =
            (std::uint64_t(interval_index_of(nu.points[a][0], lx)) << 32) |
            std::uint64_t(interval_index_of(nu.points[a][1], ly));
        auto it = cells.find(key);
        if (it != cells.end()) it->second.second += nu.nums[a];
      }
      for (const auto& [key, masses] : cells) {
        if (masses.second == 0) continue;
        Rat score = Rat(masses.first, mu.denom) * Rat(masses.second, nu.denom) *
                    (Int(1) << (lx + ly));
        scored.push_back({score, DyadicRect(DyadicInterval(lx, std::int64_t(key >> 32)),
                                            DyadicInterval(ly, std::int64_t(key & 0xffffffffu)))});
      }
    }
  std::sort(scored.begin(), scored.end(),
            [](const auto& a, const auto& b) { return b.first < a.first; });
  if (scored.size() > cap) scored.resize(cap);
  std::vector<DyadicRect> pool;
  pool.reserve(scored.size());
  for (auto& [s, R] : scored) pool.push_back(R);
  return pool;
}

/// Greedy lower bound on the supremum of eta-sparse forms: walk the pool in
/// score order, keep a rectangle whenever the grown family still certifies as
/// eta-sparse. Explicitly a heuristic lower bound, not the supremum.
struct GreedyResult {
  RectCollection collection;
  Rat form{0};
  SparsityCertificate certificate;
};

inline GreedyResult greedy_max_form(const AtomicMeasure& mu, const AtomicMeasure& nu,
                                    const Rat& eta, const std::vector<DyadicRect>& pool,
                                    std::size_t budget) {
  require(eta > 0 && eta <= 1, errc::bad_input, "eta must be in (0,1]");
  GreedyResult out;
  std::vector<std::pair<Rat, DyadicRect>> ranked;
  for (const auto& R : pool)
    ranked.push_back({mu.mass_in(R) * nu.mass_in(R) / R.area().to_rat(), R});
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return b.first < a.first; });
  std::vector<DyadicRect> kept;
  SparsityCertificate best;
  for (const auto& [score, R] : ranked) {
    if (kept.size() >= budget) break;
    if (std::find(kept.begin(), kept.end(), R) != kept.end()) continue;
    std::vector<DyadicRect> trial = kept;
    trial.push_back(R);
    RectCollection C;
    C.rects = trial;
    auto res = check_sparse(C, eta);
    if (std::holds_alternative<SparsityCertificate>(res)) {
      kept = std::move(trial);
      best = std::get<SparsityCertificate>(std::move(res));
    }
  }
  require(!kept.empty(), errc::bad_input, "pool produced no feasible rectangle");
  out.collection.rects = std::move(kept);
  out.certificate = std::move(best);
  out.form = form_11(out.collection, mu, nu);
  return out;
}

}  // namespace dyadic
