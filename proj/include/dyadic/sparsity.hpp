#pragma once

#include <variant>
#include <vector>

#include "dyadic/collection.hpp"
#include "dyadic/flow.hpp"

namespace dyadic {

/// Fractional disjoint-subset system: for each member R a list of arrangement
/// faces with fractions, so that sum fraction*|face| >= eta|R| within R and
/// each face is used at most fully. Converts to measurable sets E(R) by
/// sub-partitioning faces, so nothing is lost by staying fractional.
struct SparsityCertificate {
  Rat eta{0};
  std::vector<std::pair<DyadicRect, std::vector<std::pair<Box, Rat>>>> assignment;
};

/// Subfamily G with eta * sum |R| > |union G|: no disjoint system can exist.
struct HallViolation {
  Rat eta{0};
  std::vector<DyadicRect> family;
  Rat total_area{0};
  Rat union_area{0};
};

using CheckSparseResult = std::variant<SparsityCertificate, HallViolation>;

inline bool certificate_valid(const SparsityCertificate& cert) {
  std::vector<std::pair<Box, Rat>> face_load;
  for (const auto& [R, cells] : cert.assignment) {
    Rat covered = 0;
    for (const auto& [cell, frac] : cells) {
      if (frac < 0 || frac > 1 || !cell.inside(R)) return false;
      covered += frac * cell.volume();
      bool found = false;
      for (auto& [b, load] : face_load)
        if (b.lo == cell.lo && b.hi == cell.hi) {
          load += frac;
          found = true;
          break;
        }
      if (!found) face_load.push_back({cell, frac});
    }
    if (covered < cert.eta * R.area().to_rat()) return false;
  }
  for (const auto& [b, load] : face_load)
    if (load > 1) return false;
  return true;
}

inline bool violation_valid(const HallViolation& v) {
  Rat total = 0;
  for (const auto& R : v.family) total += R.area().to_rat();
  return total == v.total_area && union_volume(v.family) == v.union_area &&
         v.eta * total > v.union_area;
}

/// Decide eta-sparsity exactly. Arrangement faces of the family feed an
/// integral max-flow (source -> R at eta|R|, R -> face inside R at infinity,
/// face -> sink at |face|); a saturating flow is a certificate and a deficient
/// minimum cut yields the violating subfamily. The returned object is
/// re-verified by direct arithmetic before being handed back.
inline CheckSparseResult check_sparse(const RectCollection& S, const Rat& eta) {
  require(eta > 0 && eta <= 1, errc::bad_input, "eta must be in (0,1]");
  require(!S.rects.empty(), errc::bad_input, "empty collection");
  std::size_t n = S.rects.size();
  auto bp = detail::breakpoints(S.rects, 2);

  std::vector<Box> faces;
  std::vector<std::vector<std::size_t>> owners;  // rect indices covering each face
  detail::for_each_cell(bp, [&](const Box& cell, const std::vector<std::size_t>&) {
    std::vector<std::size_t> own;
    for (std::size_t r = 0; r < n; ++r)
      if (cell.inside(S.rects[r])) own.push_back(r);
    if (!own.empty()) {
      faces.push_back(cell);
      owners.push_back(std::move(own));
    }
  });

  // scale all capacities to integers
  Int den = Int(boost::multiprecision::denominator(eta));
  std::vector<Rat> demand(n);
  Rat total_demand = 0;
  for (std::size_t r = 0; r < n; ++r) {
    demand[r] = eta * S.rects[r].area().to_rat();
    total_demand += demand[r];
    den = boost::multiprecision::lcm(den, Int(boost::multiprecision::denominator(demand[r])));
  }
  std::vector<Rat> face_area(faces.size());
  for (std::size_t f = 0; f < faces.size(); ++f) {
    face_area[f] = faces[f].volume();
    den = boost::multiprecision::lcm(den, Int(boost::multiprecision::denominator(face_area[f])));
  }
  auto scaled = [&](const Rat& x) {
    return Int(boost::multiprecision::numerator(x)) *
           (den / Int(boost::multiprecision::denominator(x)));
  };

  std::size_t src = n + faces.size(), snk = src + 1;
  MaxFlow net(snk + 1);
  Int target = 0, inf = 1;
  for (std::size_t r = 0; r < n; ++r) target += scaled(demand[r]);
  inf += target;
  std::vector<std::size_t> src_edge(n);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> mid(n);  // (edge id, face)
  for (std::size_t r = 0; r < n; ++r) src_edge[r] = net.add_edge(src, r, scaled(demand[r]));
  for (std::size_t f = 0; f < faces.size(); ++f) {
    for (std::size_t r : owners[f]) mid[r].push_back({net.add_edge(r, n + f, inf), f});
    net.add_edge(n + f, snk, scaled(face_area[f]));
  }

  Int got = net.run(src, snk);
  if (got == target) {
    SparsityCertificate cert;
    cert.eta = eta;
    for (std::size_t r = 0; r < n; ++r) {
      std::vector<std::pair<Box, Rat>> cells;
      for (const auto& [id, f] : mid[r]) {
        const Int& fl = net.flow_on(id);
        if (fl > 0) cells.push_back({faces[f], Rat(fl, scaled(face_area[f]))});
      }
      cert.assignment.push_back({S.rects[r], std::move(cells)});
    }
    require(certificate_valid(cert), errc::internal, "certificate failed re-verification");
    return cert;
  }

  auto side = net.min_cut_side(src);
  HallViolation v;
  v.eta = eta;
  for (std::size_t r = 0; r < n; ++r)
    if (side[r]) {
      v.family.push_back(S.rects[r]);
      v.total_area += S.rects[r].area().to_rat();
    }
  v.union_area = union_volume(v.family);
  require(violation_valid(v), errc::internal, "violation failed re-verification");
  return v;
}

/// Bracket (often pin exactly) the best sparsity constant and the Carleson
/// constant Lambda = 1/eta*.
struct CarlesonReport {
  Rat eta_lo{0}, eta_hi{0};      // eta_lo feasible, eta* <= eta_hi
  Rat lambda_lo{0}, lambda_hi{0};
  bool exact = false;
  std::vector<DyadicRect> witness;  // union achieving lambda_lo (worst family)
};

inline CarlesonReport max_sparsity(const RectCollection& S) {
  CarlesonReport rep;
  auto r1 = check_sparse(S, Rat(1));
  if (std::holds_alternative<SparsityCertificate>(r1)) {
    rep.eta_lo = rep.eta_hi = 1;
    rep.lambda_lo = rep.lambda_hi = 1;
    rep.exact = true;
    rep.witness = S.rects;
    return rep;
  }
  Rat lo = 0, hi = 1;  // feasible at lo (vacuously), infeasible at hi
  std::vector<DyadicRect> worst = std::get<HallViolation>(r1).family;
  while (hi - lo > pow2_rat(-20)) {
    Rat mid = (lo + hi) / 2;
    auto r = check_sparse(S, mid);
    if (std::holds_alternative<SparsityCertificate>(r))
      lo = mid;
    else {
      hi = mid;
      worst = std::get<HallViolation>(r).family;
    }
  }
  // the binding subfamily of the last cut names a candidate for the exact
  // optimum eta* = min over G of |union G| / sum |R|
  Rat total = 0;
  for (const auto& R : worst) total += R.area().to_rat();
  Rat cand = union_volume(worst) / total;
  if (cand >= lo && cand <= hi &&
      std::holds_alternative<SparsityCertificate>(check_sparse(S, cand))) {
    lo = hi = cand;
    rep.exact = true;
  }
  rep.eta_lo = lo;
  rep.eta_hi = hi;
  rep.lambda_lo = 1 / hi;
  rep.lambda_hi = lo > 0 ? 1 / lo : Rat(0);
  rep.witness = worst;
  return rep;
}

}  // namespace dyadic
