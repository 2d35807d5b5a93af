#pragma once

#include <vector>

#include "dyadic/pointset.hpp"
#include "dyadic/rect.hpp"

namespace dyadic {

/// Finite positive atomic measure with exact rational weights. Weights are
/// also kept as integer numerators over one common denominator.
struct AtomicMeasure {
  std::vector<DyadicPoint> points;
  std::vector<Rat> weights;
  Int denom{1};
  std::vector<Int> nums;

  std::size_t size() const { return points.size(); }

  Rat total_mass() const {
    Rat t = 0;
    for (const auto& w : weights) t += w;
    return t;
  }

  Rat mass_in(const DyadicRect& R) const {
    Rat t = 0;
    for (std::size_t i = 0; i < points.size(); ++i)
      if (R.contains(points[i])) t += weights[i];
    return t;
  }
};

inline AtomicMeasure make_atomic(std::vector<DyadicPoint> pts, std::vector<Rat> ws) {
  require(pts.size() == ws.size(), errc::bad_input, "atom/weight count mismatch");
  AtomicMeasure mu;
  mu.points = std::move(pts);
  mu.weights = std::move(ws);
  for (const auto& w : mu.weights) {
    require(w > 0, errc::bad_input, "weights must be positive");
    mu.denom = boost::multiprecision::lcm(mu.denom, Int(boost::multiprecision::denominator(w)));
  }
  for (const auto& w : mu.weights)
    mu.nums.push_back(Int(boost::multiprecision::numerator(w)) *
                      (mu.denom / Int(boost::multiprecision::denominator(w))));
  return mu;
}

inline AtomicMeasure uniform_measure(std::vector<DyadicPoint> pts) {
  std::vector<Rat> ws(pts.size(), Rat(1, std::int64_t(pts.size())));
  return make_atomic(std::move(pts), std::move(ws));
}

inline AtomicMeasure measure_on_p(const PointSetP& P) {
  std::vector<DyadicPoint> pts;
  pts.reserve(std::size_t(P.size()));
  for (std::int64_t r = 0; r < P.size(); ++r) pts.push_back(P.point(r));
  return uniform_measure(std::move(pts));
}

/// Non-negative simple function: finitely many constant values on pairwise
/// disjoint dyadic rectangles.
struct SimpleFunction {
  std::vector<DyadicRect> pieces;
  std::vector<Rat> values;

  Rat integral() const {
    Rat t = 0;
    for (std::size_t i = 0; i < pieces.size(); ++i) t += values[i] * pieces[i].area().to_rat();
    return t;
  }
};

inline SimpleFunction make_simple(std::vector<DyadicRect> pieces, std::vector<Rat> values) {
  require(pieces.size() == values.size(), errc::bad_input, "piece/value count mismatch");
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j)
      require(!pieces[i].intersects(pieces[j]), errc::bad_input, "pieces must be disjoint");
  SimpleFunction f;
  f.pieces = std::move(pieces);
  f.values = std::move(values);
  return f;
}

/// f = (1/#P) sum over p of 1_{Q_p}/|Q_p|: the P-squares with value 2^(2m+1).
inline SimpleFunction build_f_simple(const PointSetP& P) {
  std::vector<DyadicRect> pieces;
  pieces.reserve(std::size_t(P.size()));
  for (std::int64_t r = 0; r < P.size(); ++r) pieces.push_back(P.square(r));
  std::vector<Rat> values(std::size_t(P.size()), Rat(Int(1) << (2 * P.m + 1)));
  SimpleFunction f;
  f.pieces = std::move(pieces);
  f.values = std::move(values);
  return f;
}

}  // namespace dyadic
