#pragma once

#include <map>

#include "dyadic/collection.hpp"

namespace dyadic {

/// Project a weighted 3-d family onto the first two coordinates:
/// beta_R = sum over J of alpha_{R x J} |J| (|[0,1) cap J| / |J|)^2.
/// Third-coordinate intervals may be ambient; factors with no unit overlap
/// contribute nothing.
inline RectCollection tensor_project(const RectCollection& alpha3) {
  std::map<DyadicRect, Rat> beta;
  for (const auto& R3 : alpha3.rects) {
    require(R3.dim() == 3, errc::bad_input, "tensor_project expects 3-d rectangles");
    const DyadicInterval& J = R3.side(2);
    Rat lenJ = J.length().to_rat();
    Rat overlap;
    if (J.level >= 0)
      overlap = J.in_unit() ? lenJ : Rat(0);
    else
      overlap = J.index == 0 ? Rat(1) : Rat(0);
    if (overlap == 0) continue;
    Rat contrib = alpha3.weight(R3) * lenJ * (overlap / lenJ) * (overlap / lenJ);
    DyadicRect R2(R3.side(0), R3.side(1));
    beta[R2] += contrib;
  }
  RectCollection out;
  for (auto& [R, w] : beta) {
    out.rects.push_back(R);
    out.weights.insert({R, w});
  }
  return out;
}

}  // namespace dyadic
