#pragma once

#include <string>
#include <vector>

#include "dyadic/interval.hpp"
#include "dyadic/point.hpp"

namespace dyadic {

/// Product of d dyadic intervals; area tracked as an exact power of two.
struct DyadicRect {
  std::vector<DyadicInterval> sides;

  DyadicRect() = default;
  explicit DyadicRect(std::vector<DyadicInterval> s) : sides(std::move(s)) {}
  DyadicRect(DyadicInterval I, DyadicInterval J) : sides{I, J} {}

  std::size_t dim() const { return sides.size(); }
  const DyadicInterval& side(std::size_t i) const { return sides[i]; }

  LogDyadic area() const {
    long e = 0;
    for (const auto& s : sides) e -= s.level;
    return {e};
  }

  bool in_unit() const {
    for (const auto& s : sides)
      if (!s.in_unit()) return false;
    return true;
  }

  bool contains(const DyadicPoint& p) const {
    for (std::size_t i = 0; i < sides.size(); ++i)
      if (!interval_contains(sides[i], p[i])) return false;
    return true;
  }

  bool contains(const DyadicRect& r) const {
    for (std::size_t i = 0; i < sides.size(); ++i)
      if (!sides[i].contains(r.sides[i])) return false;
    return true;
  }

  bool intersects(const DyadicRect& r) const {
    for (std::size_t i = 0; i < sides.size(); ++i)
      if (sides[i].disjoint(r.sides[i])) return false;
    return true;
  }

  friend bool operator==(const DyadicRect& a, const DyadicRect& b) { return a.sides == b.sides; }
  friend bool operator!=(const DyadicRect& a, const DyadicRect& b) { return !(a == b); }
  friend bool operator<(const DyadicRect& a, const DyadicRect& b) { return a.sides < b.sides; }

  /// Encoding "level:index x level:index [x ...]".
  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < sides.size(); ++i) {
      if (i) out += " x ";
      out += sides[i].str();
    }
    return out;
  }

  static DyadicRect parse(const std::string& s) {
    std::vector<DyadicInterval> sides;
    std::size_t pos = 0;
    while (pos <= s.size()) {
      auto next = s.find(" x ", pos);
      std::string piece = s.substr(pos, next == std::string::npos ? next : next - pos);
      sides.push_back(DyadicInterval::parse(piece));
      if (next == std::string::npos) break;
      pos = next + 3;
    }
    require(!sides.empty(), errc::bad_input, "rectangle encoding '" + s + "'");
    return DyadicRect(std::move(sides));
  }
};

inline DyadicRect unit_square(std::size_t d = 2) {
  return DyadicRect(std::vector<DyadicInterval>(d, DyadicInterval::unit()));
}

}  // namespace dyadic
