#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "dyadic/error.hpp"
#include "dyadic/interval.hpp"
#include "dyadic/rational.hpp"

namespace dyadic {

/// Exact dyadic rational num/2^exp in [0,1), stored normalized
/// (num odd, or num == 0 with exp == 0).
struct DyadicCoord {
  std::int64_t num = 0;
  int exp = 0;

  DyadicCoord() = default;
  DyadicCoord(std::int64_t n, int e) : num(n), exp(e) {
    require(e >= 0 && e < 62, errc::resource_cap, "coordinate exponent out of range");
    require(n >= 0 && n < (std::int64_t(1) << e), errc::out_of_universe,
            "coordinate outside [0,1)");
    normalize();
  }

  void normalize() {
    if (num == 0) {
      exp = 0;
      return;
    }
    while ((num & 1) == 0 && exp > 0) {
      num >>= 1;
      --exp;
    }
  }

  Rat to_rat() const { return Rat(num, Int(1) << exp); }

  friend bool operator==(const DyadicCoord& a, const DyadicCoord& b) {
    return a.num == b.num && a.exp == b.exp;
  }
  friend bool operator!=(const DyadicCoord& a, const DyadicCoord& b) { return !(a == b); }
  friend bool operator<(const DyadicCoord& a, const DyadicCoord& b) {
    int e = std::max(a.exp, b.exp);
    return (a.num << (e - a.exp)) < (b.num << (e - b.exp));
  }

  /// Encoding "num/2^exp".
  std::string str() const { return std::to_string(num) + "/2^" + std::to_string(exp); }

  static DyadicCoord parse(const std::string& s) {
    auto sep = s.find("/2^");
    require(sep != std::string::npos, errc::bad_input, "coordinate encoding '" + s + "'");
    try {
      return DyadicCoord(std::stoll(s.substr(0, sep)), std::stoi(s.substr(sep + 3)));
    } catch (const std::exception&) {
      fail(errc::bad_input, "coordinate encoding '" + s + "'");
    }
  }
};

/// Index of the dyadic interval of the given level containing x.
/// Valid for ambient (negative) levels as well; x must be in [0,1).
inline std::int64_t interval_index_of(const DyadicCoord& x, long level) {
  long shift = x.exp - level;
  if (shift >= 0) return x.num >> shift;
  return x.num << (-shift);
}

inline DyadicInterval interval_containing(const DyadicCoord& x, long level) {
  return DyadicInterval(level, interval_index_of(x, level));
}

inline bool interval_contains(const DyadicInterval& I, const DyadicCoord& x) {
  return interval_index_of(x, I.level) == I.index;
}

struct DyadicPoint {
  std::vector<DyadicCoord> coords;

  DyadicPoint() = default;
  explicit DyadicPoint(std::vector<DyadicCoord> c) : coords(std::move(c)) {}
  DyadicPoint(DyadicCoord x, DyadicCoord y) : coords{x, y} {}

  std::size_t dim() const { return coords.size(); }
  const DyadicCoord& operator[](std::size_t i) const { return coords[i]; }

  friend bool operator==(const DyadicPoint& a, const DyadicPoint& b) {
    return a.coords == b.coords;
  }
  friend bool operator!=(const DyadicPoint& a, const DyadicPoint& b) { return !(a == b); }
};

}  // namespace dyadic
