#pragma once

#include <bit>
#include <cstdint>
#include <string>

#include "dyadic/error.hpp"
#include "dyadic/rational.hpp"

namespace dyadic {

/// A power of two 2^e stored by exponent. Multiplication is exponent
/// addition, comparison is exponent comparison.
struct LogDyadic {
  long e = 0;

  Rat to_rat() const { return pow2_rat(e); }
  friend LogDyadic operator*(LogDyadic a, LogDyadic b) { return {a.e + b.e}; }
  friend bool operator==(LogDyadic a, LogDyadic b) { return a.e == b.e; }
  friend bool operator!=(LogDyadic a, LogDyadic b) { return a.e != b.e; }
  friend bool operator<(LogDyadic a, LogDyadic b) { return a.e < b.e; }
  friend bool operator<=(LogDyadic a, LogDyadic b) { return a.e <= b.e; }
  friend bool operator>(LogDyadic a, LogDyadic b) { return a.e > b.e; }
  friend bool operator>=(LogDyadic a, LogDyadic b) { return a.e >= b.e; }
};

/// Half-open interval [index*2^-level, (index+1)*2^-level).
///
/// The default universe is [0,1): level >= 0 and index < 2^level. Ambient
/// intervals (negative level, index over all non-negative integers) are
/// permitted for level-set computations on [0,inf).
struct DyadicInterval {
  long level = 0;
  std::int64_t index = 0;

  DyadicInterval() = default;
  DyadicInterval(long lv, std::int64_t ix) : level(lv), index(ix) {
    require(ix >= 0, errc::bad_input, "negative interval index");
    require(lv > -62 && lv < 62, errc::resource_cap, "interval level out of range");
  }

  static DyadicInterval unit() { return DyadicInterval(0, 0); }

  bool in_unit() const { return level >= 0 && index < (std::int64_t(1) << level); }

  LogDyadic length() const { return {-level}; }
  Rat lo() const { return Rat(index) * pow2_rat(-level); }
  Rat hi() const { return Rat(index + 1) * pow2_rat(-level); }

  DyadicInterval parent() const {
    require(level > -61, errc::universe_exceeded, "parent of top ambient interval");
    return DyadicInterval(level - 1, index >> 1);
  }

  /// j-fold ancestor: the containing interval of length 2^j * |this|.
  DyadicInterval ancestor(long j) const {
    require(j >= 0, errc::bad_input, "ancestor generation must be >= 0");
    require(level - j >= 0 || !in_unit(), errc::universe_exceeded,
            "ancestor leaves the unit universe");
    return DyadicInterval(level - j, index >> j);
  }

  DyadicInterval child(int which) const {
    require(which == 0 || which == 1, errc::bad_input, "child index");
    return DyadicInterval(level + 1, 2 * index + which);
  }

  bool contains(const DyadicInterval& other) const {
    if (other.level < level) return false;
    return (other.index >> (other.level - level)) == index;
  }

  bool disjoint(const DyadicInterval& other) const {
    return !contains(other) && !other.contains(*this);
  }

  friend bool operator==(const DyadicInterval& a, const DyadicInterval& b) {
    return a.level == b.level && a.index == b.index;
  }
  friend bool operator!=(const DyadicInterval& a, const DyadicInterval& b) { return !(a == b); }
  friend bool operator<(const DyadicInterval& a, const DyadicInterval& b) {
    if (a.level != b.level) return a.level < b.level;
    return a.index < b.index;
  }

  /// Canonical text encoding "level:index", e.g. "3:5" = [5/8, 6/8).
  std::string str() const { return std::to_string(level) + ":" + std::to_string(index); }

  static DyadicInterval parse(const std::string& s) {
    auto colon = s.find(':');
    require(colon != std::string::npos, errc::bad_input, "interval encoding '" + s + "'");
    try {
      long lv = std::stol(s.substr(0, colon));
      std::int64_t ix = std::stoll(s.substr(colon + 1));
      return DyadicInterval(lv, ix);
    } catch (const std::exception&) {
      fail(errc::bad_input, "interval encoding '" + s + "'");
    }
  }
};

/// Smallest common dyadic ancestor of two unit-universe intervals
/// (the whole of [0,1) if they sit in opposite halves).
inline DyadicInterval common_ancestor(const DyadicInterval& a, const DyadicInterval& b) {
  long lv = std::max(a.level, b.level);
  std::uint64_t ia = std::uint64_t(a.index) << (lv - a.level);
  std::uint64_t ib = std::uint64_t(b.index) << (lv - b.level);
  int t = std::bit_width(ia ^ ib);
  long up = std::max<long>(t, std::max(lv - a.level, lv - b.level));
  require(lv - up >= 0, errc::universe_exceeded, "no common ancestor inside [0,1)");
  return DyadicInterval(lv - up, std::int64_t(ia >> up));
}

}  // namespace dyadic
