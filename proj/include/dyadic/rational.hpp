#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

#include "dyadic/error.hpp"

namespace dyadic {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// 2^e as an exact rational, e may be negative.
inline Rat pow2_rat(long e) {
  if (e >= 0) return Rat(Int(1) << e);
  return Rat(1, Int(1) << (-e));
}

inline std::string rat_str(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

/// Parses "p", "p/q", or a plain decimal like "0.49".
inline Rat parse_rat(const std::string& s) {
  auto bad = [&] { fail(errc::bad_input, "cannot parse rational '" + s + "'"); };
  if (s.empty()) bad();
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      Int num(s.substr(0, slash));
      Int den(s.substr(slash + 1));
      if (den == 0) bad();
      return Rat(num, den);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      if (digits.empty() || digits == "-") bad();
      Int num(digits);
      Int den = 1;
      for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
      return Rat(num, den);
    }
    return Rat(Int(s));
  } catch (const std::exception&) {
    bad();
  }
  return Rat();  // unreachable
}

inline double rat_double(const Rat& r) { return r.convert_to<double>(); }

}  // namespace dyadic
