#pragma once

#include <gmp.h>
#include <mpfr.h>

#include <algorithm>
#include <string>
#include <vector>

#include "dyadic/measure.hpp"

namespace dyadic {

/// Certified rational bracket; lo == hi means the value is exact.
struct RatInterval {
  Rat lo{0}, hi{0};

  bool is_exact() const { return lo == hi; }
  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  Rat mid() const { return (lo + hi) / 2; }
};

/// Young gauge: phi(x) = x^p (p >= 1) or phi(x) = x [log(e + x)]^alpha.
struct OrliczGauge {
  enum class Kind { power, loglog };
  Kind kind = Kind::power;
  Rat param{1};

  static OrliczGauge power(Rat p) {
    require(p >= 1, errc::bad_input, "power gauge needs p >= 1");
    return {Kind::power, std::move(p)};
  }
  static OrliczGauge loglog(Rat alpha) {
    require(alpha >= 0, errc::bad_input, "loglog gauge needs alpha >= 0");
    return {Kind::loglog, std::move(alpha)};
  }
};

namespace detail {

class MpFloat {
 public:
  explicit MpFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~MpFloat() { mpfr_clear(v_); }
  MpFloat(const MpFloat&) = delete;
  MpFloat& operator=(const MpFloat&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

inline void mpfr_from_rat(mpfr_ptr out, const Rat& r, mpfr_rnd_t rnd) {
  mpq_t q;
  mpq_init(q);
  std::string s = r.str();
  mpq_set_str(q, s.c_str(), 10);
  mpq_canonicalize(q);
  mpfr_set_q(out, q, rnd);
  mpq_clear(q);
}

inline Rat rat_from_mpfr(mpfr_srcptr x) {
  require(mpfr_number_p(x), errc::internal, "finite float expected");
  if (mpfr_zero_p(x)) return Rat(0);
  mpz_t z;
  mpz_init(z);
  mpfr_exp_t e = mpfr_get_z_2exp(z, x);
  bool neg = mpz_sgn(z) < 0;
  if (neg) mpz_neg(z, z);
  char* s = mpz_get_str(nullptr, 16, z);
  Int n("0x" + std::string(s));
  free(s);
  mpz_clear(z);
  Rat r = Rat(n) * pow2_rat(long(e));
  return neg ? -r : r;
}

/// phi(x) for the loglog gauge, rounded in the requested direction. Every
/// factor is nonnegative and the base log(e+x) >= 1, so a one-directional
/// rounding chain is monotone end to end.
inline void loglog_phi(mpfr_ptr out, const Rat& x, const Rat& alpha, mpfr_prec_t prec,
                       mpfr_rnd_t rnd) {
  MpFloat t(prec), b(prec), a(prec);
  mpfr_from_rat(t.get(), x, rnd);
  mpfr_set_ui(b.get(), 1, rnd);
  mpfr_exp(b.get(), b.get(), rnd);  // e
  mpfr_add(b.get(), b.get(), t.get(), rnd);
  mpfr_log(b.get(), b.get(), rnd);
  if (mpfr_cmp_ui(b.get(), 1) < 0) mpfr_set_ui(b.get(), 1, MPFR_RNDN);  // true base >= 1
  mpfr_from_rat(a.get(), alpha, rnd);
  mpfr_pow(out, b.get(), a.get(), rnd);
  mpfr_mul(out, out, t.get(), rnd);
}

/// Overlap length of a piece side with R's side (they are dyadic, so nested
/// or disjoint), as an exact rational; 0 when disjoint.
inline Rat side_overlap(const DyadicInterval& B, const DyadicInterval& S) {
  if (B.contains(S)) return S.length().to_rat();
  if (S.contains(B)) return B.length().to_rat();
  return Rat(0);
}

/// (value, relative measure |piece cap R| / |R|) for the pieces meeting R.
inline std::vector<std::pair<Rat, Rat>> restrict_pieces(const SimpleFunction& f,
                                                        const DyadicRect& R) {
  require(R.dim() == 2, errc::bad_input, "two-dimensional rectangle expected");
  std::vector<std::pair<Rat, Rat>> out;
  Rat areaR = R.area().to_rat();
  for (std::size_t c = 0; c < f.pieces.size(); ++c) {
    if (f.values[c] == 0) continue;
    require(f.pieces[c].dim() == 2, errc::bad_input, "two-dimensional pieces expected");
    Rat ov = side_overlap(f.pieces[c].side(0), R.side(0)) *
             side_overlap(f.pieces[c].side(1), R.side(1));
    if (ov != 0) out.push_back({f.values[c], ov / areaR});
  }
  return out;
}

/// Certified bracket of avg_R phi(f / lambda) for the loglog gauge.
inline RatInterval loglog_avg(const std::vector<std::pair<Rat, Rat>>& pw, const Rat& lambda,
                              const Rat& alpha, mpfr_prec_t prec) {
  MpFloat lo(prec), hi(prec), term(prec), w(prec);
  mpfr_set_ui(lo.get(), 0, MPFR_RNDN);
  mpfr_set_ui(hi.get(), 0, MPFR_RNDN);
  for (const auto& [v, weight] : pw) {
    Rat x = v / lambda;
    loglog_phi(term.get(), x, alpha, prec, MPFR_RNDD);
    mpfr_from_rat(w.get(), weight, MPFR_RNDD);
    mpfr_mul(term.get(), term.get(), w.get(), MPFR_RNDD);
    mpfr_add(lo.get(), lo.get(), term.get(), MPFR_RNDD);
    loglog_phi(term.get(), x, alpha, prec, MPFR_RNDU);
    mpfr_from_rat(w.get(), weight, MPFR_RNDU);
    mpfr_mul(term.get(), term.get(), w.get(), MPFR_RNDU);
    mpfr_add(hi.get(), hi.get(), term.get(), MPFR_RNDU);
  }
  return {rat_from_mpfr(lo.get()), rat_from_mpfr(hi.get())};
}

/// Floor of the n-th root, Newton iteration on Int.
inline Int iroot(const Int& x, long n) {
  if (x == 0 || x == 1 || n == 1) return x;
  Int guess = Int(1) << long((boost::multiprecision::msb(x) / std::size_t(n)) + 1);
  Int prev = guess + 1;
  while (guess < prev) {
    prev = guess;
    Int p = boost::multiprecision::pow(guess, unsigned(n - 1));
    guess = ((n - 1) * guess + x / p) / n;
  }
  return prev;
}

}  // namespace detail

/// Luxemburg average <f>_{R,phi} = inf{lambda > 0 : avg_R phi(f/lambda) <= 1}.
/// Power gauges use the closed form (<f^p>_R)^{1/p}: exact when p is an
/// integer and the root is rational, otherwise an MPFR bracket. Loglog gauges
/// bisect on lambda with outward-rounded comparisons, so the returned bracket
/// always contains the true value; relative width <= 2^-40.
inline RatInterval orlicz_average(const SimpleFunction& f, const DyadicRect& R,
                                  const OrliczGauge& phi, mpfr_prec_t prec = 128) {
  auto pw = detail::restrict_pieces(f, R);
  if (pw.empty()) return {};
  Rat tol = pow2_rat(-40);

  if (phi.kind == OrliczGauge::Kind::power) {
    const Rat& p = phi.param;
    if (p == 1) {
      Rat avg = 0;
      for (const auto& [v, w] : pw) avg += v * w;
      return {avg, avg};
    }
    if (boost::multiprecision::denominator(p) == 1) {
      long pi = long(boost::multiprecision::numerator(p));
      Rat S = 0;
      for (const auto& [v, w] : pw) {
        Rat vp(boost::multiprecision::pow(Int(boost::multiprecision::numerator(v)), unsigned(pi)),
               boost::multiprecision::pow(Int(boost::multiprecision::denominator(v)),
                                          unsigned(pi)));
        S += vp * w;
      }
      Int rn = detail::iroot(Int(boost::multiprecision::numerator(S)), pi);
      Int rd = detail::iroot(Int(boost::multiprecision::denominator(S)), pi);
      if (boost::multiprecision::pow(rn, unsigned(pi)) == boost::multiprecision::numerator(S) &&
          boost::multiprecision::pow(rd, unsigned(pi)) == boost::multiprecision::denominator(S)) {
        Rat root(rn, rd);
        return {root, root};
      }
      detail::MpFloat x(prec);
      RatInterval out;
      detail::mpfr_from_rat(x.get(), S, MPFR_RNDD);
      mpfr_rootn_ui(x.get(), x.get(), static_cast<unsigned long>(pi), MPFR_RNDD);
      out.lo = detail::rat_from_mpfr(x.get());
      detail::mpfr_from_rat(x.get(), S, MPFR_RNDU);
      mpfr_rootn_ui(x.get(), x.get(), static_cast<unsigned long>(pi), MPFR_RNDU);
      out.hi = detail::rat_from_mpfr(x.get());
      return out;
    }
    // fractional exponent: S = sum w v^p bracketed, then S^(1/p) bracketed
    detail::MpFloat lo(prec), hi(prec), t(prec), w(prec), pe(prec);
    mpfr_set_ui(lo.get(), 0, MPFR_RNDN);
    mpfr_set_ui(hi.get(), 0, MPFR_RNDN);
    for (const auto& [v, weight] : pw) {
      for (int dir = 0; dir < 2; ++dir) {
        mpfr_rnd_t rnd = dir == 0 ? MPFR_RNDD : MPFR_RNDU;
        detail::mpfr_from_rat(t.get(), v, rnd);
        // v^p monotone in the exponent only when v >= 1; round the exponent to match
        bool up = (dir == 1) == (v >= 1);
        detail::mpfr_from_rat(pe.get(), p, up ? MPFR_RNDU : MPFR_RNDD);
        mpfr_pow(t.get(), t.get(), pe.get(), rnd);
        detail::mpfr_from_rat(w.get(), weight, rnd);
        mpfr_mul(t.get(), t.get(), w.get(), rnd);
        mpfr_add(dir == 0 ? lo.get() : hi.get(), dir == 0 ? lo.get() : hi.get(), t.get(), rnd);
      }
    }
    detail::MpFloat inv(prec);
    RatInterval out;
    // S^(1/p) is monotone in the exponent only for S >= 1; match the rounding
    bool base_lt1 = mpfr_cmp_ui(lo.get(), 1) < 0;
    detail::mpfr_from_rat(inv.get(), 1 / p, base_lt1 ? MPFR_RNDU : MPFR_RNDD);
    mpfr_pow(t.get(), lo.get(), inv.get(), MPFR_RNDD);
    out.lo = detail::rat_from_mpfr(t.get());
    base_lt1 = mpfr_cmp_ui(hi.get(), 1) < 0;
    detail::mpfr_from_rat(inv.get(), 1 / p, base_lt1 ? MPFR_RNDD : MPFR_RNDU);
    mpfr_pow(t.get(), hi.get(), inv.get(), MPFR_RNDU);
    out.hi = detail::rat_from_mpfr(t.get());
    return out;
  }

  // loglog: avg phi(f/lambda) is strictly decreasing in lambda; phi(x) >= x
  // pins lambda* >= <f>_R, which seeds the bracket.
  const Rat& alpha = phi.param;
  Rat avg = 0;
  for (const auto& [v, w] : pw) avg += v * w;
  if (alpha == 0) return {avg, avg};
  Rat lo = avg, hi = 2 * avg;
  mpfr_prec_t pr = prec;
  for (int guard = 0; guard < 80; ++guard) {
    auto g = detail::loglog_avg(pw, hi, alpha, pr);
    if (g.hi <= 1) break;
    lo = hi;
    hi *= 2;
  }
  while ((hi - lo) > hi * tol) {
    Rat mid = (lo + hi) / 2;
    auto g = detail::loglog_avg(pw, mid, alpha, pr);
    if (g.hi <= 1)
      hi = mid;
    else if (g.lo > 1)
      lo = mid;
    else {
      require(pr < 4096, errc::resource_cap, "orlicz bisection: precision exhausted");
      pr *= 2;  // undecidable at this precision: g straddles 1
    }
  }
  return {lo, hi};
}

}  // namespace dyadic
