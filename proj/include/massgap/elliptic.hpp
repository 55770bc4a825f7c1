#pragma once

// Jacobi elliptic functions sn/cn/dn and the complete elliptic integral of
// the first kind K, for real parameter m < 1.
//
// Convention: the second argument is the *parameter* m (not the modulus k),
// so dn^2 = 1 - m*sn^2 and sn has real period 4K(m).  Negative parameters
// (m = -1 is used throughout this library) are evaluated through the real
// imaginary-modulus transformation to m' = -m/(1-m) in (0,1); no complex
// arithmetic is involved.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace massgap {

// sn, cn, dn at argument u and a fixed parameter m.
struct JacobiPoint {
  double u = 0.0;
  double sn = 0.0;
  double cn = 1.0;
  double dn = 1.0;
};

namespace detail {

inline constexpr int kAgmMaxIter = 64;
inline constexpr double kAgmTol = 1e-15;
inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Arithmetic-geometric mean chain a_i, c_i for m in [0,1), b_0 = sqrt(1-m).
struct AgmChain {
  double a[kAgmMaxIter + 1];
  double c[kAgmMaxIter + 1];
  int n = 0;
};

inline AgmChain agm_chain(double m) {
  AgmChain ch;
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  ch.a[0] = a;
  ch.c[0] = std::sqrt(m);
  int i = 0;
  while (i < kAgmMaxIter && ch.c[i] > kAgmTol * ch.a[i]) {
    const double an = 0.5 * (a + b);
    const double cn = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = an;
    ++i;
    ch.a[i] = a;
    ch.c[i] = cn;
  }
  ch.n = i;
  return ch;
}

// K(m) for m in [0,1): K = pi / (2 * AGM(1, sqrt(1-m))).
inline double complete_K_unit(double m) {
  if (m == 0.0) return 0.5 * kPi;
  const AgmChain ch = agm_chain(m);
  return 0.5 * kPi / ch.a[ch.n];
}

// sn, cn, dn for m in [0,1) and u >= 0 via the AGM amplitude recursion
// (Abramowitz & Stegun 16.4).  The argument is reduced modulo 4K first so
// long phases keep full accuracy.
inline JacobiPoint jacobi_unit(double u, double m) {
  if (m == 0.0) return {u, std::sin(u), std::cos(u), 1.0};
  const AgmChain ch = agm_chain(m);
  const double K = 0.5 * kPi / ch.a[ch.n];
  const double period = 4.0 * K;
  double ur = u - period * std::floor(u / period);
  double phi = std::ldexp(ch.a[ch.n] * ur, ch.n);
  for (int i = ch.n; i >= 1; --i) {
    const double s =
        std::clamp((ch.c[i] / ch.a[i]) * std::sin(phi), -1.0, 1.0);
    phi = 0.5 * (phi + std::asin(s));
  }
  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  const double dn = std::sqrt(1.0 - m * sn * sn);
  return {u, sn, cn, dn};
}

}  // namespace detail

// Complete elliptic integral K(m), m < 1.  K(0) = pi/2, strictly increasing
// in m.  Relative accuracy ~1e-15.
inline double complete_K(double m) {
  if (!std::isfinite(m))
    throw std::domain_error("complete_K: parameter must be finite");
  if (m >= 1.0)
    throw std::domain_error("complete_K: parameter must satisfy m < 1, got " +
                            std::to_string(m));
  if (m < 0.0)
    return detail::complete_K_unit(-m / (1.0 - m)) / std::sqrt(1.0 - m);
  return detail::complete_K_unit(m);
}

// Jacobi triple (sn, cn, dn)(u, m) for any finite u and m < 1.
//
// Negative m: with m' = -m/(1-m) and v = u*sqrt(1-m),
//   sn(u|m) = sn(v|m') / (sqrt(1-m) dn(v|m')),
//   cn(u|m) = cn(v|m') / dn(v|m'),
//   dn(u|m) = 1 / dn(v|m'),
// which keeps everything real and gives dn >= 1.  Odd/even parity in u is
// made exact by reflecting negative arguments.
inline JacobiPoint jacobi(double u, double m) {
  if (!std::isfinite(u))
    throw std::domain_error("jacobi: argument must be finite");
  if (!std::isfinite(m) || m >= 1.0)
    throw std::domain_error("jacobi: parameter must be finite and < 1");
  if (u < 0.0) {
    JacobiPoint r = jacobi(-u, m);
    r.u = u;
    r.sn = -r.sn;
    return r;
  }
  if (m < 0.0) {
    const double root = std::sqrt(1.0 - m);
    const JacobiPoint t = detail::jacobi_unit(u * root, -m / (1.0 - m));
    return {u, t.sn / (root * t.dn), t.cn / t.dn, 1.0 / t.dn};
  }
  JacobiPoint r = detail::jacobi_unit(u, m);
  r.u = u;
  return r;
}

// K(-1), the quarter period of sn(.,-1).  Computed once.
inline double quarter_period_m_minus_one() {
  static const double K = complete_K(-1.0);
  return K;
}

// Roots of cn(.,-1): chi'_k = (4k+1) K(-1), any integer k.
inline double phase_root(int k) {
  return (4.0 * static_cast<double>(k) + 1.0) * quarter_period_m_minus_one();
}

}  // namespace massgap
