#pragma once

// Exact diagonal solutions of the classical SU(2) Yang-Mills equations,
//
//   A^1_1 = X sn(p.x + chi, -1),  A^2_2 = Y sn(...),  A^3_3 = Z sn(...),
//
// with dispersion p^2 = mu^2 g.  Substituting the ansatz turns the three
// diagonal component equations into the linear system
//
//   Y^2 + Z^2 = r1,  X^2 + Z^2 = r2,  X^2 + Y^2 = r3,
//   r_i = (2/g^2)(1 - 1/alpha) p_i^2 + 2 mu^2 / g,
//
// solved by X^2 = S - r1, Y^2 = S - r2, Z^2 = S - r3 with
// S = (r1 + r2 + r3)/2.  In the Landau gauge (alpha = 1) this collapses to
// X = Y = Z = mu / sqrt(g).  The nonnegative amplitude branch is returned.

#include <array>
#include <cmath>
#include <stdexcept>

#include "massgap/elliptic.hpp"
#include "massgap/finite_difference.hpp"
#include "massgap/four_momentum.hpp"

namespace massgap {

struct SU2Ansatz {
  double X = 0.0;
  double Y = 0.0;
  double Z = 0.0;
  FourMomentum p;
  double alpha = 1.0;
  double g = 1.0;
  double mu = 1.0;
  double chi = 0.0;

  std::array<double, 3> amplitudes() const { return {X, Y, Z}; }
};

inline SU2Ansatz su2_solve(const FourMomentum& p, double alpha, double g,
                           double mu, double chi = 0.0) {
  if (!(alpha > 0.0)) throw std::domain_error("su2_solve: alpha must be > 0");
  if (!(g > 0.0)) throw std::domain_error("su2_solve: coupling g must be > 0");
  if (!(mu > 0.0)) throw std::domain_error("su2_solve: scale mu must be > 0");
  const double shell = mu * mu * g;
  if (std::abs(p.squared() - shell) > 1e-10 * std::max(1.0, std::abs(shell)))
    throw std::domain_error(
        "su2_solve: momentum violates the dispersion relation p^2 = mu^2 g");

  const double gauge = (2.0 / (g * g)) * (1.0 - 1.0 / alpha);
  const double base = 2.0 * mu * mu / g;
  const double r1 = gauge * p.p1 * p.p1 + base;
  const double r2 = gauge * p.p2 * p.p2 + base;
  const double r3 = gauge * p.p3 * p.p3 + base;
  const double S = 0.5 * (r1 + r2 + r3);

  std::array<double, 3> sq = {S - r1, S - r2, S - r3};
  for (double& v : sq) {
    if (v < -1e-12 * S)
      throw std::domain_error(
          "su2_solve: no real diagonal ansatz for this gauge/momentum "
          "choice (negative amplitude squared)");
    v = std::max(v, 0.0);
  }

  SU2Ansatz a;
  a.X = std::sqrt(sq[0]);
  a.Y = std::sqrt(sq[1]);
  a.Z = std::sqrt(sq[2]);
  a.p = p;
  a.alpha = alpha;
  a.g = g;
  a.mu = mu;
  a.chi = chi;
  return a;
}

// Max over the three diagonal component equations of the finite-difference
// residual at phase zeta, relative to the cubic-term scale.  Component i
// reduces on the zeta line to
//   [p^2 + (1 - 1/alpha) p_i^2] W_i sn'' + g^2 (S - W_i^2) W_i sn^3 = 0.
inline double classical_residual_su2(const SU2Ansatz& a, double zeta,
                                     double h) {
  if (!(h > 0.0) || h < 1e-7)
    throw std::invalid_argument("classical_residual_su2: degenerate step h");
  const std::array<double, 3> w = a.amplitudes();
  const std::array<double, 3> psp = {a.p.p1 * a.p.p1, a.p.p2 * a.p.p2,
                                     a.p.p3 * a.p.p3};
  const double S = w[0] * w[0] + w[1] * w[1] + w[2] * w[2];
  const double p2 = a.p.squared();
  const double gauge = 1.0 - 1.0 / a.alpha;

  const auto sn_of = [](double u) { return jacobi(u, -1.0).sn; };
  const double d2sn = fd_second(sn_of, zeta, h);
  const double snv = sn_of(zeta);

  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (w[i] == 0.0) continue;
    const double wi = w[i];
    // component equation: c_i W_i sn'' + g^2 (W_j^2 + W_k^2) W_i sn^3 = 0
    const double cubic = a.g * a.g * (S - wi * wi);
    const double r = (p2 + gauge * psp[i]) * wi * d2sn +
                     cubic * wi * snv * snv * snv;
    const double scale = cubic * wi;
    worst = std::max(worst, std::abs(r) / std::max(scale, 1e-300));
  }
  return worst;
}

// Grid version covering n_periods of the wave.
inline double max_residual_su2(const SU2Ansatz& a, int n_points,
                               double n_periods, double h) {
  const double span = 4.0 * quarter_period_m_minus_one() * n_periods;
  double worst = 0.0;
  for (int i = 0; i < n_points; ++i) {
    const double zeta = span * static_cast<double>(i) / n_points;
    worst = std::max(worst, classical_residual_su2(a, zeta, h));
  }
  return worst;
}

}  // namespace massgap
