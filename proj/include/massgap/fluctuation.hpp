#pragma once

// Fluctuations about the classical wave: the Lame operator
//
//   L[w](zeta) = p^2 w''(zeta) + msq w(zeta) + 3 lambda phi^2(zeta) w(zeta),
//
// its zero mode w1 = d phi/d zeta = A cn dn (translation invariance), the
// second independent solution at msq = 0, and the stability eigenfunctions
// sn*cn with eigenvalue -3 mu^2 sqrt(lambda/2).

#include <cmath>
#include <stdexcept>

#include "massgap/elliptic.hpp"
#include "massgap/finite_difference.hpp"
#include "massgap/scalar_wave.hpp"

namespace massgap {

// w1(zeta) = d G1/d zeta = A cn(zeta,kappa) dn(zeta,kappa).
inline double zero_mode(const ScalarWaveSolution& sol, double zeta) {
  const JacobiPoint j = jacobi(zeta, sol.kappa);
  return sol.amplitude * j.cn * j.dn;
}

// Second independent solution of the msq = 0 fluctuation equation:
//
//   w2(zeta) = (1/4) (zeta dG1/dzeta + G1(zeta)).
//
// With equal coefficients on the secular and smooth parts this satisfies
// L[w2] = 0 identically and has constant Wronskian with w1 (both facts are
// what the residual and Abel tests check).
inline double second_solution(const ScalarWaveSolution& sol, double zeta) {
  if (sol.msq != 0.0)
    throw std::domain_error(
        "second_solution: closed form requires msq = 0 background");
  return 0.25 * (zeta * zero_mode(sol, zeta) + eval_G1_phase(sol, zeta));
}

// L[w] at zeta with the second derivative taken by finite differences.
template <class F>
double lame_apply(const ScalarWaveSolution& sol, F&& w, double zeta,
                  double h) {
  const double d2 = fd_second(w, zeta, h);
  const double g1 = eval_G1_phase(sol, zeta);
  return sol.p.squared() * d2 + (sol.msq + 3.0 * sol.lambda * g1 * g1) * w(zeta);
}

// Max |L[w]| over a grid spanning n_periods, normalized by the potential
// scale 3 lambda A^2 * max|w|.
template <class F>
double lame_residual(const ScalarWaveSolution& sol, F&& w, int n_points,
                     double n_periods, double h) {
  const double span = 4.0 * complete_K(sol.kappa) * n_periods;
  double worst = 0.0;
  double wmax = 0.0;
  for (int i = 0; i < n_points; ++i) {
    const double zeta = span * static_cast<double>(i) / n_points;
    worst = std::max(worst, std::abs(lame_apply(sol, w, zeta, h)));
    wmax = std::max(wmax, std::abs(w(zeta)));
  }
  const double scale =
      3.0 * sol.lambda * sol.amplitude * sol.amplitude * std::max(wmax, 1e-300);
  return worst / scale;
}

// Wronskian w1 w2' - w2 w1' by 4th-order first derivatives.
inline double wronskian_w1_w2(const ScalarWaveSolution& sol, double zeta,
                              double h) {
  const auto w1 = [&sol](double u) { return zero_mode(sol, u); };
  const auto w2 = [&sol](double u) { return second_solution(sol, u); };
  return w1(zeta) * fd_first(w2, zeta, h) - w2(zeta) * fd_first(w1, zeta, h);
}

struct StabilityResult {
  double eigenvalue = 0.0;   // -3 mu^2 sqrt(lambda/2) on shell
  double residual = 0.0;     // max |H u - eigenvalue u| / max |eigenvalue u|
  bool onshell = false;
};

// Applies H = p^2 d^2/dzeta^2 + 3 lambda phi^2 to u = sn*cn on a grid and
// compares with eigenvalue * u.  The eigenrelation holds only on shell,
// p^2 = mu^2 sqrt(lambda/2); off-shell momenta are reported as failures.
inline StabilityResult stability_eigencheck(double lambda, double mu,
                                            double p2, int n_points = 200,
                                            double h = 5e-3) {
  const ScalarWaveSolution sol = make_scalar_wave(lambda, mu);
  const double shell = dispersion_p2(lambda, mu);
  StabilityResult res;
  res.eigenvalue = -3.0 * mu * mu * std::sqrt(0.5 * lambda);
  res.onshell = std::abs(p2 - shell) <= 1e-10 * std::max(1.0, shell);

  const auto u = [](double zeta) {
    const JacobiPoint j = jacobi(zeta, -1.0);
    return j.sn * j.cn;
  };
  const double span = 4.0 * quarter_period_m_minus_one();
  double worst = 0.0;
  double umax = 0.0;
  for (int i = 0; i < n_points; ++i) {
    const double zeta = span * static_cast<double>(i) / n_points;
    const double d2 = fd_second(u, zeta, h);
    const double g1 = eval_G1_phase(sol, zeta);
    const double hu = p2 * d2 + 3.0 * lambda * g1 * g1 * u(zeta);
    worst = std::max(worst, std::abs(hu - res.eigenvalue * u(zeta)));
    umax = std::max(umax, std::abs(res.eigenvalue * u(zeta)));
  }
  res.residual = worst / std::max(umax, 1e-300);
  return res;
}

// Free-field eigenvalue lambda(p) = -(p^2 - msq) for plane waves; zero on
// shell.  Positive values occur only off the physical spectrum bound and are
// left to the caller to flag.
inline double free_field_eigencheck(const FourMomentum& p, double msq) {
  return -(p.squared() - msq);
}

}  // namespace massgap
