#pragma once

// The exact classical wave family of the massless quartic scalar field,
//
//   phi(x) = A sn(p.x + chi, kappa),
//   A^2    = 2 mu^4 / (msq + sqrt(msq^2 + 2 lambda mu^4)),
//   kappa  = (-msq + sqrt(msq^2 + 2 lambda mu^4)) /
//            (-msq - sqrt(msq^2 + 2 lambda mu^4)),
//   p^2    = msq + lambda mu^4 / (msq + sqrt(msq^2 + 2 lambda mu^4)),
//
// where mu and chi are integration constants and msq >= 0 is the two-point
// mass correction (msq = 3 lambda G2(0); zero for the consistent phase
// choice).  At msq = 0 this reduces to A = mu (2/lambda)^(1/4), kappa = -1,
// p^2 = mu^2 sqrt(lambda/2).
//
// phi solves d^2 phi + msq phi + lambda phi^3 = 0; since the dependence on x
// is only through the phase zeta, the operator reduces to p^2 d^2/dzeta^2
// and all residuals are checked on the zeta line.

#include <cmath>
#include <stdexcept>

#include "massgap/elliptic.hpp"
#include "massgap/finite_difference.hpp"
#include "massgap/four_momentum.hpp"

namespace massgap {

struct AmplitudeModulus {
  double amplitude;
  double kappa;
};

namespace detail {

inline void require_scalar_params(double lambda, double mu, double msq) {
  if (!(lambda > 0.0))
    throw std::domain_error("scalar wave: coupling lambda must be > 0");
  if (!(mu > 0.0)) throw std::domain_error("scalar wave: scale mu must be > 0");
  if (!(msq >= 0.0))
    throw std::domain_error("scalar wave: mass correction msq must be >= 0");
}

}  // namespace detail

// Amplitude A > 0 and elliptic parameter kappa in [-1, 0) of the wave.
inline AmplitudeModulus scalar_amplitude_modulus(double lambda, double mu,
                                                 double msq = 0.0) {
  detail::require_scalar_params(lambda, mu, msq);
  const double mu4 = mu * mu * mu * mu;
  const double s = std::sqrt(msq * msq + 2.0 * lambda * mu4);
  const double amplitude = std::sqrt(2.0 * mu4 / (msq + s));
  const double kappa = (-msq + s) / (-msq - s);
  return {amplitude, kappa};
}

// Mass-shell value p^2 required by the wave; mu^2 sqrt(lambda/2) at msq = 0.
inline double dispersion_p2(double lambda, double mu, double msq = 0.0) {
  detail::require_scalar_params(lambda, mu, msq);
  const double mu4 = mu * mu * mu * mu;
  const double s = std::sqrt(msq * msq + 2.0 * lambda * mu4);
  return msq + lambda * mu4 / (msq + s);
}

struct ScalarWaveSolution {
  double lambda = 2.0;
  double mu = 1.0;
  double msq = 0.0;
  double chi = 0.0;
  FourMomentum p;
  double amplitude = 1.0;
  double kappa = -1.0;

  double phase(double t, double x, double y, double z) const {
    return p.dot(t, x, y, z) + chi;
  }

  double value_at_phase(double zeta) const {
    return amplitude * jacobi(zeta, kappa).sn;
  }
};

// Builds the wave with the spatial momentum given and the energy fixed by
// the dispersion relation.
inline ScalarWaveSolution make_scalar_wave(double lambda, double mu,
                                           double msq = 0.0, double chi = 0.0,
                                           double px = 0.0, double py = 0.0,
                                           double pz = 0.0) {
  ScalarWaveSolution sol;
  sol.lambda = lambda;
  sol.mu = mu;
  sol.msq = msq;
  sol.chi = chi;
  const AmplitudeModulus am = scalar_amplitude_modulus(lambda, mu, msq);
  sol.amplitude = am.amplitude;
  sol.kappa = am.kappa;
  sol.p = FourMomentum::on_shell(dispersion_p2(lambda, mu, msq), px, py, pz);
  return sol;
}

inline double eval_G1(const ScalarWaveSolution& sol, double t, double x,
                      double y, double z) {
  return sol.value_at_phase(sol.phase(t, x, y, z));
}

inline double eval_G1_phase(const ScalarWaveSolution& sol, double zeta) {
  return sol.value_at_phase(zeta);
}

// |d^2 phi + msq phi + lambda phi^3| at phase zeta, the second derivative
// taken by the 4th-order stencil along the wave coordinate.
inline double classical_residual_scalar(const ScalarWaveSolution& sol,
                                        double zeta, double h) {
  if (!(h > 0.0) || h < 1e-7)
    throw std::invalid_argument(
        "classical_residual_scalar: degenerate step h");
  const auto f = [&sol](double u) { return sol.value_at_phase(u); };
  const double d2 = fd_second(f, zeta, h);
  const double v = f(zeta);
  return std::abs(sol.p.squared() * d2 + sol.msq * v +
                  sol.lambda * v * v * v);
}

// Max residual over an n-point grid covering n_periods of the wave,
// normalized by the nonlinear scale lambda*A^3.
inline double max_residual_scalar(const ScalarWaveSolution& sol, int n_points,
                                  double n_periods, double h) {
  const double period = 4.0 * complete_K(sol.kappa) * n_periods;
  double worst = 0.0;
  for (int i = 0; i < n_points; ++i) {
    const double zeta = period * static_cast<double>(i) / n_points;
    worst = std::max(worst, classical_residual_scalar(sol, zeta, h));
  }
  const double a3 = sol.amplitude * sol.amplitude * sol.amplitude;
  return worst / std::max(sol.lambda * a3, 1e-300);
}

}  // namespace massgap
