#pragma once

// Finite-difference stencils shared by the residual checks.  All Green's
// equation verifications use these together with jump conditions, so delta
// sources never have to be discretized.

#include <cmath>
#include <stdexcept>
#include <utility>

namespace massgap {

// Centered second derivative, 4th order: error O(h^4 f^(6)/90).
template <class F>
double fd_second(F&& f, double x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("fd_second: degenerate step");
  return (-f(x - 2.0 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) -
          f(x + 2.0 * h)) /
         (12.0 * h * h);
}

// Centered first derivative, 4th order.
template <class F>
double fd_first(F&& f, double x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("fd_first: degenerate step");
  return (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) /
         (12.0 * h);
}

// One-sided (forward) first derivative, 4th order; used at jump points where
// only one side of the kink is smooth.
template <class F>
double fd_first_forward(F&& f, double x, double h) {
  if (!(h > 0.0))
    throw std::invalid_argument("fd_first_forward: degenerate step");
  return (-25.0 * f(x) + 48.0 * f(x + h) - 36.0 * f(x + 2.0 * h) +
          16.0 * f(x + 3.0 * h) - 3.0 * f(x + 4.0 * h)) /
         (12.0 * h);
}

template <class F>
double fd_first_backward(F&& f, double x, double h) {
  if (!(h > 0.0))
    throw std::invalid_argument("fd_first_backward: degenerate step");
  return (25.0 * f(x) - 48.0 * f(x - h) + 36.0 * f(x - 2.0 * h) -
          16.0 * f(x - 3.0 * h) + 3.0 * f(x - 4.0 * h)) /
         (12.0 * h);
}

}  // namespace massgap
