#pragma once

// Fixed-order quadrature and deterministic compensated summation.  Series
// and convolution reductions use these so identical inputs give identical
// bytes out.

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace massgap {

// Neumaier variant of Kahan summation; order of add() calls is part of the
// contract.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }

  double value() const { return sum + comp; }
};

// Composite Simpson rule with an even number of panels.
template <class F>
double simpson(F&& f, double a, double b, int panels) {
  if (panels < 2) panels = 2;
  if (panels % 2 != 0) ++panels;
  const double h = (b - a) / panels;
  CompensatedSum acc;
  acc.add(f(a));
  acc.add(f(b));
  for (int i = 1; i < panels; ++i) {
    const double w = (i % 2 == 0) ? 2.0 : 4.0;
    acc.add(w * f(a + h * i));
  }
  return acc.value() * h / 3.0;
}

// Composite 7-point Gauss-Legendre: near machine precision once the panel
// width resolves the integrand's oscillation, at 7 evaluations per panel.
template <class F>
double gauss7(F&& f, double a, double b, int panels) {
  static constexpr double kNode[7] = {
      -0.94910791234275852452618968404785126,
      -0.74153118559939443986386477328078840,
      -0.40584515137739716690660641207696146,
      0.0,
      0.40584515137739716690660641207696146,
      0.74153118559939443986386477328078840,
      0.94910791234275852452618968404785126};
  static constexpr double kWeight[7] = {
      0.12948496616886969327061143267908202,
      0.27970539148927666790146777142377958,
      0.38183005050511894495036977548897513,
      0.41795918367346938775510204081632653,
      0.38183005050511894495036977548897513,
      0.27970539148927666790146777142377958,
      0.12948496616886969327061143267908202};
  if (panels < 1) panels = 1;
  const double h = (b - a) / panels;
  CompensatedSum acc;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (int q = 0; q < 7; ++q)
      acc.add(kWeight[q] * f(mid + 0.5 * h * kNode[q]));
  }
  return acc.value() * 0.5 * h;
}

}  // namespace massgap
