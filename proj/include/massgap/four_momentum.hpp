#pragma once

// Four-momentum with metric signature (+,-,-,-).  The wave phase used
// throughout is zeta = p.x + chi = p0*t - p1*x - p2*y - p3*z + chi.

#include <cmath>
#include <stdexcept>

namespace massgap {

struct FourMomentum {
  double p0 = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;

  double squared() const { return p0 * p0 - p1 * p1 - p2 * p2 - p3 * p3; }

  double spatial_squared() const { return p1 * p1 + p2 * p2 + p3 * p3; }

  // Minkowski product p.x at the spacetime point (t, x, y, z).
  double dot(double t, double x, double y, double z) const {
    return p0 * t - p1 * x - p2 * y - p3 * z;
  }

  static FourMomentum rest_frame(double energy) {
    return {energy, 0.0, 0.0, 0.0};
  }

  // Energy fixed from the invariant mass-shell value p^2 = p2_target.
  static FourMomentum on_shell(double p2_target, double px, double py = 0.0,
                               double pz = 0.0) {
    const double e2 = p2_target + px * px + py * py + pz * pz;
    if (e2 < 0.0)
      throw std::domain_error(
          "FourMomentum::on_shell: negative energy squared");
    return {std::sqrt(e2), px, py, pz};
  }
};

}  // namespace massgap
