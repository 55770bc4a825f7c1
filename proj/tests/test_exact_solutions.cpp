#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "massgap/scalar_wave.hpp"
#include "massgap/su2.hpp"
#include "oracles.hpp"

using namespace massgap;

TEST_CASE("scalar amplitude and modulus") {
  SECTION("massless point lambda=2, mu=1") {
    const auto [amp, kappa] = scalar_amplitude_modulus(2.0, 1.0, 0.0);
    CHECK(amp == Catch::Approx(1.0).margin(1e-14));
    CHECK(kappa == Catch::Approx(-1.0).margin(1e-14));
  }
  SECTION("msq = 1 point (direct evaluation with sqrt(5))") {
    const auto [amp, kappa] = scalar_amplitude_modulus(2.0, 1.0, 1.0);
    CHECK(amp == Catch::Approx(0.78615137775742329).epsilon(1e-12));
    CHECK(kappa == Catch::Approx(-0.38196601125010515).epsilon(1e-12));
  }
  SECTION("large msq limit: amplitude -> 0, kappa -> 0-") {
    const auto [amp, kappa] = scalar_amplitude_modulus(2.0, 1.0, 1e8);
    CHECK(amp < 1e-3);
    CHECK(kappa < 0.0);
    CHECK(kappa > -1e-7);
  }
  SECTION("domain errors") {
    CHECK_THROWS_AS(scalar_amplitude_modulus(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(scalar_amplitude_modulus(1.0, 0.0), std::domain_error);
  }
}

TEST_CASE("dispersion relation") {
  CHECK(dispersion_p2(2.0, 1.0, 0.0) == Catch::Approx(1.0).margin(1e-14));
  // 1 + 2/(1+sqrt(5)) = golden ratio
  CHECK(dispersion_p2(2.0, 1.0, 1.0) ==
        Catch::Approx(1.6180339887498949).epsilon(1e-12));
  CHECK(dispersion_p2(1e-12, 1.0, 0.0) < 1e-5);  // massless free limit

  // closed form mu^2 sqrt(lambda/2) at msq=0 over random parameters
  oracle::Lcg rng;
  for (int i = 0; i < 50; ++i) {
    const double l = rng.uniform(0.05, 20.0);
    const double m = rng.uniform(0.1, 5.0);
    CAPTURE(l, m);
    CHECK(dispersion_p2(l, m) ==
          Catch::Approx(m * m * std::sqrt(0.5 * l)).epsilon(1e-12));
  }
}

TEST_CASE("scaling covariance under mu -> s mu") {
  oracle::Lcg rng;
  for (int i = 0; i < 50; ++i) {
    const double l = rng.uniform(0.1, 10.0);
    const double mu = rng.uniform(0.2, 3.0);
    const double s = rng.uniform(0.5, 2.0);
    const auto a = scalar_amplitude_modulus(l, mu);
    const auto as = scalar_amplitude_modulus(l, s * mu);
    CAPTURE(l, mu, s);
    CHECK(as.amplitude == Catch::Approx(s * a.amplitude).epsilon(1e-12));
    CHECK(dispersion_p2(l, s * mu) ==
          Catch::Approx(s * s * dispersion_p2(l, mu)).epsilon(1e-12));
  }
}

TEST_CASE("eval_G1") {
  const ScalarWaveSolution sol = make_scalar_wave(2.0, 1.0);
  CHECK(eval_G1_phase(sol, 0.0) == 0.0);
  CHECK(eval_G1_phase(sol, quarter_period_m_minus_one()) ==
        Catch::Approx(1.0).margin(1e-12));
  // periodicity
  const double T = 4.0 * complete_K(sol.kappa);
  for (double z : {0.3, 1.1, 2.9}) {
    CHECK(eval_G1_phase(sol, z + T) ==
          Catch::Approx(eval_G1_phase(sol, z)).margin(1e-12));
  }
  // odd in zeta when chi = 0
  for (double z : {0.2, 0.9, 2.2}) {
    CHECK(eval_G1_phase(sol, -z) ==
          Catch::Approx(-eval_G1_phase(sol, z)).margin(1e-14));
  }
  // spacetime evaluation goes through the same phase
  const ScalarWaveSolution trav = make_scalar_wave(2.0, 1.0, 0.0, 0.4, 0.7);
  const double zeta = trav.phase(1.2, 0.3, 0.0, 0.0);
  CHECK(eval_G1(trav, 1.2, 0.3, 0.0, 0.0) ==
        Catch::Approx(trav.amplitude * jacobi(zeta, trav.kappa).sn));
}

TEST_CASE("classical residual of the exact scalar solution") {
  const ScalarWaveSolution sol = make_scalar_wave(2.0, 1.0);

  SECTION("exact solution passes at 1e-8") {
    CHECK(max_residual_scalar(sol, 100, 1.0, 5e-3) < 1e-8);
  }
  SECTION("msq > 0 shifted equation also passes") {
    const ScalarWaveSolution shifted = make_scalar_wave(2.0, 1.0, 0.7);
    CHECK(max_residual_scalar(shifted, 100, 1.0, 5e-3) < 1e-8);
  }
  SECTION("Richardson: stencil error drops ~16x when h halves") {
    // pick the point of largest residual contribution away from roundoff
    const double z = 0.9;
    const double r1 = classical_residual_scalar(sol, z, 4e-2);
    const double r2 = classical_residual_scalar(sol, z, 2e-2);
    CHECK(r1 / r2 == Catch::Approx(16.0).margin(3.0));
  }
  SECTION("perturbed amplitude is detected") {
    ScalarWaveSolution bad = sol;
    bad.amplitude *= 1.01;
    CHECK(max_residual_scalar(bad, 100, 1.0, 5e-3) > 1e-3);
  }
  SECTION("identically zero field has zero residual") {
    ScalarWaveSolution zero = sol;
    zero.amplitude = 0.0;
    CHECK(max_residual_scalar(zero, 20, 1.0, 5e-3) == 0.0);
  }
  SECTION("degenerate step flagged") {
    CHECK_THROWS_AS(classical_residual_scalar(sol, 0.5, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(classical_residual_scalar(sol, 0.5, -1e-3),
                    std::invalid_argument);
  }
}

TEST_CASE("su2_solve Landau gauge") {
  SECTION("alpha=1, g=1, mu=1: X=Y=Z=1") {
    const auto p = FourMomentum::rest_frame(1.0);
    const SU2Ansatz a = su2_solve(p, 1.0, 1.0, 1.0);
    CHECK(a.X == Catch::Approx(1.0).margin(1e-14));
    CHECK(a.Y == Catch::Approx(1.0).margin(1e-14));
    CHECK(a.Z == Catch::Approx(1.0).margin(1e-14));
  }
  SECTION("alpha=1, g=4, mu=1: amplitudes mu/sqrt(g) = 0.5") {
    const auto p = FourMomentum::rest_frame(2.0);  // p^2 = mu^2 g = 4
    const SU2Ansatz a = su2_solve(p, 1.0, 4.0, 1.0);
    CHECK(a.X == Catch::Approx(0.5).margin(1e-14));
    CHECK(a.Y == Catch::Approx(0.5).margin(1e-14));
    CHECK(a.Z == Catch::Approx(0.5).margin(1e-14));
  }
  SECTION("alpha=1 independent of the spatial direction") {
    oracle::Lcg rng;
    for (int i = 0; i < 30; ++i) {
      const double g = rng.uniform(0.5, 3.0);
      const double mu = rng.uniform(0.5, 2.0);
      const auto p = FourMomentum::on_shell(mu * mu * g,
                                            rng.uniform(-2.0, 2.0),
                                            rng.uniform(-2.0, 2.0),
                                            rng.uniform(-2.0, 2.0));
      const SU2Ansatz a = su2_solve(p, 1.0, g, mu);
      const double expect = mu / std::sqrt(g);
      CAPTURE(g, mu);
      CHECK(a.X == Catch::Approx(expect).epsilon(1e-12));
      CHECK(a.Y == Catch::Approx(expect).epsilon(1e-12));
      CHECK(a.Z == Catch::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("su2_solve general gauge") {
  SECTION("alpha=2 with p along x: back-substitution") {
    const double g = 1.0, mu = 1.0, alpha = 2.0;
    const double p1 = 1.2;
    const auto p = FourMomentum::on_shell(mu * mu * g, p1);
    const SU2Ansatz a = su2_solve(p, alpha, g, mu);
    // r1 differs from r2 = r3
    const double gauge = (2.0 / (g * g)) * (1.0 - 1.0 / alpha);
    const double base = 2.0 * mu * mu / g;
    const double r1 = gauge * p1 * p1 + base;
    CHECK(a.Y * a.Y + a.Z * a.Z == Catch::Approx(r1).margin(1e-12));
    CHECK(a.X * a.X + a.Z * a.Z == Catch::Approx(base).margin(1e-12));
    CHECK(a.X * a.X + a.Y * a.Y == Catch::Approx(base).margin(1e-12));
    CHECK(a.Y == Catch::Approx(a.Z).margin(1e-14));
    CHECK(a.X != Catch::Approx(a.Y).margin(1e-6));
  }
  SECTION("no real ansatz for too-large spatial momentum") {
    // at alpha=2, g=mu=1: X^2 = 1 - p1^2/2 turns negative beyond sqrt(2)
    const auto p = FourMomentum::on_shell(1.0, 1.6);
    CHECK_THROWS_AS(su2_solve(p, 2.0, 1.0, 1.0), std::domain_error);
  }
  SECTION("dispersion violation rejected") {
    const FourMomentum bad{2.0, 0.0, 0.0, 0.0};  // p^2 = 4 != mu^2 g = 1
    CHECK_THROWS_AS(su2_solve(bad, 1.0, 1.0, 1.0), std::domain_error);
  }
}

TEST_CASE("su2 classical residuals") {
  SECTION("Landau solution passes at 1e-8") {
    const auto p = FourMomentum::rest_frame(1.0);
    const SU2Ansatz a = su2_solve(p, 1.0, 1.0, 1.0);
    CHECK(max_residual_su2(a, 100, 1.0, 5e-3) < 1e-8);
  }
  SECTION("general-alpha diagonal solution passes at 1e-8") {
    const auto p = FourMomentum::on_shell(1.0, 1.2);
    const SU2Ansatz a = su2_solve(p, 2.0, 1.0, 1.0);
    CHECK(max_residual_su2(a, 100, 1.0, 5e-3) < 1e-8);
  }
  SECTION("all amplitudes zero gives zero residual") {
    SU2Ansatz zero;
    zero.X = zero.Y = zero.Z = 0.0;
    zero.p = FourMomentum::rest_frame(1.0);
    CHECK(max_residual_su2(zero, 20, 1.0, 5e-3) == 0.0);
  }
  SECTION("perturbed amplitude is detected") {
    const auto p = FourMomentum::rest_frame(1.0);
    SU2Ansatz bad = su2_solve(p, 1.0, 1.0, 1.0);
    bad.X *= 1.01;
    CHECK(max_residual_su2(bad, 100, 1.0, 5e-3) > 1e-3);
  }
}
