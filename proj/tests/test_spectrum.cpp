#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "massgap/spectrum.hpp"
#include "oracles.hpp"

using namespace massgap;

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

TEST_CASE("mass spectrum") {
  // m_0 = pi/(2 K(-1)) at lambda=2, mu=1
  CHECK(mass_n(0, 2.0, 1.0) == Catch::Approx(1.1981402347355922).epsilon(1e-12));
  CHECK(mass_n(1, 2.0, 1.0) == Catch::Approx(3.5944207042067766).epsilon(1e-12));

  SECTION("odd-integer ratios are exact") {
    for (int n = 0; n <= 25; ++n) {
      CAPTURE(n);
      CHECK(mass_n(n, 2.0, 1.0) / mass_n(0, 2.0, 1.0) ==
            Catch::Approx(2.0 * n + 1.0).epsilon(1e-14));
    }
  }
  SECTION("(lambda/2)^(1/4) scaling: lambda x16 doubles the masses") {
    CHECK(mass_n(3, 32.0, 1.0) ==
          Catch::Approx(2.0 * mass_n(3, 2.0, 1.0)).epsilon(1e-14));
  }
  SECTION("index validation") {
    CHECK_THROWS_AS(mass_n(-1, 2.0, 1.0), std::domain_error);
  }
}

TEST_CASE("spectral weights") {
  CHECK(weight_n(0) == Catch::Approx(0.68547465780984447).margin(1e-4));
  // oracle-frozen: B_5 is ~1.3e-5 (not yet below 1e-6; B_6 is)
  CHECK(weight_n(5) == Catch::Approx(1.3039723340194506e-05).epsilon(1e-10));
  CHECK(weight_n(6) < 1e-6);

  SECTION("weights sum to one") {
    CompensatedSum s;
    for (int n = 0; n <= 20; ++n) s.add(weight_n(n));
    CHECK(std::abs(s.value() - 1.0) < 1e-6);
  }
  SECTION("partial sums increase monotonically from below") {
    double prev = 0.0;
    for (int n = 0; n <= 20; ++n) {
      const double cur = prev + weight_n(n);
      // terms beyond ~n=12 fall below one ulp of the sum
      if (weight_n(n) > 1e-15)
        CHECK(cur > prev);
      else
        CHECK(cur >= prev);
      CHECK(cur < 1.0 + 1e-12);
      prev = cur;
    }
  }
  SECTION("decay bound B_n <= 3.44 (2n+1)^2 e^{-(2n+1)pi/2}") {
    for (int n = 0; n <= 30; ++n) {
      const double odd = 2.0 * n + 1.0;
      CAPTURE(n);
      CHECK(weight_n(n) <= 3.44 * odd * odd * std::exp(-0.5 * odd * kPi));
    }
  }
  SECTION("tail bound dominates the actual tail") {
    double tail = 0.0;
    for (int n = 21; n <= 60; ++n) tail += weight_n(n);
    CHECK(tail < weight_tail_bound(20));
  }
}

TEST_CASE("momentum-space propagator") {
  SECTION("p^2 = 0 at lambda=2, mu=1: real part -0.5") {
    const auto v = propagator_momentum(0.0, 2.0, 1.0, 1e-9, 20);
    CHECK(v.value.real() == Catch::Approx(-0.5).margin(1e-3));
    CHECK_FALSE(v.near_pole);
  }
  SECTION("large p^2 approaches 1/p^2") {
    const double m0 = mass_n(0, 2.0, 1.0);
    // oracle-frozen: p^2 G2 = 1.04906 at p^2 = 100 m0^2 (deviation ~4.9%,
    // set by sum_n B_n m_n^2 = 6 mu^2 at lambda = 2)
    const double p2a = 100.0 * m0 * m0;
    const auto va = propagator_momentum(p2a, 2.0, 1.0, 1e-9, 40);
    CHECK(p2a * va.value.real() == Catch::Approx(1.0490572057354111).margin(1e-4));
    // ... and the deviation halves when p^2 doubles
    const double p2b = 2.0 * p2a;
    const auto vb = propagator_momentum(p2b, 2.0, 1.0, 1e-9, 40);
    const double da = p2a * va.value.real() - 1.0;
    const double db = p2b * vb.value.real() - 1.0;
    CHECK(da / db == Catch::Approx(2.0).margin(0.1));
  }
  SECTION("residue at the first pole is B_0") {
    const double m0 = mass_n(0, 2.0, 1.0);
    const double d = 1e-7;
    const auto v = propagator_momentum(m0 * m0 + d, 2.0, 1.0, 1e-15, 20);
    CHECK(v.value.real() * d == Catch::Approx(weight_n(0)).margin(1e-5));
    CHECK(v.near_pole == false);
    const auto close = propagator_momentum(m0 * m0 + 1e-12, 2.0, 1.0, 1e-9, 20);
    CHECK(close.near_pole);
  }
  SECTION("spacelike p^2 < 0 is real and negative as epsilon -> 0") {
    oracle::Lcg rng;
    for (int i = 0; i < 30; ++i) {
      const double p2 = -rng.uniform(0.01, 100.0);
      const auto v = propagator_momentum(p2, 2.0, 1.0, 1e-13, 25);
      CAPTURE(p2);
      CHECK(v.value.real() < 0.0);
      CHECK(std::abs(v.value.imag()) < 1e-10);
    }
  }
  SECTION("tail bound covers the truncation error") {
    const auto coarse = propagator_momentum(-3.0, 2.0, 1.0, 1e-12, 4);
    const auto fine = propagator_momentum(-3.0, 2.0, 1.0, 1e-12, 40);
    CHECK(std::abs(coarse.value.real() - fine.value.real()) <
          coarse.tail_bound);
  }
}

TEST_CASE("rest-frame position kernel") {
  const double lambda = 2.0, mu = 1.0;
  SECTION("theta support and continuity at 0") {
    CHECK(position_kernel_rest_frame(-0.5, lambda, mu, 0) == 0.0);
    CHECK(position_kernel_rest_frame(-1e-12, lambda, mu, 0) == 0.0);
    CHECK(std::abs(position_kernel_rest_frame(1e-9, lambda, mu, 0)) < 1e-8);
  }
  SECTION("periodicity 4K/omega in t") {
    const double omega = std::pow(0.5 * lambda, 0.25) * mu;
    const double T = 4.0 * quarter_period_m_minus_one() / omega;
    for (double t : {0.4, 1.3, 2.8}) {
      CAPTURE(t);
      CHECK(position_kernel_rest_frame(t + T, lambda, mu, 0) ==
            Catch::Approx(position_kernel_rest_frame(t, lambda, mu, 0))
                .margin(1e-12));
    }
  }
  SECTION("phase index only shifts by full periods") {
    for (double t : {0.7, 1.9}) {
      CHECK(position_kernel_rest_frame(t, lambda, mu, 1) ==
            Catch::Approx(position_kernel_rest_frame(t, lambda, mu, 0))
                .margin(1e-12));
    }
  }
}

TEST_CASE("Green's function jump") {
  SECTION("unit jump and homogeneous residual, k in {0,1,2}") {
    for (int k : {0, 1, 2}) {
      CAPTURE(k);
      const GreensJump g = greens_jump_check(2.0, 1.0, k);
      CHECK(std::abs(g.jump - 1.0) < 1e-8);
      CHECK(g.ode_residual < 1e-8);
    }
  }
  SECTION("jump is 1 for any lambda, mu") {
    oracle::Lcg rng;
    for (int i = 0; i < 10; ++i) {
      const double l = rng.uniform(0.3, 10.0);
      const double m = rng.uniform(0.4, 2.5);
      CAPTURE(l, m);
      CHECK(std::abs(greens_jump_check(l, m, 0).jump - 1.0) < 1e-8);
    }
  }
}

TEST_CASE("kappa0") {
  SECTION("value") {
    CHECK(kappa0() == Catch::Approx(1.215018785).margin(1e-8));
  }
  SECTION("two independent routes agree") {
    CHECK(std::abs(kappa0() - kappa0_closed_form()) < 1e-10);
  }
  SECTION("convergence of partial sums") {
    CHECK(kappa0_partial(3) == Catch::Approx(1.2097618817099061).margin(1e-12));
    CHECK(std::abs(kappa0_partial(3) - 1.2101) < 1e-3);
    CHECK(kappa0_partial(0) == Catch::Approx(0.19926840766919334).margin(1e-12));
  }
}

TEST_CASE("dimensional regularization of the coincident loop") {
  const double lambda = 2.0, mu = 1.0;
  const RegularizationResult r = dimreg_I2(lambda, mu, 1.0);

  SECTION("pole coefficient equals the series oracle") {
    // independent accumulation order, long doubles
    long double acc = 0.0L;
    for (int n = 40; n >= 0; --n) {
      const long double m2 =
          static_cast<long double>(mass_n(n, lambda, mu)) * mass_n(n, lambda, mu);
      acc += static_cast<long double>(weight_n(n)) * m2;
    }
    const double expected =
        static_cast<double>(acc / (16.0L * kPi * kPi));
    CHECK(r.pole_coefficient == Catch::Approx(expected).margin(1e-8));
    // oracle-frozen absolute value (the closed form
    // kappa0 pi^3/(256 K^5) sqrt(lambda/2) mu^2)
    CHECK(r.pole_coefficient ==
          Catch::Approx(0.037995443865876664).margin(1e-8));
  }
  SECTION("sum B_n m_n^2 = 6 mu^2 sqrt(lambda/2) (exact resummation)") {
    CHECK(r.pole_coefficient * 16.0 * kPi * kPi ==
          Catch::Approx(6.0).margin(1e-10));
  }
  SECTION("printed coefficient differs by exactly sqrt(2)") {
    const double printed = dimreg_pole_printed_coefficient(lambda, mu);
    CHECK(printed / r.pole_coefficient ==
          Catch::Approx(std::sqrt(2.0)).epsilon(1e-10));
  }
  SECTION("pole coefficient independent of the renormalization scale") {
    const RegularizationResult r2 = dimreg_I2(lambda, mu, 7.3);
    CHECK(r2.pole_coefficient == r.pole_coefficient);
  }
  SECTION("scale doubling shifts the finite part by 2 ln2 * pole") {
    const RegularizationResult r2 = dimreg_I2(lambda, mu, 2.0);
    CHECK(r2.finite_part - r.finite_part ==
          Catch::Approx(2.0 * std::log(2.0) * r.pole_coefficient)
              .epsilon(1e-10));
  }
  SECTION("mass-correction coefficient vs the printed 0.11400") {
    // m^2 eps / (lambda^{3/2} mu^2) from the series route, against the
    // printed 3 pi^3 kappa0 / (256 K^5) = 0.11399; ratio is the same sqrt(2)
    const double series_coeff =
        3.0 * lambda * r.pole_coefficient / (std::pow(lambda, 1.5) * mu * mu);
    const double printed = 3.0 * kPi * kPi * kPi * kappa0() /
                           (256.0 * std::pow(quarter_period_m_minus_one(), 5));
    CHECK(printed == Catch::Approx(0.11400).margin(2e-5));
    CHECK(printed / series_coeff == Catch::Approx(std::sqrt(2.0)).epsilon(1e-10));
  }
}

TEST_CASE("mass correction") {
  CHECK(mass_correction(2.0, 0.0).value == 0.0);
  CHECK(mass_correction(2.0, 0.1).value == Catch::Approx(0.6).epsilon(1e-15));
  const MassCorrection m = mass_correction(1.0, -0.5);
  CHECK(m.value == Catch::Approx(-1.5).epsilon(1e-15));
  CHECK(m.negative_flagged);
  CHECK_FALSE(mass_correction(2.0, 0.1).negative_flagged);
}
