#pragma once

// Dynamical verification of the classical wave: velocity-Verlet evolution of
// d^2 phi + lambda phi^3 = 0 from exact elliptic initial data, either as the
// rest-frame oscillator (dim 0) or on a periodic 1+1D lattice (dim 1), plus
// the spectral mass-gap measurement on the recorded probe series.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "massgap/elliptic.hpp"
#include "massgap/fft.hpp"
#include "massgap/quadrature.hpp"
#include "massgap/scalar_wave.hpp"

namespace massgap {

struct TimeSeries {
  std::vector<double> samples;  // phi at the probe site
  double sample_dt = 0.0;
};

struct LatticeRunConfig {
  int dim = 0;              // 0: rest-frame ODE, 1: 1+1D lattice
  double lambda = 2.0;
  double mu = 1.0;
  double chi = 0.0;
  double periods = 10.0;    // run length in fundamental wave periods
  int steps_per_period = 1024;   // dim 0: dt = T / steps_per_period
  int sites_per_wavelength = 512;  // dim 1 spatial resolution
  int wavelengths = 1;      // dim 1 domain size (integer, periodic)
  double dt_frac = 0.25;    // dim 1: dt = dt_frac * spacing
  double p1 = 1.0;          // dim 1 spatial momentum of the traveling wave
  double initial_scale = 1.0;  // multiplies the exact initial data
  std::size_t target_samples = 0;  // power of two; 0 = record every step
  int probe_site = 0;
};

struct LatticeRunSummary {
  TimeSeries series;
  double initial_energy = 0.0;
  double final_energy = 0.0;
  double max_energy_drift = 0.0;  // max_t |E(t) - E(0)| / |E(0)|
  double linf_error = 0.0;        // field vs the exact solution, all samples
  double t_final = 0.0;           // simulated time
  std::int64_t steps = 0;
  double dt = 0.0;
  double spacing = 0.0;           // dim 1 only
  int n_sites = 1;
};

// Energy of the rest-frame oscillator.
inline double oscillator_energy(double phi, double pi_, double lambda) {
  return 0.5 * pi_ * pi_ + 0.25 * lambda * phi * phi * phi * phi;
}

// Lattice energy sum_i a [ pi^2/2 + ((phi_{i+1}-phi_i)/a)^2/2 +
// lambda phi^4/4 ] with periodic wrap (uniform grid, so the trapezoidal and
// rectangle sums coincide).
inline double lattice_energy(const std::vector<double>& phi,
                             const std::vector<double>& pi_, double spacing,
                             double lambda) {
  const std::size_t n = phi.size();
  CompensatedSum acc;
  for (std::size_t i = 0; i < n; ++i) {
    const double grad = (phi[(i + 1) % n] - phi[i]) / spacing;
    acc.add(0.5 * pi_[i] * pi_[i] + 0.5 * grad * grad +
            0.25 * lambda * phi[i] * phi[i] * phi[i] * phi[i]);
  }
  return acc.value() * spacing;
}

namespace detail {

inline std::size_t floor_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p * 2 <= n) p *= 2;
  return p;
}

}  // namespace detail

// Velocity-Verlet run.  Throws on CFL violation (dim 1) and aborts with a
// diagnostic when |phi| exceeds 1e3 times the wave amplitude.
inline LatticeRunSummary evolve(const LatticeRunConfig& cfg) {
  const ScalarWaveSolution sol =
      make_scalar_wave(cfg.lambda, cfg.mu, 0.0, cfg.chi,
                       cfg.dim == 1 ? cfg.p1 : 0.0);
  const double amp = sol.amplitude;
  const double blowup = 1e3 * amp;
  const double K = quarter_period_m_minus_one();

  LatticeRunSummary out;

  if (cfg.dim == 0) {
    const double omega = std::pow(0.5 * cfg.lambda, 0.25) * cfg.mu;
    const double T = 4.0 * K / omega;
    if (cfg.steps_per_period < 8)
      throw std::invalid_argument("evolve: steps_per_period too small");
    const double dt = T / cfg.steps_per_period;
    const std::int64_t n_steps = static_cast<std::int64_t>(
        std::llround(cfg.periods * cfg.steps_per_period));

    std::int64_t stride = 1;
    if (cfg.target_samples > 0) {
      stride = std::max<std::int64_t>(
          1, n_steps / static_cast<std::int64_t>(cfg.target_samples));
    }

    double phi = cfg.initial_scale * sol.value_at_phase(cfg.chi);
    double pi_ = cfg.initial_scale * omega * amp * [&] {
      const JacobiPoint j = jacobi(cfg.chi, -1.0);
      return j.cn * j.dn;
    }();
    const double e0 = oscillator_energy(phi, pi_, cfg.lambda);
    out.initial_energy = e0;
    out.series.sample_dt = dt * static_cast<double>(stride);

    double acc = -cfg.lambda * phi * phi * phi;
    for (std::int64_t s = 0; s < n_steps; ++s) {
      if (s % stride == 0) {
        out.series.samples.push_back(phi);
        const double e = oscillator_energy(phi, pi_, cfg.lambda);
        out.max_energy_drift = std::max(
            out.max_energy_drift, std::abs(e - e0) / std::max(std::abs(e0), 1e-300));
        if (cfg.initial_scale == 1.0) {
          const double t = dt * static_cast<double>(s);
          const double exact = sol.value_at_phase(omega * t + cfg.chi);
          out.linf_error = std::max(out.linf_error, std::abs(phi - exact));
        }
      }
      pi_ += 0.5 * dt * acc;
      phi += dt * pi_;
      acc = -cfg.lambda * phi * phi * phi;
      pi_ += 0.5 * dt * acc;
      if (std::abs(phi) > blowup)
        throw std::runtime_error(
            "evolve: blow-up detected at step " + std::to_string(s) +
            ", |phi| > 1e3 * amplitude");
    }
    out.final_energy = oscillator_energy(phi, pi_, cfg.lambda);
    out.steps = n_steps;
    out.dt = dt;
    out.t_final = dt * static_cast<double>(n_steps);
    out.n_sites = 1;
    return out;
  }

  if (cfg.dim != 1) throw std::invalid_argument("evolve: dim must be 0 or 1");

  // traveling wave on a periodic domain of an integer number of wavelengths
  if (!(cfg.p1 > 0.0))
    throw std::invalid_argument("evolve: traveling wave needs p1 > 0");
  const double wavelength = 4.0 * K / cfg.p1;
  const int n = cfg.sites_per_wavelength * cfg.wavelengths;
  const double spacing = wavelength * cfg.wavelengths / n;
  const double dt = cfg.dt_frac * spacing;
  if (!(dt < 0.5 * spacing))
    throw std::invalid_argument("evolve: CFL bound dt < spacing/2 violated");
  const double p0 = sol.p.p0;
  const double T = 4.0 * K / p0;
  const std::int64_t n_steps =
      static_cast<std::int64_t>(std::llround(cfg.periods * T / dt));

  std::int64_t stride = 1;
  if (cfg.target_samples > 0)
    stride = std::max<std::int64_t>(
        1, n_steps / static_cast<std::int64_t>(cfg.target_samples));

  std::vector<double> phi(n), pi_(n), acc(n);
  for (int i = 0; i < n; ++i) {
    const double x = spacing * i;
    phi[i] = cfg.initial_scale * eval_G1(sol, 0.0, x, 0.0, 0.0);
    // d phi/dt = p0 * A * cn dn at the site phase
    const JacobiPoint j = jacobi(sol.phase(0.0, x, 0.0, 0.0), -1.0);
    pi_[i] = cfg.initial_scale * p0 * amp * j.cn * j.dn;
  }
  const auto accel = [&](const std::vector<double>& f, std::vector<double>& a) {
    for (int i = 0; i < n; ++i) {
      const double lap = (f[(i + 1) % n] - 2.0 * f[i] + f[(i + n - 1) % n]) /
                         (spacing * spacing);
      a[i] = lap - cfg.lambda * f[i] * f[i] * f[i];
    }
  };
  accel(phi, acc);
  const double e0 = lattice_energy(phi, pi_, spacing, cfg.lambda);
  out.initial_energy = e0;
  out.series.sample_dt = dt * static_cast<double>(stride);
  const int probe = ((cfg.probe_site % n) + n) % n;

  for (std::int64_t s = 0; s < n_steps; ++s) {
    if (s % stride == 0) {
      out.series.samples.push_back(phi[probe]);
      const double e = lattice_energy(phi, pi_, spacing, cfg.lambda);
      out.max_energy_drift =
          std::max(out.max_energy_drift,
                   std::abs(e - e0) / std::max(std::abs(e0), 1e-300));
      if (cfg.initial_scale == 1.0) {
        const double t = dt * static_cast<double>(s);
        for (int i = 0; i < n; ++i) {
          const double exact = eval_G1(sol, t, spacing * i, 0.0, 0.0);
          out.linf_error = std::max(out.linf_error, std::abs(phi[i] - exact));
        }
      }
    }
    for (int i = 0; i < n; ++i) pi_[i] += 0.5 * dt * acc[i];
    for (int i = 0; i < n; ++i) phi[i] += dt * pi_[i];
    accel(phi, acc);
    for (int i = 0; i < n; ++i) pi_[i] += 0.5 * dt * acc[i];
    if (std::abs(phi[probe]) > blowup)
      throw std::runtime_error("evolve: blow-up detected at step " +
                               std::to_string(s));
  }
  out.final_energy = lattice_energy(phi, pi_, spacing, cfg.lambda);
  out.steps = n_steps;
  out.dt = dt;
  out.spacing = spacing;
  out.n_sites = n;
  out.t_final = dt * static_cast<double>(n_steps);
  return out;
}

struct MassGapMeasurement {
  double omega_fundamental = 0.0;
  double omega_secondary = 0.0;       // nearest peak to 3x fundamental
  double power_ratio_secondary = 0.0; // P(3 m0) / P(m0)
  double even_harmonic_ratio = 0.0;   // P(2 m0) / P(m0)
  double periods_spanned = 0.0;
};

// Windowed-FFT frequency estimate of the dominant oscillation.  The series
// must span at least min_periods of the measured fundamental (the check is
// necessarily a posteriori, since the period is what is being measured).
inline MassGapMeasurement measure_mass_gap(const TimeSeries& series,
                                           double min_periods = 32.0) {
  if (series.samples.size() < 64 || !(series.sample_dt > 0.0))
    throw std::invalid_argument("measure_mass_gap: series too short");
  std::vector<double> samples = series.samples;
  const std::size_t n2 = detail::floor_pow2(samples.size());
  samples.resize(n2);

  const std::vector<double> power = windowed_power_spectrum(samples);
  const double pi = 3.14159265358979323846264338327950288;
  const double bin_to_omega =
      2.0 * pi / (series.sample_dt * static_cast<double>(n2));

  MassGapMeasurement out;
  const double kfund = refine_peak_bin(power, 1, power.size());
  out.omega_fundamental = kfund * bin_to_omega;
  out.periods_spanned = series.sample_dt * static_cast<double>(n2) *
                        out.omega_fundamental / (2.0 * pi);
  // 1% slack: the span check uses the measured frequency, which itself
  // carries interpolation error
  if (out.periods_spanned < min_periods * 0.99)
    throw std::invalid_argument(
        "measure_mass_gap: series spans fewer periods than required (" +
        std::to_string(out.periods_spanned) + " < " +
        std::to_string(min_periods) + ")");

  const std::size_t k0 = static_cast<std::size_t>(std::llround(kfund));
  const auto band = [&](double center_mult) {
    const std::size_t lo = static_cast<std::size_t>(
        std::llround(kfund * (center_mult - 0.5)));
    const std::size_t hi = static_cast<std::size_t>(
        std::llround(kfund * (center_mult + 0.5)));
    return std::pair<std::size_t, std::size_t>(std::max<std::size_t>(lo, 1),
                                               hi);
  };
  const auto [lo3, hi3] = band(3.0);
  if (hi3 <= power.size()) {
    const double k3 = refine_peak_bin(power, lo3, hi3);
    out.omega_secondary = k3 * bin_to_omega;
    std::size_t k3i = static_cast<std::size_t>(std::llround(k3));
    out.power_ratio_secondary = power[k3i] / power[k0];
  }
  // even harmonic: max power in a narrow band around 2x the fundamental
  const std::size_t lo2 = static_cast<std::size_t>(std::llround(kfund * 1.75));
  const std::size_t hi2 = static_cast<std::size_t>(std::llround(kfund * 2.25));
  if (hi2 <= power.size() && lo2 < hi2) {
    std::size_t kbest = lo2;
    for (std::size_t k = lo2; k < hi2; ++k)
      if (power[k] > power[kbest]) kbest = k;
    out.even_harmonic_ratio = power[kbest] / power[k0];
  }
  return out;
}

}  // namespace massgap
