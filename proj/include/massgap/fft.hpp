#pragma once

// Radix-2 FFT, Hann window and log-power parabolic peak refinement for the
// mass-gap frequency measurement.  Indices and butterfly order are fixed, so
// the transform is bit-deterministic.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace massgap {

inline bool is_power_of_two(std::size_t n) { return n && !(n & (n - 1)); }

// In-place iterative Cooley-Tukey, forward transform.
inline void fft_inplace(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  if (!is_power_of_two(n))
    throw std::invalid_argument("fft: length must be a power of two");
  // bit reversal
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const double pi = 3.14159265358979323846264338327950288;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * pi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const std::complex<double> u = a[i + j];
        const std::complex<double> v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

inline std::vector<double> hann_window(std::size_t n) {
  const double pi = 3.14159265358979323846264338327950288;
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i)
    w[i] = 0.5 - 0.5 * std::cos(2.0 * pi * static_cast<double>(i) /
                                static_cast<double>(n - 1));
  return w;
}

// One-sided power spectrum of a demeaned, Hann-windowed real series.
inline std::vector<double> windowed_power_spectrum(
    const std::vector<double>& samples) {
  const std::size_t n = samples.size();
  if (!is_power_of_two(n) || n < 8)
    throw std::invalid_argument(
        "power spectrum: need a power-of-two sample count >= 8");
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= static_cast<double>(n);
  const std::vector<double> w = hann_window(n);
  std::vector<std::complex<double>> buf(n);
  for (std::size_t i = 0; i < n; ++i) buf[i] = {(samples[i] - mean) * w[i], 0.0};
  fft_inplace(buf);
  std::vector<double> power(n / 2);
  for (std::size_t i = 0; i < n / 2; ++i) power[i] = std::norm(buf[i]);
  return power;
}

// Parabolic refinement on log power around the bin with the largest power in
// [lo, hi); returns the fractional bin position.
inline double refine_peak_bin(const std::vector<double>& power, std::size_t lo,
                              std::size_t hi) {
  if (hi > power.size()) hi = power.size();
  if (lo + 1 >= hi) throw std::invalid_argument("refine_peak_bin: empty range");
  std::size_t kbest = lo;
  for (std::size_t k = lo; k < hi; ++k)
    if (power[k] > power[kbest]) kbest = k;
  if (kbest == 0 || kbest + 1 >= power.size())
    return static_cast<double>(kbest);
  const double lm = std::log(std::max(power[kbest - 1], 1e-300));
  const double l0 = std::log(std::max(power[kbest], 1e-300));
  const double lp = std::log(std::max(power[kbest + 1], 1e-300));
  const double den = lm - 2.0 * l0 + lp;
  const double delta = (den == 0.0) ? 0.0 : 0.5 * (lm - lp) / den;
  return static_cast<double>(kbest) + delta;
}

}  // namespace massgap
