#pragma once

// Test-side spectral oracle, kept independent of the synthesis code under
// test: a plain iterative radix-2 FFT plus peak / band-energy helpers.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace testfft {

inline void fft_in_place(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = -2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> w_len(std::cos(angle), std::sin(angle));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= w_len;
            }
        }
    }
}

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

/// Dominant frequency: Hann window, zero-padded FFT, parabolic
/// interpolation of the log-magnitude around the peak bin.
inline double dominant_frequency_hz(std::span<const double> samples, double sample_rate,
                                    std::size_t min_fft = 1 << 16) {
    const std::size_t n = std::max(next_pow2(samples.size()), next_pow2(min_fft));
    std::vector<std::complex<double>> a(n, 0.0);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double w =
            0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                 static_cast<double>(samples.size()));
        a[i] = samples[i] * w;
    }
    fft_in_place(a);

    std::size_t peak = 1;
    double peak_mag = 0.0;
    for (std::size_t k = 1; k + 1 < n / 2; ++k) {
        const double mag = std::abs(a[k]);
        if (mag > peak_mag) {
            peak_mag = mag;
            peak = k;
        }
    }
    const double la = std::log(std::abs(a[peak - 1]) + 1e-300);
    const double lb = std::log(std::abs(a[peak]) + 1e-300);
    const double lc = std::log(std::abs(a[peak + 1]) + 1e-300);
    const double denom = la - 2.0 * lb + lc;
    const double delta = denom != 0.0 ? 0.5 * (la - lc) / denom : 0.0;
    return (static_cast<double>(peak) + delta) * sample_rate / static_cast<double>(n);
}

/// Fraction of total spectral energy inside [lo_hz, hi_hz).
inline double band_energy_fraction(std::span<const double> samples, double sample_rate,
                                   double lo_hz, double hi_hz) {
    const std::size_t n = next_pow2(samples.size());
    std::vector<std::complex<double>> a(n, 0.0);
    for (std::size_t i = 0; i < samples.size(); ++i) a[i] = samples[i];
    fft_in_place(a);

    double total = 0.0, band = 0.0;
    for (std::size_t k = 0; k <= n / 2; ++k) {
        const double energy = std::norm(a[k]);
        const double freq = static_cast<double>(k) * sample_rate / static_cast<double>(n);
        total += energy;
        if (freq >= lo_hz && freq < hi_hz) band += energy;
    }
    return total > 0.0 ? band / total : 0.0;
}

inline double cents_between(double f1, double f2) {
    return 1200.0 * std::log2(f1 / f2);
}

} // namespace testfft
