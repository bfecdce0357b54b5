// In-place iterative radix-2 FFT for power-of-two grids.  The only spectral
// call site is the wave-packet experiment (N = 4096), so a dependency-free
// deterministic transform is preferred over linking FFTW.
#pragma once

#include <complex>
#include <vector>

#include "tempus/error.hpp"

namespace tempus {

// Forward: a[k] <- sum_j a[j] exp(-2 pi i j k / n).  Inverse applies the
// conjugate kernel and the 1/n normalization.
inline void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        fail(ErrorCode::DomainError, "fft_radix2: length must be a power of two");

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    const double pi = 3.14159265358979323846;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        // twiddles from direct trig per index: no accumulation error across the stage
        std::vector<std::complex<double>> tw(len / 2);
        for (std::size_t j = 0; j < len / 2; ++j)
            tw[j] = std::complex<double>(std::cos(ang * static_cast<double>(j)),
                                         std::sin(ang * static_cast<double>(j)));
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + len / 2] * tw[j];
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& z : a) z *= inv;
    }
}

} // namespace tempus
