// Under-barrier motion: the WKB temporal function (pure formation time,
// tau1 = 0, tau2 < 0 under the barrier) and the wave-packet experiment that
// exhibits the corresponding peak advance and its width saturation.
#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "tempus/quadrature.hpp"
#include "tempus/temporal.hpp"

namespace tempus {

// Rectangular barrier of height U0 on [-a, a].
struct SquareBarrier {
    double u0;
    double a;
};

// Inverted parabola U(x) = U0 (1 - x^2/a^2) on |x| <= a, zero outside.
struct ParabolicBarrier {
    double u0;
    double a;
};

// Piecewise-linear sampled barrier.  x strictly increasing; U continuous
// with a single maximum (monotone up, then monotone down).
struct TabulatedBarrier {
    std::vector<double> x;
    std::vector<double> u;
};

using BarrierSpec = std::variant<SquareBarrier, ParabolicBarrier, TabulatedBarrier>;

// Throws DomainError on violated shape invariants (U0 > 0, a > 0; tabulated
// grid/single-maximum checks).
void validate(const BarrierSpec& barrier);

// Classical turning points U(x) = E.  Square: the walls +-a.  Parabolic:
// +-a sqrt(1 - E/U0).  Tabulated: bisection on the piecewise-linear flanks
// to 1e-12 relative.  Throws NoBarrier if E >= max U, DomainError if E <= 0
// or a tabulated flank never descends to E.
struct TurningPoints {
    double x_left;
    double x_right;
};
TurningPoints turning_points(const BarrierSpec& barrier, double energy_E);

// WKB temporal function of the barrier at energy E:
//   tau1 = 0,   tau2 = -sqrt(m/2) integral_{x_l}^{x_r} dx / sqrt(U - E).
// Square and Parabolic integrate with tanh-sinh quadrature (endpoint
// singularities are handled by the substitution); Tabulated sums the exact
// per-segment antiderivative 2 (sqrt(g1) - sqrt(g0)) / g' of the linear
// interpolant.  quad_error reports the quadrature error estimate.
// Throws QuadratureFail if the estimate exceeds 1e-6 relative, plus the
// turning_points errors.
struct WkbTau {
    TauPair tau;
    TurningPoints turning;
    double quad_error;
};
WkbTau wkb_tau(const BarrierSpec& barrier, double mass_m, double energy_E);

// Stationary transmission/reflection coefficients of the square barrier at
// wavenumber k (hbar = 1, E = k^2 / 2m), barrier occupying [x1, x1 + w]:
//   kappa = sqrt(2 m U0 - k^2)  (complex above the barrier)
//   t = e^{-i k w} / [cosh(kappa w) + (i/2)(kappa/k - k/kappa) sinh(kappa w)]
//   r = -(i/2)(kappa/k + k/kappa) sinh(kappa w) / [same] * e^{2 i k x1}
// t is independent of x1; |t|^2 + |r|^2 = 1.  U0 = 0 gives t = 1, r = 0.
// Throws DomainError on k <= 0.
struct BarrierCoefficients {
    std::complex<double> t;
    std::complex<double> r;
};
BarrierCoefficients square_coefficients(const SquareBarrier& barrier,
                                        double mass_m, double k);

// Gaussian packet exp(-(x - x0)^2 / (4 width_a^2)) exp(i k0 x) on a periodic
// grid of n points (power of two) with spacing dx, centered so
// x_i = (i - n/2) dx.
struct PacketSpec {
    double k0;
    double width_a;
    double x0;
    int n;
    double dx;
};

// Propagate the packet for time t across the square barrier (centered at 0)
// by spectral decomposition: positive-k modes are multiplied by t(k), the
// rest dropped; free_ref propagates the identical packet with no barrier.
// Preconditions enforced: initial overlap with the barrier region below
// 1e-10 (DomainError), spectral weight within 10% of the Nyquist edge below
// 1e-8 (GridTooCoarse), n a power of two.
struct PacketFields {
    std::vector<double> x;
    std::vector<std::complex<double>> transmitted;
    std::vector<std::complex<double>> free_ref;
    double norm_transmitted; // L2 norm after the barrier filter
    double norm_initial;     // L2 norm of the prepared packet (= 1)
};
PacketFields transmit_packet(const SquareBarrier& barrier, double mass_m,
                             const PacketSpec& packet, double t);

// Peak advance of |transmitted|^2 relative to |reference|^2 by FFT
// cross-correlation with parabolic sub-sample refinement.  peak_shift > 0
// means the transmitted peak sits ahead of the free one; effective_delay is
// the equivalent time -peak_shift / v_group.  Throws NoPeak if the
// transmitted L2 norm is below 1e-14, DomainError on size/power-of-two
// mismatch.
struct PeakAdvance {
    double peak_shift;
    double effective_delay;
};
PeakAdvance measure_advance(const std::vector<std::complex<double>>& transmitted,
                            const std::vector<std::complex<double>>& reference,
                            double dx, double v_group);

// The packet experiment at fixed, validated parameters: a barrier and its
// doubled-width twin, same packet, same snapshot time.  Reports per-barrier
// transmitted norm, peak advance, effective delay, and traversal time
// (delay + w / v_group), plus the saturation check: the traversal change on
// doubling must stay below a tenth of the packet time-width.
struct HartmanConfig {
    double mass_m = 1.0;
    double u0 = 2.0;
    double k0 = 1.0;          // E0 = k0^2/2m = U0/4
    double half_width_a = 3.0;
    double packet_width = 48.0;
    double x0 = -560.0;
    double t_snapshot = 900.0;
    double dx = 0.5;
    int n = 4096;
};
struct HartmanRow {
    double width_w;
    double norm_transmitted;
    double peak_shift;
    double effective_delay;
    double traversal;
};
struct HartmanResult {
    HartmanRow single;
    HartmanRow doubled;
    double kappa;            // sqrt(2 m U0 - k0^2)
    double v_group;          // k0 / m
    double saturation_delta; // |traversal change| on doubling
    double packet_time_width;
    bool saturated;
};
HartmanResult hartman_experiment(const HartmanConfig& config);

} // namespace tempus
