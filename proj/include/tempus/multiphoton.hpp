// Multiphoton absorption built on the delay time: a target "holds" each
// photon for tau1(omega), so the probability of finding n photons together
// is controlled by the flux-delay product.  Order-n rates, their ratios,
// the saturation parameter, and the threshold order above which channels
// close.
#pragma once

#include <cstdint>

#include "tempus/temporal.hpp"

namespace tempus {

// Physical configuration for rate chains: photon flux j, cross-section
// sigma, and the Lorentzian resonance supplying tau1(q omega) at each rung.
struct HhgSpec {
    double flux_j;   // photons / (area time)
    double sigma;    // cross-section
    double omega0;   // resonance
    double gamma;    // linewidth Gamma
    double omega;    // fundamental drive frequency
    int n_max;       // highest order to sweep
};

// Throws DomainError on nonpositive flux_j, sigma, gamma, omega or n_max < 1.
void validate(const HhgSpec& spec);

// Saturation parameter of the order-n rung: eta^(n) = j sigma tau1(n omega).
double saturation_parameter(const HhgSpec& spec, int n);

// Relative order-n rate R_n = (j sigma)^n prod_{q=1..n} tau1(q omega),
// accumulated in log space.  Throws Overflow if the linear value exceeds
// double range; hhg_log_rate never does.
double hhg_log_rate(const HhgSpec& spec, int n);
double hhg_rate(const HhgSpec& spec, int n);

// High-order envelope in the far-off-resonance regime where every rung
// contributes the same factor: R_n = x^n / (n!)^2 with x the squared
// flux-delay parameter.  n = 0 gives 1.  Computed in log space;
// hhg_high_order throws Overflow if the linear value exceeds double range.
double hhg_high_order_log(double x, int n);
double hhg_high_order(double x, int n);

// Largest order whose channel is still open: the envelope ratio
// R_n / R_{n-1} = x / n^2 stays >= 1 exactly while n^2 <= x, so
// n_star = floor(sqrt(x)) with integer correction loops so exact squares
// land exactly (x = 9 -> 3).  Throws DomainError on x < 0.
long long channel_threshold(double x);

} // namespace tempus
