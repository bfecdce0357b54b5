// Core of the formalism: the temporal function
//
//   tau(omega) = tau1 + i tau2 = (1/i) d ln S / d omega,
//
// so tau1 is the derivative of the unwrapped phase (delay) and tau2 is
// -d ln|S| / d omega (formation/decay time).  Everything else in the
// library consumes these two numbers.
#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "tempus/response.hpp"

namespace tempus {

// tau evaluated on a frequency grid.  masked[i] != 0 marks samples skipped
// because omega[i] fell within tolerance of a pole; their tau entries are 0.
// max_phase_step is the largest wrapped phase increment seen while
// unwrapping (diagnostic; numeric_tau throws PhaseJump before it can
// reach pi).
struct TemporalFunction {
    std::vector<double> omega;
    std::vector<double> tau1;
    std::vector<double> tau2;
    std::vector<unsigned char> masked;
    double max_phase_step = 0.0;
};

struct TauPair {
    double tau1;
    double tau2;
};

// Differentiate sampled data.  order selects the finite-difference stencil:
// 2 (3-point) or 4 (5-point); interior stencils are central, edges one-sided,
// and the weights are generated for the actual (possibly nonuniform) grid.
// Throws ZeroResponse if any |S| < 1e-300, PhaseJump if an adjacent wrapped
// phase step reaches pi (the unwrapping assumption is violated), DomainError
// if the grid is shorter than order + 1 points.
TemporalFunction numeric_tau(const SampledResponse& data, int order = 4);

// Closed-form tau for one model at one frequency.  Throws PoleHit near the
// model's poles.  For PauliVillars the stored p0 is used (omega is the
// sampling variable of evaluate(), not the energy entering the closed form).
TauPair model_tau(const ResponseModel& model, double omega,
                  double pole_tol = kPoleTolAbs);

// Closed-form sweep on a uniform grid of n >= 2 points.  Samples within
// max(pole_tol, spacing/2) of a pole (or of the omega = 0 divergence of the
// cot-type models and the on-shell FreePhoton singularity) are masked rather
// than evaluated: a singular delay is reported as a flag, never as a number.
TemporalFunction model_tau_grid(const ResponseModel& model, double lo,
                                double hi, std::size_t n,
                                double pole_tol = kPoleTolAbs);

// Renormalized (Coulomb-subtracted) commutator formation time at separation
// r, computed two independent ways: the closed form -r (cot x - 1/x) with
// x = omega r, and the pole expansion -2 omega r^2 sum 1/(x^2 - pi^2 n^2)
// accelerated with an Euler-Maclaurin tail so its truncation error is below
// 1e-9 relative.  terms is a floor; terms_used reports the count actually
// summed.  Throws PoleHit within 1e-9 of x = n pi (n >= 1).
struct RenormalizedPj {
    double closed_form;
    double series;
    int terms_used;
};
RenormalizedPj renormalized_pj_tau(double omega, double r, int terms = 64);

// Scattering chain built from amplitude kernels.  tau of the resolvent
// ln[1 / (1 - gamma_c (K1 + K2))] together with the single-kernel taus and
// the nonadditivity tau_total - tau_1 - tau_2.  Derivatives are central
// differences of the principal log of ratios (branch-safe for small steps)
// with one Richardson step; h defaults to max(1e-6, 1e-6 |omega|).
// Throws ResolventSingular if |1 - gamma_c K| < 1e-12 at a sample point.
using AmplitudeFn = std::function<std::complex<double>(double)>;
struct Composition {
    std::complex<double> tau_total;
    std::complex<double> tau_part1;
    std::complex<double> tau_part2;
    std::complex<double> nonadditivity;
};
Composition compose_tau(const AmplitudeFn& k1, const AmplitudeFn& k2,
                        double gamma_c, double omega, double step = 0.0);

// Interval of proper time attached to a delay tau at lab speed ratio v/c:
// xi^2 = tau^2 (1 - (v/c)^2).  Throws DomainError unless 0 <= v_over_c <= 1.
struct ProperDuration {
    double tau;
    double v_over_c;
    double xi_sq;
};
ProperDuration proper_duration(double tau, double v_over_c);

// Temporal function of an exponential switching edge with rate gamma_s at
// carrier omega0.  TurnOn: tau1 = (gamma/pi)/D, tau2 = +(omega-omega0)/(pi D)
// with D = (omega-omega0)^2 + gamma^2; TurnOff is the mirror (tau2 negated);
// Symmetric has tau2 = 0.  The 1/pi is the spectral-density normalization of
// the edge and is applied identically on the numeric path.
enum class SwitchMode { Symmetric, TurnOn, TurnOff };
TauPair switching_tau(double gamma_s, double omega, double omega0,
                      SwitchMode mode);

// Cross-validation path: build S(omega) as the literal Fourier integral of
// the switched exponential over a window with gamma_s T = 30, differentiate
// its log numerically (5-point), apply the same 1/pi.  Symmetric averages
// the on and off paths.  Agrees with switching_tau to ~1e-5 relative.
TauPair switching_tau_numeric(double gamma_s, double omega, double omega0,
                              SwitchMode mode);

} // namespace tempus
