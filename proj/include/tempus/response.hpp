// Analytic response/transfer functions S(omega) and the sampled-data form.
// Every model here exists to be log-differentiated by temporal_core, so each
// variant documents its pole set (of S or of its temporal function) and
// evaluation refuses frequencies within tolerance of a pole.
//
// Natural units throughout (hbar = 1, c carried explicitly where it enters).
#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "tempus/error.hpp"

namespace tempus {

// Absolute pole-proximity tolerance for analytic point queries.  Grid-based
// sweeps widen this to half the local spacing (see model_tau_grid).
inline constexpr double kPoleTolAbs = 1e-12;

// Resonant two-level response.  Only the resonant (rotating-wave) pole at
// omega0 - i Gamma/2 is kept: the antiresonant pole of the full two-level
// form sits in the anticausal half-plane and would flip the sign of the
// delay; the normalization is fixed so the on-resonance value matches the
// full two-level form.  strength cancels in every log-derivative.
struct Lorentzian {
    double omega0;   // resonance [rad/time]
    double gamma;    // linewidth Gamma [rad/time]
    double strength; // dimensionless f
};

// Causal photon propagator of lowest order, evaluated off shell as a real
// principal value (the on-shell delta is handled analytically downstream;
// a sampled grid cannot represent it).
struct FreePhoton {
    double kmag;   // wavenumber [1/length]
    double cspeed; // speed [length/time]
};

// Commutator-type two-point function at separation r.  Represented by the
// surrogate S = sin(omega r), normalized so its log-derivative carries no
// Coulomb 1/omega term: any S with the target log-derivative is equivalent
// for this artifact, and this choice keeps the numeric and closed-form
// temporal functions identical.
struct PauliJordan {
    double r; // separation [length]
};

// Scalar near-field function -sin(omega r) / (2 pi omega^2 r^3).
struct NearField {
    double r; // separation [length]
};

// S = exp(i omega T): synthetic validation model with exact delay T.
struct PureDelay {
    double tdelay; // time
};

// Regulated propagator difference 1/(p^2 - m^2) - 1/(p^2 - M^2).  evaluate()
// treats omega as the energy p0 (p^2 = omega^2 - pmag^2) so the model can be
// sampled and differentiated; the closed-form temporal function uses the
// stored p0 instead (see model_tau).
struct PauliVillars {
    double m;    // physical mass
    double bigM; // regulator mass, > m
    double p0;   // energy component
    double pmag; // spatial momentum magnitude
};

using ResponseModel =
    std::variant<Lorentzian, FreePhoton, PauliJordan, NearField, PureDelay, PauliVillars>;

// Throws InvalidModel if a field invariant is violated
// (gamma > 0, strength != 0, kmag >= 0, cspeed > 0, r > 0, m < bigM).
void validate(const ResponseModel& model);

// Complex response value at omega.  Throws PoleHit within pole_tol of a pole
// (for the cot-type models this includes omega = 0, where the surrogate
// response vanishes even though the subtracted pole list starts at n = 1).
std::complex<double> evaluate(const ResponseModel& model, double omega,
                              double pole_tol = kPoleTolAbs);

// All real poles of the model's temporal function inside [lo, hi], ascending.
// PauliJordan / NearField: n pi / r for integer n != 0 (the n = 0 entry is
// removed by the Coulomb subtraction).  FreePhoton: +-c k.  PauliVillars:
// +-sqrt(pmag^2 + m^2), +-sqrt(pmag^2 + M^2).  Lorentzian, PureDelay: none.
std::vector<double> pole_set(const ResponseModel& model, double lo, double hi);

// Frequency grid with complex response samples (data-ingestion form).
struct SampledResponse {
    std::vector<double> omega;
    std::vector<std::complex<double>> value;
};

// Throws DomainError unless: same lengths >= 5, omega strictly increasing,
// every value finite and nonzero.
void validate(const SampledResponse& data);

} // namespace tempus
