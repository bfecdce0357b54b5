// Saltatory transport kinetics: light crossing a dilute scattering medium as
// free flight at c punctuated by per-scattering pauses (tau1) and formation
// displacements (c tau2).  Monte Carlo transport, its closed-form mean,
// group/phase indices built from the same taus, and the momentum bookkeeping
// that follows from the delayed fraction.
#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "tempus/temporal.hpp"

namespace tempus {

// Photon-count block size for the deterministic reduction.  Partial sums are
// accumulated sequentially inside each block and the block partials are
// combined in block order, so the result is bit-identical for any thread
// count (and to the serial reference).
inline constexpr std::uint64_t kTransportBlock = 4096;

struct TransportResult {
    double mean_transit;      // <T> over photons
    double stderr_transit;    // sample stderr of the mean (0 for 1 photon)
    double n_events_mean;     // mean scatterings per photon
    std::uint64_t samples;    // photon count
    double n_group;           // c <T> / L
    double momentum_fraction; // 1 - 1/n_group (share of transit spent in matter)
    double displacement;      // medium displacement delta S (0 unless filled
                              // by simulate_transport, which knows omega, M)
};

// Random walk through a slab of thickness L with mean free path ell.  Each
// flight leg is exponential; each scattering adds the pause tau1, then for
// tau2 > 0 advances the photon by c tau2 while charging the time tau2
// (formation drift), and for tau2 < 0 advances it by c |tau2| free of charge
// (the formation region is skipped).  Advancing past L ends the walk.
//
// Per-photon RNG streams are derived from (seed, photon index), so the
// ensemble is independent of scheduling.  force_serial runs the identical
// blocked loop without the parallel pragma.
//
// Throws DomainError (L, ell, cspeed, photons positive), NoProgress if
// ell + c tau2 <= 0 (each cycle would move the photon nowhere or backwards).
TransportResult transport_walk(double L, double ell, double tau1, double tau2,
                               double cspeed, std::uint64_t photons,
                               std::uint64_t seed, bool force_serial = false);

// Closed-form mean of the same walk: N = L / (ell + c |tau2|) scatterings,
// T = L/c + N tau1 for tau2 >= 0 and T = L/c + N (tau1 - |tau2|) for
// tau2 < 0.  Throws NonPhysical if the predicted T is negative.
struct TransitTime {
    double T;
    double n_events;
};
TransitTime transit_time(double L, double ell, double tau1, double tau2,
                         double cspeed);

// Group index bookkeeping from one (ell, tau1, tau2) triple.
//   n_g         = 1 + c tau1 / (ell + c tau2)   (delay per stretched cell)
//   n_g_thin    = 1 + c tau1 / ell              (ell >> c|tau2| limit)
//   n_g_transit = c T / L with T from transit_time (what the walk measures;
//                 equals n_g for tau2 >= 0)
// Throws DomainError (ell > 0), DenominatorCollapse if ell + c tau2 <= 0.
struct GroupIndex {
    double n_g;
    double n_g_thin;
    double n_g_transit;
};
GroupIndex group_index(double ell, double tau1, double tau2, double cspeed);

// Phase index as the frequency average of the group index:
//   n(omega) = (1/omega) [ n_g(w0) w0 + integral_{w0}^{omega} n_g dw ],
// trapezoid on the given grid; the unsampled head [0, w0] is approximated by
// a constant n_g(w0) (w0 = omega.front(), expected small).  quad_error is a
// second-difference trapezoid error estimate plus the head-segment bound.
// Throws DomainError (grid invariants, omega_eval inside the grid,
// omega.front() > 0), GridGap if max/min spacing exceeds 10.
struct PhaseIndex {
    double n;
    double quad_error;
};
PhaseIndex phase_index(const std::vector<double>& omega,
                       const std::vector<double>& n_g, double omega_eval);

// Inverse of the index chain: recover tau1 from a sampled phase index via
//   tau1 = [ d(omega n)/d omega - 1 ] / (c N sigma),
// using the same finite-difference stencils as numeric_tau.  tau2 is not
// recoverable from n alone and is reported as 0 with all samples unmasked.
TemporalFunction delay_from_index(const std::vector<double>& omega,
                                  const std::vector<double>& n,
                                  double density_N, double sigma_tot,
                                  double cspeed, int order = 4);

// Momentum split for one photon (momentum hbar k in vacuum) crossing a
// medium of group index n_g and phase index n_phase:
//   fraction_in_body = 1 - 1/n_g         (time-weighted share in matter)
//   p_photon_transit = fraction * hbar k (momentum lodged in the body)
//   delta_hk         = hbar k / n_g      (per-scattering transfer scale)
//   p_minkowski      = n_phase hbar k / n_g
//   p_abraham        = hbar k / (n_phase n_g)
// delta_hk is the geometric mean of the last two.  Throws DomainError
// (n_g > 0, n_phase > 0).
struct MomentumLedger {
    double fraction_in_body;
    double p_photon_transit;
    double delta_hk;
    double p_minkowski;
    double p_abraham;
};
MomentumLedger momentum_ledger(double n_g, double hbar_k, double n_phase);

// Net displacement of a block of mass M and length L after one photon of
// energy hbar_omega crosses it: delta S / L = (n_g - 1) hbar omega / (M c^2).
struct Displacement {
    double delta_s;
    double delta_s_over_l;
};
Displacement displacement(double n_g, double hbar_omega, double mass_M,
                          double L, double cspeed);

// Recoil bookkeeping for absorption of a photon (hbar = c = 1) by a medium
// of phase index n_phase when the absorber keeps delta_U internally:
//   omega_prime  = (omega - delta_U) / n_phase^2  (re-emitted frequency)
//   p_absorbed   = n_phase omega                  (Minkowski kick)
//   p_body       = (1 - n_phase) omega            (backward body recoil)
//   p_total_check = p_absorbed + p_body = omega   (closure)
// Throws DomainError unless omega > delta_U >= 0 and n_phase > 0.
struct AbsorptionRecoil {
    double omega_prime;
    double p_absorbed;
    double p_body;
    double p_total_check;
};
AbsorptionRecoil absorption_recoil(double omega, double n_phase,
                                   double delta_U);

// Wavenumber renormalization inside the medium, reported both as the direct
// shift k' = k + N sigma and as the delay form k (1 + c N sigma tau); the two
// coincide when tau = 1/(c k).  Throws DomainError (all inputs positive).
struct QuasiMomentum {
    double k_prime;
    double k_prime_scaled;
};
QuasiMomentum quasi_momentum(double k, double density_N, double sigma_tot,
                             double tau, double cspeed);

// Field of a monochromatic point source split at separation r: the
// propagating far zone exp(i |omega| r / c) / (4 pi r) and the formation
// (evanescent) zone exp(-|omega| r / c) / (4 pi r).  Throws DomainError
// (r > 0, cspeed > 0).
struct EvanescentSplit {
    std::complex<double> far_zone;
    std::complex<double> near_zone;
};
EvanescentSplit evanescent_split(double omega, double r, double cspeed);

// Smallest flux at which a sharp optical forerunner stays observable: one
// photon per coherence cell, j_min = v_sound / lambda^3, and its intensity
// J_min = hbar omega j_min (pass hbar = 1 for natural units or the SI value
// with omega in rad/s).  Throws DomainError (all inputs positive).
struct Forerunner {
    double j_min;
    double intensity_min;
};
Forerunner forerunner_threshold(double lambda_w, double v_sound, double omega,
                                double hbar);

// Scattering medium described at the CLI boundary.  sigma_model selects the
// cross-section profile: "constant" (sigma0) or "lorentzian"
// (sigma0 (Gamma^2/4) / ((omega-omega0)^2 + Gamma^2/4)).  The per-scattering
// taus always come from the resonance via the Lorentzian closed form.
struct MediumSpec {
    double density;     // scatterers per volume
    double sigma0;      // peak total cross-section
    std::string sigma_model; // "constant" | "lorentzian"
    double omega0;      // resonance
    double gamma;       // linewidth
    double length_L;    // slab thickness
    double mass_M;      // slab mass (displacement bookkeeping)
    double cspeed;      // vacuum speed
};

// sigma(omega) for the medium (0 allowed only off the supported models ->
// DomainError on unknown sigma_model).
double medium_sigma(const MediumSpec& medium, double omega);

// Full pipeline at one frequency: taus from the resonance, ell from
// 1/(N sigma), transport_walk, then displacement from (omega, M, L).
// A transparent frequency (sigma = 0) returns the exact vacuum transit.
TransportResult simulate_transport(const MediumSpec& medium, double omega,
                                   std::uint64_t photons, std::uint64_t seed,
                                   bool force_serial = false);

} // namespace tempus
