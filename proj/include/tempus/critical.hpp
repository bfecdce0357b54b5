// Critical phenomena from formation volumes: when the formation region
// c |tau2| sigma of one scatterer overlaps its neighbours the medium stops
// responding as independent particles; the same 2/3-root correlation radius
// then fixes a full set of equilibrium critical exponents.
#pragma once

#include "tempus/rational.hpp"

namespace tempus {

// Formation (interaction) volume of one scatterer and the packing fraction
// X = N V_c; the medium is saturated once X >= 1.  Throws DomainError on
// sigma_tot < 0, density_N < 0, cspeed <= 0.
struct InteractionVolume {
    double v_c;
    double x_packing;
    bool saturated;
};
InteractionVolume interaction_volume(double tau2, double sigma_tot,
                                     double density_N, double cspeed);

// Electromagnetic correlation radius R_gamma = (3 c^2 r0)^{1/3} omega^{-2/3},
// also reported in the wavelength form R_gamma = coeff lambda^{2/3} with
// coeff = (3 r0)^{1/3} (2 pi)^{-2/3} (the c-dependence cancels exactly).
// Throws DomainError on omega <= 0, r0 <= 0, cspeed <= 0.
struct EmCorrelationRadius {
    double r_gamma;
    double lambda_coeff;
};
EmCorrelationRadius em_correlation_radius(double omega, double r0,
                                          double cspeed);

// Thermal correlation radius R_c = R0 Theta^{-2/3} at reduced temperature
// Theta = |T - T_c| / T_c.  Throws DomainError on theta <= 0 or R0 <= 0.
double thermal_correlation_radius(double theta, double R0);

// Latent-heat scale of the transition, per particle.
//   FirstOrder:  W = (latent_molar / N_A) * Theta      (molar heat Lambda)
//   SecondOrder: W = mean_C * T_c * Theta / N_A        (molar heat capacity)
// base_w is the Theta = 1 prefactor.  Throws DomainError on theta <= 0,
// MissingParameter if the field the kind needs is not positive.
enum class TransitionKind { FirstOrder, SecondOrder };
struct LatentHeat {
    double w;      // energy per particle at this Theta
    double base_w; // prefactor (Theta = 1)
};
LatentHeat latent_heat(TransitionKind kind, double theta, double t_c,
                       double latent_molar, double mean_C);

// Critical exponents generated from nu = 2/3 and beta = 1/3 through the
// scaling relations (exact rational arithmetic):
//   alpha = 2 - d nu          (Josephson)
//   gamma = 2 - alpha - 2 beta (Rushbrooke)
//   delta = 1 + gamma / beta  (Widom)
//   eta   = 2 - gamma / nu    (Fisher)
// All four relations are re-verified on the result (InconsistentRelations
// if violated).  canonical_set marks the physical d = 3 table
// {0, 1/3, 4/3, 5, 2/3, 0}; other dimensions are consistent extrapolations.
// Throws DomainError on d < 2.
struct ExponentSet {
    Rational alpha, beta, gamma, delta, nu, eta;
    int dimension;
    bool canonical_set;
};
ExponentSet exponent_set(int dimension = 3);

// Ginzburg-Landau coefficients with every length measured in units of the
// correlation radius: A = a sgn(theta) R_c^{-2}, B = b R_c^{-1}, with
// R_c = R0 |theta|^{-2/3}.  theta_signed < 0 is the ordered phase, where the
// equilibrium order parameter eta_eq = sqrt(-A / (2B)) is nonzero and scales
// as |theta|^{1/3}; for theta_signed > 0 eta_eq = 0.
// Throws DomainError on theta_signed == 0, a <= 0, b <= 0, R0 <= 0.
struct GlCoefficients {
    double r_c;
    double a_coeff; // A
    double b_coeff; // B
    double eta_eq;
};
GlCoefficients gl_coefficients(double theta_signed, double a, double b,
                               double R0);

} // namespace tempus
