#include "tempus/critical.hpp"

#include <cmath>
#include <numbers>

#include "tempus/error.hpp"

namespace tempus {

namespace {

// Avogadro's number [1/mol]; molar inputs arrive at this boundary only.
constexpr double kAvogadro = 6.02214076e23;

} // namespace

InteractionVolume interaction_volume(double tau2, double sigma_tot,
                                     double density_N, double cspeed)
{
    if (!(sigma_tot >= 0.0) || !(density_N >= 0.0) || !(cspeed > 0.0))
        fail(ErrorCode::DomainError,
             "interaction_volume: sigma, density >= 0 and cspeed > 0 required");
    InteractionVolume out;
    out.v_c = cspeed * std::abs(tau2) * sigma_tot;
    out.x_packing = density_N * out.v_c;
    out.saturated = out.x_packing >= 1.0;
    return out;
}

EmCorrelationRadius em_correlation_radius(double omega, double r0,
                                          double cspeed)
{
    if (!(omega > 0.0) || !(r0 > 0.0) || !(cspeed > 0.0))
        fail(ErrorCode::DomainError,
             "em_correlation_radius: omega, r0, cspeed must be > 0");
    EmCorrelationRadius out;
    out.r_gamma = std::cbrt(3.0 * cspeed * cspeed * r0) *
                  std::pow(omega, -2.0 / 3.0);
    // Wavelength form R = coeff lambda^{2/3}: substituting omega = 2 pi c /
    // lambda cancels c exactly.
    out.lambda_coeff =
        std::cbrt(3.0 * r0) * std::pow(2.0 * std::numbers::pi, -2.0 / 3.0);
    return out;
}

double thermal_correlation_radius(double theta, double R0)
{
    if (!(theta > 0.0) || !(R0 > 0.0))
        fail(ErrorCode::DomainError,
             "thermal_correlation_radius: theta, R0 must be > 0");
    return R0 * std::pow(theta, -2.0 / 3.0);
}

LatentHeat latent_heat(TransitionKind kind, double theta, double t_c,
                       double latent_molar, double mean_C)
{
    if (!(theta > 0.0))
        fail(ErrorCode::DomainError, "latent_heat: theta must be > 0");
    LatentHeat out;
    if (kind == TransitionKind::FirstOrder) {
        if (!(latent_molar > 0.0))
            fail(ErrorCode::MissingParameter,
                 "latent_heat: first-order transition needs latent_molar > 0");
        out.base_w = latent_molar / kAvogadro;
    } else {
        if (!(mean_C > 0.0))
            fail(ErrorCode::MissingParameter,
                 "latent_heat: second-order transition needs mean_C > 0");
        if (!(t_c > 0.0))
            fail(ErrorCode::DomainError, "latent_heat: t_c must be > 0");
        out.base_w = mean_C * t_c / kAvogadro;
    }
    out.w = out.base_w * theta;
    return out;
}

ExponentSet exponent_set(int dimension)
{
    if (dimension < 2)
        fail(ErrorCode::DomainError, "exponent_set: dimension must be >= 2");

    ExponentSet out;
    out.dimension = dimension;
    out.nu = Rational{2, 3};
    out.beta = Rational{1, 3};
    const Rational two{2, 1};
    const Rational one{1, 1};
    const Rational d{dimension, 1};
    out.alpha = two - d * out.nu;                      // Josephson
    out.gamma = two - out.alpha - two * out.beta;      // Rushbrooke
    out.delta = one + out.gamma / out.beta;            // Widom
    out.eta = two - out.gamma / out.nu;                // Fisher

    // The four scaling relations must close exactly in rational arithmetic;
    // anything else means the construction above is broken.
    const bool ok =
        out.alpha + d * out.nu == two &&
        out.alpha + two * out.beta + out.gamma == two &&
        out.delta == one + out.gamma / out.beta &&
        out.eta == two - out.gamma / out.nu;
    if (!ok)
        fail(ErrorCode::InconsistentRelations,
             "exponent_set: scaling relations failed to close");

    out.canonical_set = dimension == 3;
    return out;
}

GlCoefficients gl_coefficients(double theta_signed, double a, double b,
                               double R0)
{
    if (theta_signed == 0.0)
        fail(ErrorCode::DomainError, "gl_coefficients: theta must be nonzero");
    if (!(a > 0.0) || !(b > 0.0) || !(R0 > 0.0))
        fail(ErrorCode::DomainError, "gl_coefficients: a, b, R0 must be > 0");

    GlCoefficients out;
    out.r_c = thermal_correlation_radius(std::abs(theta_signed), R0);
    const double sgn = theta_signed > 0.0 ? 1.0 : -1.0;
    out.a_coeff = a * sgn / (out.r_c * out.r_c);
    out.b_coeff = b / out.r_c;
    // Ordered phase (theta < 0): minimize A eta^2 + B eta^4 -> eta_eq^2 =
    // -A / (2B); disordered phase has its minimum at eta = 0.
    out.eta_eq =
        out.a_coeff < 0.0 ? std::sqrt(-out.a_coeff / (2.0 * out.b_coeff)) : 0.0;
    return out;
}

} // namespace tempus
