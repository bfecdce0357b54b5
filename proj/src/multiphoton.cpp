#include "tempus/multiphoton.hpp"

#include <cmath>
#include <limits>

namespace tempus {

namespace {

// Largest x with exp(x) finite in double.
constexpr double kExpMax = 709.0;

double lorentz_tau1(double omega, double omega0, double gamma)
{
    const double d = omega - omega0;
    return gamma / 2.0 / (d * d + gamma * gamma / 4.0);
}

} // namespace

void validate(const HhgSpec& spec)
{
    if (!(spec.flux_j > 0.0) || !(spec.sigma > 0.0) || !(spec.gamma > 0.0) ||
        !(spec.omega > 0.0))
        fail(ErrorCode::DomainError,
             "HhgSpec: flux, sigma, gamma, omega must be > 0");
    if (spec.n_max < 1)
        fail(ErrorCode::DomainError, "HhgSpec: n_max must be >= 1");
}

double saturation_parameter(const HhgSpec& spec, int n)
{
    validate(spec);
    if (n < 1)
        fail(ErrorCode::DomainError, "saturation_parameter: n must be >= 1");
    return spec.flux_j * spec.sigma *
           lorentz_tau1(n * spec.omega, spec.omega0, spec.gamma);
}

double hhg_log_rate(const HhgSpec& spec, int n)
{
    validate(spec);
    if (n < 0)
        fail(ErrorCode::DomainError, "hhg_log_rate: n must be >= 0");
    // ln R_n = n ln(j sigma) + sum_q ln tau1(q omega); every Lorentzian
    // tau1 is strictly positive, so the logs always exist.
    double acc = n * std::log(spec.flux_j * spec.sigma);
    for (int q = 1; q <= n; ++q)
        acc += std::log(lorentz_tau1(q * spec.omega, spec.omega0, spec.gamma));
    return acc;
}

double hhg_rate(const HhgSpec& spec, int n)
{
    const double lg = hhg_log_rate(spec, n);
    if (lg > kExpMax)
        fail(ErrorCode::Overflow, "hhg_rate: rate exceeds double range");
    return std::exp(lg);
}

double hhg_high_order_log(double x, int n)
{
    if (!(x >= 0.0))
        fail(ErrorCode::DomainError, "hhg_high_order_log: x must be >= 0");
    if (n < 0)
        fail(ErrorCode::DomainError, "hhg_high_order_log: n must be >= 0");
    if (n == 0)
        return 0.0;
    if (x == 0.0)
        return -std::numeric_limits<double>::infinity();
    return n * std::log(x) - 2.0 * std::lgamma(static_cast<double>(n) + 1.0);
}

double hhg_high_order(double x, int n)
{
    const double lg = hhg_high_order_log(x, n);
    if (lg > kExpMax)
        fail(ErrorCode::Overflow, "hhg_high_order: rate exceeds double range");
    return std::exp(lg); // exp(-inf) = 0 covers the x = 0 case
}

long long channel_threshold(double x)
{
    if (!(x >= 0.0))
        fail(ErrorCode::DomainError, "channel_threshold: x must be >= 0");
    long long n = static_cast<long long>(std::floor(std::sqrt(x)));
    // Integer correction: sqrt can land a hair on either side of an exact
    // square, and the contract is exact (n_star^2 <= x strictly by integers).
    while (static_cast<double>(n + 1) * static_cast<double>(n + 1) <= x)
        ++n;
    while (n > 0 && static_cast<double>(n) * static_cast<double>(n) > x)
        --n;
    return n;
}

} // namespace tempus
