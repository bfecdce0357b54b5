#include "tempus/response.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tempus {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// Distance from x to the nearest integer multiple of step (including 0).
double dist_to_multiple(double x, double step)
{
    return std::abs(x - step * std::round(x / step));
}

} // namespace

void validate(const ResponseModel& model)
{
    std::visit(
        [](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Lorentzian>) {
                if (!(m.gamma > 0.0))
                    fail(ErrorCode::InvalidModel, "Lorentzian: gamma must be > 0");
                if (m.strength == 0.0)
                    fail(ErrorCode::InvalidModel, "Lorentzian: strength must be nonzero");
            } else if constexpr (std::is_same_v<T, FreePhoton>) {
                if (!(m.kmag >= 0.0))
                    fail(ErrorCode::InvalidModel, "FreePhoton: kmag must be >= 0");
                if (!(m.cspeed > 0.0))
                    fail(ErrorCode::InvalidModel, "FreePhoton: cspeed must be > 0");
            } else if constexpr (std::is_same_v<T, PauliJordan>) {
                if (!(m.r > 0.0))
                    fail(ErrorCode::InvalidModel, "PauliJordan: r must be > 0");
            } else if constexpr (std::is_same_v<T, NearField>) {
                if (!(m.r > 0.0))
                    fail(ErrorCode::InvalidModel, "NearField: r must be > 0");
            } else if constexpr (std::is_same_v<T, PureDelay>) {
                (void)m; // any real delay is admissible
            } else if constexpr (std::is_same_v<T, PauliVillars>) {
                if (!(m.m < m.bigM))
                    fail(ErrorCode::InvalidModel, "PauliVillars: require m < bigM");
            }
        },
        model);
}

std::complex<double> evaluate(const ResponseModel& model, double omega,
                              double pole_tol)
{
    validate(model);
    constexpr double pi = std::numbers::pi;

    return std::visit(
        [&](const auto& m) -> std::complex<double> {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Lorentzian>) {
                // Resonant pole only; C = f / (2 (i omega0 - Gamma/4)) makes
                // S(omega0) equal the full two-level value.
                const std::complex<double> c =
                    m.strength / (2.0 * (kI * m.omega0 - m.gamma / 4.0));
                return c / (omega - m.omega0 + kI * m.gamma / 2.0);
            } else if constexpr (std::is_same_v<T, FreePhoton>) {
                const double ck = m.cspeed * m.kmag;
                if (std::min(std::abs(omega - ck), std::abs(omega + ck)) < pole_tol)
                    fail(ErrorCode::PoleHit,
                         "FreePhoton: omega on the light cone (singular delay "
                         "at omega = c|k| is reported analytically, not sampled)");
                return {4.0 * pi / (omega * omega - ck * ck), 0.0};
            } else if constexpr (std::is_same_v<T, PauliJordan>) {
                if (dist_to_multiple(omega, pi / m.r) < pole_tol)
                    fail(ErrorCode::PoleHit,
                         "PauliJordan: omega r at a multiple of pi");
                return {std::sin(omega * m.r), 0.0};
            } else if constexpr (std::is_same_v<T, NearField>) {
                if (dist_to_multiple(omega, pi / m.r) < pole_tol)
                    fail(ErrorCode::PoleHit,
                         "NearField: omega r at a multiple of pi");
                const double r3 = m.r * m.r * m.r;
                return {-std::sin(omega * m.r) / (2.0 * pi * omega * omega * r3),
                        0.0};
            } else if constexpr (std::is_same_v<T, PureDelay>) {
                return std::exp(kI * omega * m.tdelay);
            } else {
                // PauliVillars: omega plays the role of the energy p0 here so
                // the difference can be sampled on a frequency grid.
                const double p2 = omega * omega - m.pmag * m.pmag;
                const double m2 = m.m * m.m;
                const double M2 = m.bigM * m.bigM;
                if (std::abs(p2 - m2) < pole_tol || std::abs(p2 - M2) < pole_tol)
                    fail(ErrorCode::PoleHit, "PauliVillars: on a mass shell");
                return {1.0 / (p2 - m2) - 1.0 / (p2 - M2), 0.0};
            }
        },
        model);
}

std::vector<double> pole_set(const ResponseModel& model, double lo, double hi)
{
    validate(model);
    if (!(lo <= hi))
        fail(ErrorCode::DomainError, "pole_set: require lo <= hi");
    constexpr double pi = std::numbers::pi;

    std::vector<double> poles;
    auto keep = [&](double w) {
        if (w >= lo && w <= hi)
            poles.push_back(w);
    };

    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, FreePhoton>) {
                keep(-m.cspeed * m.kmag);
                keep(m.cspeed * m.kmag);
            } else if constexpr (std::is_same_v<T, PauliJordan> ||
                                 std::is_same_v<T, NearField>) {
                // n pi / r for every nonzero integer n with the value inside
                // [lo, hi]; n = 0 is removed by the Coulomb subtraction.
                const double step = pi / m.r;
                const long long n_lo = static_cast<long long>(std::ceil(lo / step));
                const long long n_hi = static_cast<long long>(std::floor(hi / step));
                for (long long n = n_lo; n <= n_hi; ++n) {
                    if (n == 0)
                        continue;
                    keep(static_cast<double>(n) * step);
                }
            } else if constexpr (std::is_same_v<T, PauliVillars>) {
                const double e_m = std::hypot(m.pmag, m.m);
                const double e_M = std::hypot(m.pmag, m.bigM);
                keep(-e_M);
                keep(-e_m);
                keep(e_m);
                keep(e_M);
            }
            // Lorentzian and PureDelay have no real poles.
        },
        model);

    std::sort(poles.begin(), poles.end());
    return poles;
}

void validate(const SampledResponse& data)
{
    if (data.omega.size() != data.value.size())
        fail(ErrorCode::DomainError, "SampledResponse: omega/value length mismatch");
    if (data.omega.size() < 5)
        fail(ErrorCode::DomainError, "SampledResponse: need at least 5 samples");
    for (std::size_t i = 0; i < data.omega.size(); ++i) {
        if (!std::isfinite(data.omega[i]))
            fail(ErrorCode::DomainError, "SampledResponse: non-finite omega");
        if (i > 0 && !(data.omega[i] > data.omega[i - 1]))
            fail(ErrorCode::DomainError,
                 "SampledResponse: omega must be strictly increasing");
        const std::complex<double> v = data.value[i];
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            fail(ErrorCode::DomainError, "SampledResponse: non-finite value");
        if (v == std::complex<double>{0.0, 0.0})
            fail(ErrorCode::DomainError, "SampledResponse: exact zero value");
    }
}

} // namespace tempus
