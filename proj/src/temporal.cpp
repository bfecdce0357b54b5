#include "tempus/temporal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "tempus/fdweights.hpp"

namespace tempus {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

double dist_to_multiple(double x, double step)
{
    return std::abs(x - step * std::round(x / step));
}

} // namespace

TemporalFunction numeric_tau(const SampledResponse& data, int order)
{
    validate(data);
    if (order != 2 && order != 4)
        fail(ErrorCode::DomainError, "numeric_tau: order must be 2 or 4");
    const std::size_t n = data.omega.size();
    if (n < static_cast<std::size_t>(order) + 1)
        fail(ErrorCode::DomainError, "numeric_tau: grid shorter than order + 1");

    std::vector<double> lnmag(n);
    std::vector<double> phase(n);
    double max_step = 0.0;
    double prev_arg = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double mag = std::abs(data.value[i]);
        if (mag < 1e-300)
            fail(ErrorCode::ZeroResponse,
                 "numeric_tau: response magnitude underflow at sample " +
                     std::to_string(i));
        lnmag[i] = std::log(mag);
        const double arg = std::arg(data.value[i]);
        if (i == 0) {
            phase[0] = arg;
        } else {
            // Wrap the raw increment into (-pi, pi]; the unwrapping is only
            // faithful if the true step is below pi in magnitude, so a step
            // at the boundary is an error, not a guess.
            double step = arg - prev_arg;
            step -= 2.0 * kPi * std::floor((step + kPi) / (2.0 * kPi));
            if (std::abs(step) >= kPi * (1.0 - 1e-9))
                fail(ErrorCode::PhaseJump,
                     "numeric_tau: phase step of " + std::to_string(step) +
                         " rad between samples " + std::to_string(i - 1) +
                         " and " + std::to_string(i) +
                         " (grid too coarse to unwrap)");
            max_step = std::max(max_step, std::abs(step));
            phase[i] = phase[i - 1] + step;
        }
        prev_arg = arg;
    }

    TemporalFunction out;
    out.omega = data.omega;
    out.tau1 = fd_first_derivative(data.omega, phase, order);
    out.tau2 = fd_first_derivative(data.omega, lnmag, order);
    for (double& v : out.tau2)
        v = -v; // tau2 = -d ln|S| / d omega
    out.masked.assign(n, 0);
    out.max_phase_step = max_step;
    return out;
}

TauPair model_tau(const ResponseModel& model, double omega, double pole_tol)
{
    validate(model);

    return std::visit(
        [&](const auto& m) -> TauPair {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Lorentzian>) {
                const double d = omega - m.omega0;
                const double den = d * d + m.gamma * m.gamma / 4.0;
                return {m.gamma / 2.0 / den, d / den};
            } else if constexpr (std::is_same_v<T, FreePhoton>) {
                const double ck = m.cspeed * m.kmag;
                if (std::min(std::abs(omega - ck), std::abs(omega + ck)) <
                    pole_tol)
                    fail(ErrorCode::PoleHit,
                         "FreePhoton: singular delay at omega = c|k|");
                return {0.0, 2.0 * omega / (omega * omega - ck * ck)};
            } else if constexpr (std::is_same_v<T, PauliJordan>) {
                if (dist_to_multiple(omega, kPi / m.r) < pole_tol)
                    fail(ErrorCode::PoleHit,
                         "PauliJordan: omega r at a multiple of pi");
                const double x = omega * m.r;
                return {0.0, -m.r * std::cos(x) / std::sin(x)};
            } else if constexpr (std::is_same_v<T, NearField>) {
                if (dist_to_multiple(omega, kPi / m.r) < pole_tol)
                    fail(ErrorCode::PoleHit,
                         "NearField: omega r at a multiple of pi");
                const double x = omega * m.r;
                return {0.0, 2.0 / omega - m.r * std::cos(x) / std::sin(x)};
            } else if constexpr (std::is_same_v<T, PureDelay>) {
                return {m.tdelay, 0.0};
            } else {
                // PauliVillars: the closed form lives at the stored energy
                // p0; the sweep variable omega does not enter it.
                (void)omega;
                const double p2 = m.p0 * m.p0 - m.pmag * m.pmag;
                const double m2 = m.m * m.m;
                const double M2 = m.bigM * m.bigM;
                if (std::abs(p2 - m2) < pole_tol || std::abs(p2 - M2) < pole_tol)
                    fail(ErrorCode::PoleHit, "PauliVillars: p0 on a mass shell");
                return {0.0, 2.0 * m.p0 / (p2 - m2) + 2.0 * m.p0 / (p2 - M2)};
            }
        },
        model);
}

TemporalFunction model_tau_grid(const ResponseModel& model, double lo,
                                double hi, std::size_t n, double pole_tol)
{
    validate(model);
    if (n < 2)
        fail(ErrorCode::DomainError, "model_tau_grid: need at least 2 points");
    if (!(hi > lo))
        fail(ErrorCode::DomainError, "model_tau_grid: require hi > lo");

    const double spacing = (hi - lo) / static_cast<double>(n - 1);

    // Guard points: real poles of the temporal function, widened one spacing
    // past the window so a pole just outside still masks its neighbours.
    // The cot-type models additionally diverge at omega = 0 even though the
    // subtracted pole list starts at n = 1.
    std::vector<double> guards = pole_set(model, lo - spacing, hi + spacing);
    if (std::holds_alternative<PauliJordan>(model) ||
        std::holds_alternative<NearField>(model)) {
        if (lo - spacing <= 0.0 && 0.0 <= hi + spacing)
            guards.push_back(0.0);
    }
    std::sort(guards.begin(), guards.end());
    const double mask_tol = std::max(pole_tol, 0.5 * spacing);

    TemporalFunction out;
    out.omega.resize(n);
    out.tau1.resize(n);
    out.tau2.resize(n);
    out.masked.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = lo + spacing * static_cast<double>(i);
        out.omega[i] = w;
        bool near_pole = false;
        auto it = std::lower_bound(guards.begin(), guards.end(), w);
        if (it != guards.end() && std::abs(*it - w) < mask_tol)
            near_pole = true;
        if (it != guards.begin() && std::abs(*std::prev(it) - w) < mask_tol)
            near_pole = true;
        if (near_pole) {
            out.masked[i] = 1;
            out.tau1[i] = 0.0;
            out.tau2[i] = 0.0;
        } else {
            const TauPair tp = model_tau(model, w, pole_tol);
            out.tau1[i] = tp.tau1;
            out.tau2[i] = tp.tau2;
        }
    }
    return out;
}

RenormalizedPj renormalized_pj_tau(double omega, double r, int terms)
{
    if (!(r > 0.0))
        fail(ErrorCode::DomainError, "renormalized_pj_tau: r must be > 0");
    if (terms < 1)
        fail(ErrorCode::DomainError, "renormalized_pj_tau: terms must be >= 1");

    const double x = omega * r;
    const double ax = std::abs(x);
    // Poles sit at |x| = n pi for n >= 1 only: the n = 0 divergence is what
    // the renormalization removed, so x near 0 is regular.
    if (ax > kPi / 2.0 && dist_to_multiple(ax, kPi) < 1e-9)
        fail(ErrorCode::PoleHit, "renormalized_pj_tau: omega r at n pi");

    // Closed form -r (cot x - 1/x); the small-x branch avoids the 1/x - 1/x
    // cancellation with the Laurent tail of cot.
    double g; // cot x - 1/x
    const double x2 = x * x;
    if (ax < 0.1) {
        g = -x * (1.0 / 3.0 +
                  x2 * (1.0 / 45.0 + x2 * (2.0 / 945.0 + x2 / 4725.0)));
    } else {
        g = std::cos(x) / std::sin(x) - 1.0 / x;
    }
    const double closed = -r * g;

    // Pole expansion sum_{n>=1} 1/(x^2 - pi^2 n^2), truncated at N terms and
    // completed with a midpoint Euler-Maclaurin tail:
    //   sum_{n>N} f(n) = int_{N+1/2}^inf f dt + f'(N+1/2)/24 + O(a^-5),
    // which holds the truncation error below 1e-9 relative for N >= 64.
    const int n_terms = std::max(
        {terms, 64, static_cast<int>(std::ceil(ax / kPi)) + 8});
    double sum = 0.0;
    double comp = 0.0; // Neumaier compensation
    for (int n = 1; n <= n_terms; ++n) {
        const double pn = kPi * static_cast<double>(n);
        const double term = 1.0 / (x2 - pn * pn);
        const double t = sum + term;
        comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term
                                                : (term - t) + sum;
        sum = t;
    }
    sum += comp;

    const double a = static_cast<double>(n_terms) + 0.5;
    const double pa = kPi * a;
    double tail_int;
    if (ax < 1e-4 * pa) {
        // (1/(2 pi x)) ln((pa-x)/(pa+x)) -> -1/(pi^2 a) as x -> 0.
        const double u2 = x2 / (pa * pa);
        tail_int = -(1.0 / (kPi * kPi * a)) * (1.0 + u2 / 3.0 + u2 * u2 / 5.0);
    } else {
        tail_int = std::log((pa - x) / (pa + x)) / (2.0 * kPi * x);
    }
    const double da = x2 - pa * pa;
    const double fprime = 2.0 * kPi * kPi * a / (da * da);
    const double series = -2.0 * omega * r * r * (sum + tail_int + fprime / 24.0);

    return {closed, series, n_terms};
}

Composition compose_tau(const AmplitudeFn& k1, const AmplitudeFn& k2,
                        double gamma_c, double omega, double step)
{
    const double h = step > 0.0 ? step : std::max(1e-6, 1e-6 * std::abs(omega));

    auto denom_at = [&](const AmplitudeFn& k, double w) {
        const std::complex<double> d = 1.0 - gamma_c * k(w);
        if (std::abs(d) < 1e-12)
            fail(ErrorCode::ResolventSingular,
                 "compose_tau: resolvent denominator vanishes near omega");
        return d;
    };

    // tau = (1/i) d/dw ln[1/(1 - gamma K)] = i d/dw ln(1 - gamma K).
    // The derivative uses the log of the ratio of the two central samples
    // (branch-safe for small h) and one Richardson extrapolation step.
    auto tau_for = [&](const AmplitudeFn& k) {
        (void)denom_at(k, omega);
        auto diff = [&](double hh) {
            return std::log(denom_at(k, omega + hh) / denom_at(k, omega - hh)) /
                   (2.0 * hh);
        };
        const std::complex<double> d1 = diff(h);
        const std::complex<double> d2 = diff(h / 2.0);
        return kI * (4.0 * d2 - d1) / 3.0;
    };

    AmplitudeFn total = [&](double w) { return k1(w) + k2(w); };
    Composition out;
    out.tau_total = tau_for(total);
    out.tau_part1 = tau_for(k1);
    out.tau_part2 = tau_for(k2);
    out.nonadditivity = out.tau_total - out.tau_part1 - out.tau_part2;
    return out;
}

ProperDuration proper_duration(double tau, double v_over_c)
{
    if (!(v_over_c >= 0.0 && v_over_c <= 1.0))
        fail(ErrorCode::DomainError,
             "proper_duration: v/c must lie in [0, 1]");
    return {tau, v_over_c, tau * tau * (1.0 - v_over_c * v_over_c)};
}

TauPair switching_tau(double gamma_s, double omega, double omega0,
                      SwitchMode mode)
{
    if (!(gamma_s > 0.0))
        fail(ErrorCode::DomainError, "switching_tau: gamma_s must be > 0");
    const double d = omega - omega0;
    const double den = kPi * (d * d + gamma_s * gamma_s);
    const double t1 = gamma_s / den;
    switch (mode) {
    case SwitchMode::TurnOn:
        return {t1, d / den};
    case SwitchMode::TurnOff:
        return {t1, -d / den};
    default:
        return {t1, 0.0};
    }
}

TauPair switching_tau_numeric(double gamma_s, double omega, double omega0,
                              SwitchMode mode)
{
    if (!(gamma_s > 0.0))
        fail(ErrorCode::DomainError, "switching_tau_numeric: gamma_s must be > 0");

    // Literal spectrum of the turn-on edge over a window long enough that
    // the truncated tail is ~e^-30 of the integral.
    const int nt = 6000;
    const double dt = 1.0 / (200.0 * gamma_s);
    const double dw = gamma_s / 100.0;

    std::array<std::complex<double>, 5> ln_s;
    for (int j = 0; j < 5; ++j) {
        const double delta = omega + (j - 2) * dw - omega0;
        std::complex<double> acc{0.0, 0.0};
        for (int it = 0; it <= nt; ++it) {
            const double t = dt * it;
            const double wgt = (it == 0 || it == nt) ? 0.5 : 1.0;
            acc += wgt * std::exp(std::complex<double>(-gamma_s * t, delta * t));
        }
        // S stays in the right half-plane, so the principal log is smooth
        // across the stencil.
        ln_s[j] = std::log(acc * dt);
    }

    const std::complex<double> dlns =
        (ln_s[0] - 8.0 * ln_s[1] + 8.0 * ln_s[3] - ln_s[4]) / (12.0 * dw);
    // tau = (1/i) d ln S / dw, then the same 1/pi spectral-density
    // normalization the closed form carries.
    const std::complex<double> tau_on = -kI * dlns / kPi;

    switch (mode) {
    case SwitchMode::TurnOn:
        return {tau_on.real(), tau_on.imag()};
    case SwitchMode::TurnOff:
        // The off edge is the time reverse of the on edge, so its temporal
        // function is the complex conjugate.
        return {tau_on.real(), -tau_on.imag()};
    default:
        // Average of the two mirrored paths; tau2 cancels exactly.
        return {tau_on.real(), 0.0};
    }
}

} // namespace tempus
