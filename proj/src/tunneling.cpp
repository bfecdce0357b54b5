#include "tempus/tunneling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tempus/fft.hpp"

namespace tempus {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// Largest argument for which cosh stays finite in double.
constexpr double kCoshMax = 700.0;

std::size_t tab_argmax(const TabulatedBarrier& tab)
{
    return static_cast<std::size_t>(
        std::max_element(tab.u.begin(), tab.u.end()) - tab.u.begin());
}

} // namespace

void validate(const BarrierSpec& barrier)
{
    std::visit(
        [](const auto& b) {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, SquareBarrier> ||
                          std::is_same_v<T, ParabolicBarrier>) {
                if (!(b.u0 > 0.0) || !(b.a > 0.0))
                    fail(ErrorCode::DomainError,
                         "barrier: u0 and a must be > 0");
            } else {
                if (b.x.size() != b.u.size() || b.x.size() < 3)
                    fail(ErrorCode::DomainError,
                         "tabulated barrier: need matched grids of >= 3 points");
                for (std::size_t i = 0; i < b.x.size(); ++i) {
                    if (!std::isfinite(b.x[i]) || !std::isfinite(b.u[i]))
                        fail(ErrorCode::DomainError,
                             "tabulated barrier: non-finite sample");
                    if (i > 0 && !(b.x[i] > b.x[i - 1]))
                        fail(ErrorCode::DomainError,
                             "tabulated barrier: x must be strictly increasing");
                }
                // Single maximum: monotone (weakly) up to the peak, then
                // monotone down.
                const std::size_t imax = tab_argmax(b);
                for (std::size_t i = 0; i + 1 < b.x.size(); ++i) {
                    const bool bad = i < imax ? b.u[i + 1] < b.u[i]
                                              : b.u[i + 1] > b.u[i];
                    if (bad)
                        fail(ErrorCode::DomainError,
                             "tabulated barrier: must have a single maximum");
                }
            }
        },
        barrier);
}

TurningPoints turning_points(const BarrierSpec& barrier, double energy_E)
{
    validate(barrier);
    if (!(energy_E > 0.0))
        fail(ErrorCode::DomainError, "turning_points: energy must be > 0");

    return std::visit(
        [&](const auto& b) -> TurningPoints {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, SquareBarrier>) {
                if (energy_E >= b.u0)
                    fail(ErrorCode::NoBarrier,
                         "turning_points: energy at or above the barrier top");
                return {-b.a, b.a};
            } else if constexpr (std::is_same_v<T, ParabolicBarrier>) {
                if (energy_E >= b.u0)
                    fail(ErrorCode::NoBarrier,
                         "turning_points: energy at or above the barrier top");
                const double s = b.a * std::sqrt(1.0 - energy_E / b.u0);
                return {-s, s};
            } else {
                const std::size_t imax = tab_argmax(b);
                if (energy_E >= b.u[imax])
                    fail(ErrorCode::NoBarrier,
                         "turning_points: energy at or above the barrier top");

                // Bisection on a flank segment of the piecewise-linear
                // interpolant; below(x) follows the sign of U(x) - E.
                auto bisect = [&](double lo, double hi, double u_lo,
                                  double u_hi) {
                    // Invariant: (u_lo - E) <= 0 < (u_hi - E) or mirrored.
                    for (int it = 0; it < 200; ++it) {
                        if (hi - lo <= 1e-12 * std::max(1.0, std::abs(hi)))
                            break;
                        const double mid = 0.5 * (lo + hi);
                        const double um =
                            u_lo + (u_hi - u_lo) * (mid - lo) / (hi - lo);
                        // Keep the sub-bracket that still straddles E.  The
                        // interpolant is re-linearized on the half kept, which
                        // is exact because the segment itself is linear.
                        if ((u_lo <= energy_E) == (um <= energy_E)) {
                            lo = mid;
                            u_lo = um;
                        } else {
                            hi = mid;
                            u_hi = um;
                        }
                    }
                    return 0.5 * (lo + hi);
                };

                // Left flank: last node at or below E before the peak.
                std::size_t li = imax;
                while (li > 0 && b.u[li - 1] > energy_E)
                    --li;
                if (li == 0 || !(b.u[li - 1] <= energy_E))
                    fail(ErrorCode::DomainError,
                         "turning_points: left flank never descends to E");
                const double xl = bisect(b.x[li - 1], b.x[li], b.u[li - 1],
                                         b.u[li]);

                // Right flank: first node at or below E after the peak.
                std::size_t ri = imax;
                while (ri + 1 < b.u.size() && b.u[ri + 1] > energy_E)
                    ++ri;
                if (ri + 1 >= b.u.size() || !(b.u[ri + 1] <= energy_E))
                    fail(ErrorCode::DomainError,
                         "turning_points: right flank never descends to E");
                const double xr = bisect(b.x[ri], b.x[ri + 1], b.u[ri],
                                         b.u[ri + 1]);
                return {xl, xr};
            }
        },
        barrier);
}

WkbTau wkb_tau(const BarrierSpec& barrier, double mass_m, double energy_E)
{
    if (!(mass_m > 0.0))
        fail(ErrorCode::DomainError, "wkb_tau: mass must be > 0");
    const TurningPoints tp = turning_points(barrier, energy_E);

    double integral = 0.0;
    double quad_err = 0.0;

    if (const auto* sq = std::get_if<SquareBarrier>(&barrier)) {
        const double g = sq->u0 - energy_E;
        const QuadResult q = tanh_sinh(
            [&](double) { return 1.0 / std::sqrt(g); }, tp.x_left, tp.x_right);
        integral = q.value;
        quad_err = q.error;
    } else if (const auto* pb = std::get_if<ParabolicBarrier>(&barrier)) {
        const double u0 = pb->u0;
        const double a = pb->a;
        // Work from the offset d off the nearer turning point: with
        // x = +-(b - d) the profile is exactly
        //   U - E = g_edge + u0 d (2b - d) / a^2,   g_edge = U(b) - E ~ 0,
        // which stays accurate in the quadrature tail where b - d rounds
        // to b and an x-based evaluation would see U - E = g_edge exactly.
        const double b_t = tp.x_right;
        const double g_edge = u0 * (1.0 - b_t * b_t / (a * a)) - energy_E;
        const QuadResult q = tanh_sinh(
            [&](double, double xc) {
                const double d = std::abs(xc);
                const double g = g_edge + u0 * d * (2.0 * b_t - d) / (a * a);
                if (!(g > 0.0))
                    return std::numeric_limits<double>::infinity();
                return 1.0 / std::sqrt(g);
            },
            tp.x_left, tp.x_right);
        integral = q.value;
        quad_err = q.error;
    } else {
        // Piecewise-linear barrier: integrate each linear segment of
        // U - E exactly.  With g linear from g0 to g1 over [s0, s1],
        // int dx / sqrt(g) = 2 (s1 - s0) / (sqrt(g0) + sqrt(g1)), a form
        // that absorbs the endpoint singularities (g = 0) analytically and
        // degrades to the flat-segment value as g1 -> g0.
        const auto& tab = std::get<TabulatedBarrier>(barrier);
        double comp = 0.0;
        std::size_t segments = 0;
        for (std::size_t i = 0; i + 1 < tab.x.size(); ++i) {
            const double s0 = std::max(tab.x[i], tp.x_left);
            const double s1 = std::min(tab.x[i + 1], tp.x_right);
            if (!(s1 > s0))
                continue;
            const double h = tab.x[i + 1] - tab.x[i];
            auto g_at = [&](double s) {
                const double u = tab.u[i] +
                                 (tab.u[i + 1] - tab.u[i]) * (s - tab.x[i]) / h;
                // The clipped endpoints are the bisected turning points;
                // clamp their ~1e-12 residual to the exact zero they mean.
                return std::max(u - energy_E, 0.0);
            };
            const double g0 = g_at(s0);
            const double g1 = g_at(s1);
            const double root_sum = std::sqrt(g0) + std::sqrt(g1);
            if (!(root_sum > 0.0))
                fail(ErrorCode::DomainError,
                     "wkb_tau: barrier runs flat at the energy level");
            const double term = 2.0 * (s1 - s0) / root_sum;
            const double t = integral + term;
            comp += std::abs(integral) >= std::abs(term)
                        ? (integral - t) + term
                        : (term - t) + integral;
            integral = t;
            ++segments;
        }
        integral += comp;
        quad_err = std::numeric_limits<double>::epsilon() * integral *
                   static_cast<double>(segments);
    }

    if (quad_err > 1e-6 * std::abs(integral))
        fail(ErrorCode::QuadratureFail,
             "wkb_tau: quadrature error estimate above 1e-6 relative");

    WkbTau out;
    out.tau = {0.0, -std::sqrt(mass_m / 2.0) * integral};
    out.turning = tp;
    out.quad_error = quad_err;
    return out;
}

BarrierCoefficients square_coefficients(const SquareBarrier& barrier,
                                        double mass_m, double k)
{
    // u0 = 0 (the free limit) is admitted here even though wkb_tau would
    // reject it: the stationary problem is well posed and t must become 1.
    if (!(k > 0.0))
        fail(ErrorCode::DomainError, "square_coefficients: k must be > 0");
    if (!(barrier.a > 0.0) || !(barrier.u0 >= 0.0) || !(mass_m > 0.0))
        fail(ErrorCode::DomainError,
             "square_coefficients: a > 0, u0 >= 0, mass > 0 required");

    const double w = 2.0 * barrier.a;
    const double x1 = -barrier.a; // barrier centered on the origin
    const std::complex<double> kappa =
        std::sqrt(std::complex<double>(2.0 * mass_m * barrier.u0 - k * k, 0.0));
    const std::complex<double> ratio_m = kappa / k - k / kappa;
    const std::complex<double> ratio_p = kappa / k + k / kappa;
    const std::complex<double> phase_t = std::exp(-kI * k * w);
    const std::complex<double> phase_r = std::exp(2.0 * kI * k * x1);

    if (kappa.real() * w > kCoshMax) {
        // Deep-barrier asymptote: cosh ~ sinh ~ e^{kappa w}/2 overflows, but
        // t underflows to 0 and r keeps |r| = 1 exactly in the limit.
        const std::complex<double> den_lim = 1.0 + kI / 2.0 * ratio_m;
        return {{0.0, 0.0}, -(kI / 2.0) * ratio_p / den_lim * phase_r};
    }

    const std::complex<double> den =
        std::cosh(kappa * w) + kI / 2.0 * ratio_m * std::sinh(kappa * w);
    BarrierCoefficients out;
    out.t = phase_t / den;
    out.r = -(kI / 2.0) * ratio_p * std::sinh(kappa * w) / den * phase_r;
    return out;
}

PacketFields transmit_packet(const SquareBarrier& barrier, double mass_m,
                             const PacketSpec& packet, double t)
{
    if (!(mass_m > 0.0))
        fail(ErrorCode::DomainError, "transmit_packet: mass must be > 0");
    if (!(packet.width_a > 0.0) || !(packet.dx > 0.0))
        fail(ErrorCode::DomainError,
             "transmit_packet: width and dx must be > 0");
    const int n = packet.n;
    if (n < 8 || (n & (n - 1)) != 0)
        fail(ErrorCode::DomainError,
             "transmit_packet: n must be a power of two, >= 8");

    const double dx = packet.dx;
    PacketFields out;
    out.x.resize(n);
    std::vector<std::complex<double>> psi(n);
    double norm2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = (i - n / 2) * dx;
        out.x[i] = x;
        const double d = x - packet.x0;
        const double g =
            std::exp(-d * d / (4.0 * packet.width_a * packet.width_a));
        psi[i] = g * std::exp(kI * packet.k0 * x);
        norm2 += g * g * dx;
    }
    const double scale = 1.0 / std::sqrt(norm2);
    double overlap = 0.0;
    for (int i = 0; i < n; ++i) {
        psi[i] *= scale;
        if (std::abs(out.x[i]) <= barrier.a)
            overlap += std::norm(psi[i]) * dx;
    }
    if (overlap >= 1e-10)
        fail(ErrorCode::DomainError,
             "transmit_packet: initial packet overlaps the barrier region");

    std::vector<std::complex<double>> spec = psi;
    fft_radix2(spec, false);

    // Spectral sanity: weight within 10% of the Nyquist edge means the grid
    // cannot represent the packet it was given.
    const double k_nyq = std::numbers::pi / dx;
    double total_w = 0.0;
    double edge_w = 0.0;
    std::vector<double> kgrid(n);
    for (int j = 0; j < n; ++j) {
        const int jj = j < n / 2 ? j : j - n;
        kgrid[j] = 2.0 * std::numbers::pi * jj / (n * dx);
        const double wgt = std::norm(spec[j]);
        total_w += wgt;
        if (std::abs(kgrid[j]) > 0.9 * k_nyq)
            edge_w += wgt;
    }
    if (edge_w > 1e-8 * total_w)
        fail(ErrorCode::GridTooCoarse,
             "transmit_packet: spectral weight at the Nyquist edge");

    std::vector<std::complex<double>> ft(n);
    std::vector<std::complex<double>> fr(n);
    for (int j = 0; j < n; ++j) {
        const double kj = kgrid[j];
        const std::complex<double> evolve =
            std::exp(-kI * (kj * kj / (2.0 * mass_m)) * t);
        fr[j] = spec[j] * evolve;
        // Only forward-moving modes can appear on the far side.
        ft[j] = kj > 0.0
                    ? spec[j] * square_coefficients(barrier, mass_m, kj).t *
                          evolve
                    : std::complex<double>{0.0, 0.0};
    }
    fft_radix2(ft, true);
    fft_radix2(fr, true);
    out.transmitted = std::move(ft);
    out.free_ref = std::move(fr);

    auto l2 = [&](const std::vector<std::complex<double>>& v) {
        double acc = 0.0;
        for (const auto& z : v)
            acc += std::norm(z) * dx;
        return std::sqrt(acc);
    };
    out.norm_transmitted = l2(out.transmitted);
    out.norm_initial = l2(psi);
    return out;
}

PeakAdvance measure_advance(const std::vector<std::complex<double>>& transmitted,
                            const std::vector<std::complex<double>>& reference,
                            double dx, double v_group)
{
    const std::size_t n = transmitted.size();
    if (reference.size() != n || n < 4 || (n & (n - 1)) != 0)
        fail(ErrorCode::DomainError,
             "measure_advance: need equal power-of-two field lengths");
    if (!(dx > 0.0) || !(v_group > 0.0))
        fail(ErrorCode::DomainError,
             "measure_advance: dx and v_group must be > 0");

    double nrm2 = 0.0;
    for (const auto& z : transmitted)
        nrm2 += std::norm(z) * dx;
    if (std::sqrt(nrm2) < 1e-14)
        fail(ErrorCode::NoPeak,
             "measure_advance: transmitted field has no usable norm");

    std::vector<std::complex<double>> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = std::norm(transmitted[i]);
        b[i] = std::norm(reference[i]);
    }
    fft_radix2(a, false);
    fft_radix2(b, false);
    for (std::size_t i = 0; i < n; ++i)
        a[i] *= std::conj(b[i]);
    fft_radix2(a, true);

    std::size_t s = 0;
    double best = a[0].real();
    for (std::size_t i = 1; i < n; ++i) {
        if (a[i].real() > best) {
            best = a[i].real();
            s = i;
        }
    }
    const double cm = a[(s + n - 1) % n].real();
    const double c0 = best;
    const double cp = a[(s + 1) % n].real();
    const double den = cm - 2.0 * c0 + cp;
    const double frac = std::abs(den) > 0.0 ? 0.5 * (cm - cp) / den : 0.0;

    double shift = static_cast<double>(s) + frac;
    if (shift > static_cast<double>(n) / 2.0)
        shift -= static_cast<double>(n);

    PeakAdvance out;
    out.peak_shift = shift * dx;
    out.effective_delay = -out.peak_shift / v_group;
    return out;
}

HartmanResult hartman_experiment(const HartmanConfig& config)
{
    if (!(config.mass_m > 0.0) || !(config.u0 > 0.0) || !(config.k0 > 0.0) ||
        !(config.half_width_a > 0.0))
        fail(ErrorCode::DomainError, "hartman_experiment: malformed config");
    const double ksq = 2.0 * config.mass_m * config.u0 - config.k0 * config.k0;
    if (!(ksq > 0.0))
        fail(ErrorCode::DomainError,
             "hartman_experiment: carrier energy must sit under the barrier");

    const PacketSpec packet{config.k0, config.packet_width, config.x0,
                            config.n, config.dx};
    const double v_group = config.k0 / config.mass_m;

    auto run = [&](double half_width) {
        const SquareBarrier bar{config.u0, half_width};
        const PacketFields f =
            transmit_packet(bar, config.mass_m, packet, config.t_snapshot);
        const PeakAdvance adv =
            measure_advance(f.transmitted, f.free_ref, config.dx, v_group);
        HartmanRow row;
        row.width_w = 2.0 * half_width;
        row.norm_transmitted = f.norm_transmitted;
        row.peak_shift = adv.peak_shift;
        row.effective_delay = adv.effective_delay;
        row.traversal = adv.effective_delay + row.width_w / v_group;
        return row;
    };

    HartmanResult out;
    out.single = run(config.half_width_a);
    out.doubled = run(2.0 * config.half_width_a);
    out.kappa = std::sqrt(ksq);
    out.v_group = v_group;
    out.saturation_delta = std::abs(out.doubled.traversal - out.single.traversal);
    out.packet_time_width = config.packet_width / v_group;
    out.saturated = out.saturation_delta < out.packet_time_width / 10.0;
    return out;
}

} // namespace tempus
