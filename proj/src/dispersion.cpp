#include "tempus/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tempus/fdweights.hpp"
#include "tempus/rng.hpp"

namespace tempus {

namespace {

// Compensated (Neumaier) accumulator.  Used both inside blocks and across
// block partials so the reduction order -- and therefore the result bit
// pattern -- is fixed by construction, not by the scheduler.
struct Accum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v)
    {
        const double t = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    double get() const { return sum + comp; }
};

struct WalkSample {
    double t;
    double events;
};

// One photon through the slab.  Free flight at c with exponential legs;
// each scattering charges the pause tau1, then the formation stage: tau2 > 0
// drifts the photon forward by c tau2 at speed c (time charged), tau2 < 0
// skips it forward by c |tau2| instantly (negative formation time: the
// scattered wave is ahead of schedule).
WalkSample walk_one(std::uint64_t seed, std::uint64_t idx, double L, double ell,
                    double tau1, double tau2, double cspeed)
{
    SplitMix64 rng{photon_stream_seed(seed, idx)};
    double pos = 0.0;
    double t = 0.0;
    double events = 0.0;
    for (;;) {
        const double step = -ell * std::log(u01(rng.next()));
        if (pos + step >= L) {
            t += (L - pos) / cspeed;
            break;
        }
        pos += step;
        t += step / cspeed;
        events += 1.0;
        t += tau1;
        if (tau2 > 0.0) {
            const double drift = cspeed * tau2;
            if (pos + drift >= L) {
                t += (L - pos) / cspeed;
                break;
            }
            pos += drift;
            t += tau2;
        } else if (tau2 < 0.0) {
            pos += cspeed * (-tau2);
            if (pos >= L)
                break;
        }
    }
    return {t, events};
}

} // namespace

TransportResult transport_walk(double L, double ell, double tau1, double tau2,
                               double cspeed, std::uint64_t photons,
                               std::uint64_t seed, bool force_serial)
{
    if (!(L > 0.0) || !(ell > 0.0) || !(cspeed > 0.0))
        fail(ErrorCode::DomainError,
             "transport_walk: L, ell, cspeed must be > 0");
    if (photons < 1)
        fail(ErrorCode::DomainError, "transport_walk: need at least 1 photon");
    if (ell + cspeed * tau2 <= 0.0)
        fail(ErrorCode::NoProgress,
             "transport_walk: ell + c tau2 <= 0, mean cycle advances nowhere");

    const std::uint64_t nblocks =
        (photons + kTransportBlock - 1) / kTransportBlock;
    std::vector<double> block_t(nblocks);
    std::vector<double> block_t2(nblocks);
    std::vector<double> block_ev(nblocks);

    auto run_block = [&](std::uint64_t b) {
        const std::uint64_t begin = b * kTransportBlock;
        const std::uint64_t end = std::min(photons, begin + kTransportBlock);
        Accum at, at2, aev;
        for (std::uint64_t i = begin; i < end; ++i) {
            const WalkSample s = walk_one(seed, i, L, ell, tau1, tau2, cspeed);
            at.add(s.t);
            at2.add(s.t * s.t);
            aev.add(s.events);
        }
        block_t[b] = at.get();
        block_t2[b] = at2.get();
        block_ev[b] = aev.get();
    };

#ifdef _OPENMP
    if (!force_serial) {
#pragma omp parallel for schedule(static)
        for (long long b = 0; b < static_cast<long long>(nblocks); ++b)
            run_block(static_cast<std::uint64_t>(b));
    } else
#endif
    {
        (void)force_serial;
        for (std::uint64_t b = 0; b < nblocks; ++b)
            run_block(b);
    }

    Accum st, st2, sev;
    for (std::uint64_t b = 0; b < nblocks; ++b) {
        st.add(block_t[b]);
        st2.add(block_t2[b]);
        sev.add(block_ev[b]);
    }

    const double n = static_cast<double>(photons);
    const double mean = st.get() / n;
    double variance = 0.0;
    if (photons > 1)
        variance = std::max(0.0, (st2.get() - n * mean * mean) / (n - 1.0));

    TransportResult out{};
    out.mean_transit = mean;
    out.stderr_transit = std::sqrt(variance / n);
    out.n_events_mean = sev.get() / n;
    out.samples = photons;
    out.n_group = cspeed * mean / L;
    out.momentum_fraction = 1.0 - 1.0 / out.n_group;
    out.displacement = 0.0;
    return out;
}

TransitTime transit_time(double L, double ell, double tau1, double tau2,
                         double cspeed)
{
    if (!(L > 0.0) || !(ell > 0.0) || !(cspeed > 0.0))
        fail(ErrorCode::DomainError, "transit_time: L, ell, cspeed must be > 0");
    const double n = L / (ell + cspeed * std::abs(tau2));
    const double t = tau2 >= 0.0 ? L / cspeed + n * tau1
                                 : L / cspeed + n * (tau1 - std::abs(tau2));
    if (t < 0.0)
        fail(ErrorCode::NonPhysical,
             "transit_time: negative mean transit (skips outrun the slab)");
    return {t, n};
}

GroupIndex group_index(double ell, double tau1, double tau2, double cspeed)
{
    if (!(ell > 0.0) || !(cspeed > 0.0))
        fail(ErrorCode::DomainError, "group_index: ell, cspeed must be > 0");
    const double den = ell + cspeed * tau2;
    if (den <= 0.0)
        fail(ErrorCode::DenominatorCollapse,
             "group_index: ell + c tau2 <= 0 (cell length collapsed)");
    GroupIndex out;
    out.n_g = 1.0 + cspeed * tau1 / den;
    out.n_g_thin = 1.0 + cspeed * tau1 / ell;
    out.n_g_transit =
        tau2 >= 0.0 ? out.n_g
                    : 1.0 + cspeed * (tau1 - std::abs(tau2)) /
                                (ell + cspeed * std::abs(tau2));
    return out;
}

PhaseIndex phase_index(const std::vector<double>& omega,
                       const std::vector<double>& n_g, double omega_eval)
{
    const std::size_t n = omega.size();
    if (n_g.size() != n || n < 2)
        fail(ErrorCode::DomainError, "phase_index: need matched grids, >= 2 points");
    if (!(omega.front() > 0.0))
        fail(ErrorCode::DomainError, "phase_index: grid must start above omega = 0");
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(omega[i]) || !std::isfinite(n_g[i]))
            fail(ErrorCode::DomainError, "phase_index: non-finite sample");
        if (i > 0 && !(omega[i] > omega[i - 1]))
            fail(ErrorCode::DomainError,
                 "phase_index: omega must be strictly increasing");
    }
    if (!(omega_eval >= omega.front() && omega_eval <= omega.back()))
        fail(ErrorCode::DomainError,
             "phase_index: omega_eval outside the sampled grid");

    double h_min = std::numeric_limits<double>::infinity();
    double h_max = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = omega[i + 1] - omega[i];
        h_min = std::min(h_min, h);
        h_max = std::max(h_max, h);
    }
    if (h_max / h_min > 10.0)
        fail(ErrorCode::GridGap,
             "phase_index: grid spacing varies by more than 10x");

    // Node curvatures for the trapezoid error estimate (one-sided copies at
    // the ends).
    std::vector<double> curv(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hl = omega[i] - omega[i - 1];
        const double hr = omega[i + 1] - omega[i];
        const double sl = (n_g[i] - n_g[i - 1]) / hl;
        const double sr = (n_g[i + 1] - n_g[i]) / hr;
        curv[i] = 2.0 * (sr - sl) / (hl + hr);
    }
    if (n > 2) {
        curv[0] = curv[1];
        curv[n - 1] = curv[n - 2];
    }

    double integral = 0.0;
    double err = 0.0;
    for (std::size_t i = 0; i + 1 < n && omega[i] < omega_eval; ++i) {
        const double hi = std::min(omega[i + 1], omega_eval);
        const double h_full = omega[i + 1] - omega[i];
        const double h = hi - omega[i];
        // Linear interpolation of the right endpoint for a partial segment.
        const double frac = h / h_full;
        const double ng_hi = n_g[i] + frac * (n_g[i + 1] - n_g[i]);
        integral += 0.5 * h * (n_g[i] + ng_hi);
        err += h * h * h / 12.0 * std::max(std::abs(curv[i]), std::abs(curv[i + 1]));
    }

    // Unsampled head [0, omega_front]: constant-n_g approximation, with the
    // first-segment slope bounding its error.
    const double w0 = omega.front();
    const double head = n_g.front() * w0;
    const double slope0 = (n_g[1] - n_g[0]) / (omega[1] - omega[0]);
    err += 0.5 * std::abs(slope0) * w0 * w0;

    return {(head + integral) / omega_eval, err / omega_eval};
}

TemporalFunction delay_from_index(const std::vector<double>& omega,
                                  const std::vector<double>& n,
                                  double density_N, double sigma_tot,
                                  double cspeed, int order)
{
    if (omega.size() != n.size())
        fail(ErrorCode::DomainError, "delay_from_index: grid length mismatch");
    if (order != 2 && order != 4)
        fail(ErrorCode::DomainError, "delay_from_index: order must be 2 or 4");
    if (omega.size() < static_cast<std::size_t>(order) + 1)
        fail(ErrorCode::DomainError, "delay_from_index: grid shorter than order + 1");
    if (!(density_N > 0.0) || !(sigma_tot > 0.0) || !(cspeed > 0.0))
        fail(ErrorCode::DomainError,
             "delay_from_index: density, sigma, cspeed must be > 0");
    for (std::size_t i = 1; i < omega.size(); ++i)
        if (!(omega[i] > omega[i - 1]))
            fail(ErrorCode::DomainError,
                 "delay_from_index: omega must be strictly increasing");

    std::vector<double> f(omega.size());
    for (std::size_t i = 0; i < omega.size(); ++i)
        f[i] = omega[i] * n[i];
    const std::vector<double> d = fd_first_derivative(omega, f, order);

    TemporalFunction out;
    out.omega = omega;
    out.tau1.resize(omega.size());
    const double scale = cspeed * density_N * sigma_tot;
    for (std::size_t i = 0; i < omega.size(); ++i)
        out.tau1[i] = (d[i] - 1.0) / scale;
    out.tau2.assign(omega.size(), 0.0);
    out.masked.assign(omega.size(), 0);
    return out;
}

MomentumLedger momentum_ledger(double n_g, double hbar_k, double n_phase)
{
    if (!(n_g > 0.0) || !(n_phase > 0.0))
        fail(ErrorCode::DomainError, "momentum_ledger: n_g, n_phase must be > 0");
    MomentumLedger out;
    out.fraction_in_body = 1.0 - 1.0 / n_g;
    out.p_photon_transit = out.fraction_in_body * hbar_k;
    out.delta_hk = hbar_k / n_g;
    out.p_minkowski = n_phase * hbar_k / n_g;
    out.p_abraham = hbar_k / (n_phase * n_g);
    return out;
}

Displacement displacement(double n_g, double hbar_omega, double mass_M,
                          double L, double cspeed)
{
    if (!(mass_M > 0.0) || !(L > 0.0) || !(cspeed > 0.0))
        fail(ErrorCode::DomainError,
             "displacement: mass, L, cspeed must be > 0");
    const double ratio = (n_g - 1.0) * hbar_omega / (mass_M * cspeed * cspeed);
    return {ratio * L, ratio};
}

AbsorptionRecoil absorption_recoil(double omega, double n_phase, double delta_U)
{
    if (!(n_phase > 0.0))
        fail(ErrorCode::DomainError, "absorption_recoil: n_phase must be > 0");
    if (!(delta_U >= 0.0) || !(omega > delta_U))
        fail(ErrorCode::DomainError,
             "absorption_recoil: require omega > delta_U >= 0");
    AbsorptionRecoil out;
    out.omega_prime = (omega - delta_U) / (n_phase * n_phase);
    out.p_absorbed = n_phase * omega;
    out.p_body = (1.0 - n_phase) * omega;
    out.p_total_check = out.p_absorbed + out.p_body;
    return out;
}

QuasiMomentum quasi_momentum(double k, double density_N, double sigma_tot,
                             double tau, double cspeed)
{
    if (!(k > 0.0) || !(density_N > 0.0) || !(sigma_tot > 0.0) ||
        !(tau > 0.0) || !(cspeed > 0.0))
        fail(ErrorCode::DomainError, "quasi_momentum: all inputs must be > 0");
    return {k + density_N * sigma_tot,
            k * (1.0 + cspeed * density_N * sigma_tot * tau)};
}

EvanescentSplit evanescent_split(double omega, double r, double cspeed)
{
    if (!(r > 0.0) || !(cspeed > 0.0))
        fail(ErrorCode::DomainError, "evanescent_split: r, cspeed must be > 0");
    const double x = std::abs(omega) * r / cspeed;
    const double geom = 1.0 / (4.0 * std::numbers::pi * r);
    return {std::complex<double>(std::cos(x), std::sin(x)) * geom,
            std::complex<double>(std::exp(-x) * geom, 0.0)};
}

Forerunner forerunner_threshold(double lambda_w, double v_sound, double omega,
                                double hbar)
{
    if (!(lambda_w > 0.0) || !(v_sound > 0.0) || !(omega > 0.0) ||
        !(hbar > 0.0))
        fail(ErrorCode::DomainError,
             "forerunner_threshold: all inputs must be > 0");
    const double j = v_sound / (lambda_w * lambda_w * lambda_w);
    return {j, hbar * omega * j};
}

double medium_sigma(const MediumSpec& medium, double omega)
{
    if (!(medium.sigma0 >= 0.0))
        fail(ErrorCode::DomainError, "medium_sigma: sigma0 must be >= 0");
    if (medium.sigma_model == "constant")
        return medium.sigma0;
    if (medium.sigma_model == "lorentzian") {
        if (!(medium.gamma > 0.0))
            fail(ErrorCode::DomainError, "medium_sigma: gamma must be > 0");
        const double d = omega - medium.omega0;
        const double g24 = medium.gamma * medium.gamma / 4.0;
        return medium.sigma0 * g24 / (d * d + g24);
    }
    fail(ErrorCode::DomainError,
         "medium_sigma: unknown sigma_model '" + medium.sigma_model + "'");
}

TransportResult simulate_transport(const MediumSpec& medium, double omega,
                                   std::uint64_t photons, std::uint64_t seed,
                                   bool force_serial)
{
    if (!(medium.length_L > 0.0) || !(medium.cspeed > 0.0) ||
        !(medium.mass_M > 0.0) || !(medium.density >= 0.0) ||
        !(medium.gamma > 0.0))
        fail(ErrorCode::DomainError, "simulate_transport: malformed medium");

    const double sigma = medium_sigma(medium, omega);
    const double rate = medium.density * sigma;
    if (rate == 0.0) {
        // Transparent at this frequency: the exact vacuum crossing, no walk.
        TransportResult out{};
        out.mean_transit = medium.length_L / medium.cspeed;
        out.samples = photons;
        out.n_group = 1.0;
        return out;
    }

    const TauPair tau =
        model_tau(Lorentzian{medium.omega0, medium.gamma, 1.0}, omega);
    TransportResult out =
        transport_walk(medium.length_L, 1.0 / rate, tau.tau1, tau.tau2,
                       medium.cspeed, photons, seed, force_serial);
    // hbar = 1: omega is the photon energy.
    out.displacement = (out.n_group - 1.0) * omega * medium.length_L /
                       (medium.mass_M * medium.cspeed * medium.cspeed);
    return out;
}

} // namespace tempus
