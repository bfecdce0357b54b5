#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "tempus/dispersion.hpp"
#include "tempus/temporal.hpp"

using namespace tempus;
static const double kPi = 3.14159265358979323846;

TEST_SUITE("dispersion_kinetics") {

TEST_CASE("closed transit times at the worked rows")
{
    // No formation drift: T = L/c + N tau1 with N = L/ell.
    const TransitTime plain = transit_time(100.0, 10.0, 0.5, 0.0, 1.0);
    CHECK(plain.n_events == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(plain.T == doctest::Approx(105.0).epsilon(1e-15));

    // Backward drift shortens both the event count and the clock.
    const TransitTime back = transit_time(100.0, 10.0, 0.5, -2.0, 1.0);
    CHECK(back.n_events == doctest::Approx(100.0 / 12.0).epsilon(1e-15));
    CHECK(back.T == doctest::Approx(87.5).epsilon(1e-14));

    // Forward drift adds free path per event instead.
    const TransitTime fwd = transit_time(100.0, 10.0, 0.5, 2.0, 1.0);
    CHECK(fwd.n_events == doctest::Approx(100.0 / 12.0).epsilon(1e-15));
    CHECK(fwd.T == doctest::Approx(100.0 + (100.0 / 12.0) * 0.5).epsilon(1e-14));

    // A sufficiently negative tau1 would send the packet back in time.
    CHECK_THROWS_AS(transit_time(100.0, 10.0, -15.0, 0.0, 1.0), Error);
}

TEST_CASE("group index forms agree with each other")
{
    const GroupIndex thin = group_index(10.0, 0.5, 0.0, 1.0);
    CHECK(thin.n_g == doctest::Approx(1.05).epsilon(1e-15));
    CHECK(thin.n_g_thin == doctest::Approx(1.05).epsilon(1e-15));

    const GroupIndex fast = group_index(1.0, 0.2, -0.5, 1.0);
    CHECK(fast.n_g == doctest::Approx(1.4).epsilon(1e-14));

    // For tau2 >= 0 the transit-derived index is the same number.
    const GroupIndex slow = group_index(10.0, 1.0, 0.3, 1.0);
    const TransitTime tt = transit_time(100.0, 10.0, 1.0, 0.3, 1.0);
    CHECK(slow.n_g_transit == doctest::Approx(tt.T / 100.0).epsilon(1e-13));
    CHECK(slow.n_g == doctest::Approx(slow.n_g_transit).epsilon(1e-13));

    // ell + c tau2 <= 0 collapses the denominator.
    CHECK_THROWS_AS(group_index(1.0, 0.5, -1.0, 1.0), Error);
    CHECK_THROWS_AS(group_index(1.0, 0.5, -2.0, 1.0), Error);
}

TEST_CASE("transport walk is deterministic and thread-invariant")
{
    const TransportResult a = transport_walk(50.0, 5.0, 0.5, 0.2, 1.0, 20000, 777);
    const TransportResult b = transport_walk(50.0, 5.0, 0.5, 0.2, 1.0, 20000, 777);
    CHECK(a.mean_transit == b.mean_transit); // bit identical
    CHECK(a.stderr_transit == b.stderr_transit);
    CHECK(a.n_events_mean == b.n_events_mean);

    // The serial reference path must agree bit for bit with the parallel one.
    const TransportResult s =
        transport_walk(50.0, 5.0, 0.5, 0.2, 1.0, 20000, 777, true);
    CHECK(a.mean_transit == s.mean_transit);
    CHECK(a.stderr_transit == s.stderr_transit);
    CHECK(a.n_events_mean == s.n_events_mean);

    // A different seed moves the sample mean.
    const TransportResult c = transport_walk(50.0, 5.0, 0.5, 0.2, 1.0, 20000, 778);
    CHECK(a.mean_transit != c.mean_transit);
}

TEST_CASE("transport walk matches the closed forms statistically")
{
    const double L = 50.0, ell = 5.0, tau1 = 0.5, tau2 = 0.2, c = 1.0;
    const TransportResult mc = transport_walk(L, ell, tau1, tau2, c, 40000, 424242);
    const TransitTime tt = transit_time(L, ell, tau1, tau2, c);
    CHECK(mc.stderr_transit > 0.0);
    CHECK(mc.samples == 40000);
    CHECK(std::abs(mc.mean_transit - tt.T) < 4.0 * mc.stderr_transit);
    CHECK(std::abs(mc.n_events_mean - tt.n_events) < 0.2);
    CHECK(mc.n_group == doctest::Approx(c * mc.mean_transit / L).epsilon(1e-13));

    // Backward drift row.
    const TransportResult mcb =
        transport_walk(L, ell, 0.5, -0.1, c, 40000, 515151);
    const TransitTime ttb = transit_time(L, ell, 0.5, -0.1, c);
    CHECK(std::abs(mcb.mean_transit - ttb.T) < 4.0 * mcb.stderr_transit);

    // Vacuum: no scatterers at all reduces to ballistic flight.
    const TransportResult vac = transport_walk(L, 1e30, 0.5, 0.2, c, 100, 1);
    CHECK(vac.mean_transit == doctest::Approx(L / c).epsilon(1e-12));
    CHECK(vac.n_events_mean == 0.0);
}

TEST_CASE("phase index integrates the group index")
{
    // Constant n_g: the integral telescopes and n_phase = n_g everywhere.
    std::vector<double> w, ng;
    for (int i = 0; i <= 100; ++i) {
        w.push_back(1.0 + 0.01 * i);
        ng.push_back(1.4);
    }
    const PhaseIndex mid = phase_index(w, ng, 1.5);
    CHECK(mid.n == doctest::Approx(1.4).epsilon(1e-12));
    const PhaseIndex off = phase_index(w, ng, 1.505); // between nodes
    CHECK(off.n == doctest::Approx(1.4).epsilon(1e-12));

    // Linear n_g: omega n = integral of n_g + const; trapezoid is exact, so
    // compare against the analytic antiderivative.
    std::vector<double> ng2;
    for (double wi : w)
        ng2.push_back(1.0 + 0.25 * (wi - 1.0));
    const double weval = 1.8;
    const double wn = 1.0 * 1.0 +
                      (weval - 1.0) + 0.125 * (weval - 1.0) * (weval - 1.0);
    const PhaseIndex lin = phase_index(w, ng2, weval);
    CHECK(lin.n == doctest::Approx(wn / weval).epsilon(1e-10));
    CHECK(lin.quad_error >= 0.0);

    // Wildly nonuniform grids are refused rather than silently integrated.
    std::vector<double> bad_w = {1.0, 1.001, 1.002, 1.5, 2.0};
    std::vector<double> bad_n = {1.0, 1.0, 1.0, 1.0, 1.0};
    CHECK_THROWS_AS(phase_index(bad_w, bad_n, 1.9), Error);
}

TEST_CASE("delay recovery inverts the index chain")
{
    // Build n(omega) for a constant tau1: omega n = omega + c N sigma tau1
    // omega, so n is constant and tau1 = (n - 1)/(c N sigma).
    const double cN_sigma = 0.35, tau1 = 0.8;
    std::vector<double> w, n;
    for (int i = 0; i <= 200; ++i) {
        w.push_back(0.5 + 0.005 * i);
        n.push_back(1.0 + cN_sigma * tau1);
    }
    const TemporalFunction tf = delay_from_index(w, n, 1.0, 0.35, 1.0, 4);
    for (std::size_t i = 0; i < tf.omega.size(); i += 20) {
        CHECK(tf.tau1[i] == doctest::Approx(tau1).epsilon(1e-10));
        CHECK(tf.tau2[i] == 0.0);
        CHECK(tf.masked[i] == 0);
    }
}

TEST_CASE("momentum ledger closes at the worked numbers")
{
    // n_g = 2, hbar k = 1, n = 1.5: half the momentum rides in the body.
    const MomentumLedger ml = momentum_ledger(2.0, 1.0, 1.5);
    CHECK(ml.fraction_in_body == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ml.p_photon_transit == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ml.delta_hk == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ml.p_minkowski == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(ml.p_abraham == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    // The geometric-mean identity ties the two conventions together.
    CHECK(std::sqrt(ml.p_minkowski * ml.p_abraham) ==
          doctest::Approx(ml.delta_hk).epsilon(1e-14));
    CHECK_THROWS_AS(momentum_ledger(0.0, 1.0, 1.5), Error);
}

TEST_CASE("displacement at the worked magnitude")
{
    const Displacement d = displacement(1.5, 1e-6, 1.0, 1.0, 1.0);
    CHECK(d.delta_s_over_l == doctest::Approx(5e-7).epsilon(1e-12));
    CHECK(d.delta_s == doctest::Approx(5e-7).epsilon(1e-12));
    // Heavier body, smaller step.
    const Displacement heavy = displacement(1.5, 1e-6, 10.0, 1.0, 1.0);
    CHECK(heavy.delta_s == doctest::Approx(5e-8).epsilon(1e-12));
    CHECK_THROWS_AS(displacement(1.5, 1e-6, 0.0, 1.0, 1.0), Error);
}

TEST_CASE("absorption recoil keeps total momentum")
{
    const AbsorptionRecoil ar = absorption_recoil(1.0, 1.5, 0.1);
    CHECK(ar.omega_prime == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(ar.p_absorbed == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(ar.p_body == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(ar.p_total_check == doctest::Approx(1.0).epsilon(1e-15));
    // All of the photon energy kept internally leaves nothing to re-emit.
    CHECK_THROWS_AS(absorption_recoil(1.0, 1.5, 1.0), Error);
    CHECK_THROWS_AS(absorption_recoil(1.0, 1.5, -0.1), Error);
}

TEST_CASE("quasi-momentum forms coincide on the consistent delay")
{
    const QuasiMomentum qm = quasi_momentum(2.0, 0.3, 0.5, 1.0, 1.0);
    CHECK(qm.k_prime == doctest::Approx(2.0 + 0.15).epsilon(1e-15));
    // With tau = 1/(c k) the scaled form reproduces k + N sigma exactly.
    const QuasiMomentum same = quasi_momentum(2.0, 0.3, 0.5, 0.5, 1.0);
    CHECK(same.k_prime_scaled == doctest::Approx(same.k_prime).epsilon(1e-14));
}

TEST_CASE("evanescent split at the worked point")
{
    const EvanescentSplit ev = evanescent_split(1.0, 1.0, 1.0);
    CHECK(ev.far_zone.real() == doctest::Approx(std::cos(1.0) / (4.0 * kPi))
                                    .epsilon(1e-13));
    CHECK(ev.far_zone.imag() == doctest::Approx(std::sin(1.0) / (4.0 * kPi))
                                    .epsilon(1e-13));
    CHECK(ev.far_zone.real() == doctest::Approx(0.042996).epsilon(1e-4));
    CHECK(ev.far_zone.imag() == doctest::Approx(0.066962).epsilon(1e-4));
    CHECK(ev.near_zone.real() == doctest::Approx(std::exp(-1.0) / (4.0 * kPi))
                                     .epsilon(1e-13));
    CHECK(ev.near_zone.imag() == 0.0);
    // |far| is r-independent of the decay only through 1/r; |near| decays.
    const EvanescentSplit far2 = evanescent_split(1.0, 2.0, 1.0);
    CHECK(std::abs(far2.far_zone) ==
          doctest::Approx(1.0 / (8.0 * kPi)).epsilon(1e-13));
}

TEST_CASE("forerunner threshold reproduces the flux scale")
{
    // v = 3e5 cm/s, lambda = 5e-5 cm: j = v / lambda^3 = 2.4e18 1/(cm^2 s).
    const double hbar_si = 1.054571817e-34;
    const double omega = 2.0 * kPi * 2.99792458e10 / 5e-5;
    const Forerunner fr = forerunner_threshold(5e-5, 3e5, omega, hbar_si);
    CHECK(fr.j_min == doctest::Approx(2.4e18).epsilon(1e-12));
    CHECK(fr.intensity_min ==
          doctest::Approx(hbar_si * omega * 2.4e18).epsilon(1e-12));
    // About one W/cm^2 for these inputs.
    CHECK(fr.intensity_min == doctest::Approx(0.9535).epsilon(2e-3));
    CHECK_THROWS_AS(forerunner_threshold(0.0, 3e5, omega, hbar_si), Error);
}

TEST_CASE("medium cross-section profiles")
{
    MediumSpec m;
    m.density = 0.01;
    m.sigma0 = 2.0;
    m.sigma_model = "constant";
    m.omega0 = 1.0;
    m.gamma = 0.1;
    m.length_L = 100.0;
    m.mass_M = 1e6;
    m.cspeed = 1.0;
    CHECK(medium_sigma(m, 0.3) == doctest::Approx(2.0));
    m.sigma_model = "lorentzian";
    CHECK(medium_sigma(m, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(medium_sigma(m, 1.05) ==
          doctest::Approx(2.0 * 0.0025 / 0.005).epsilon(1e-13));
    m.sigma_model = "unknown";
    CHECK_THROWS_AS(medium_sigma(m, 1.0), Error);
}

TEST_CASE("medium transport is wired to the resonance taus")
{
    MediumSpec m;
    m.density = 0.01;
    m.sigma0 = 10.0;
    m.sigma_model = "constant";
    m.omega0 = 1.0;
    m.gamma = 0.1;
    m.length_L = 100.0;
    m.mass_M = 1e6;
    m.cspeed = 1.0;

    // Half a unit above resonance the taus are small against ell, keeping
    // the event-count boundary bias well inside the statistical band.
    const double w = 1.5;
    const TauPair tp = model_tau(ResponseModel{Lorentzian{1.0, 0.1, 1.0}}, w);
    const double ell = 1.0 / (m.density * m.sigma0);
    const TransitTime tt = transit_time(m.length_L, ell, tp.tau1, tp.tau2,
                                        m.cspeed);
    const TransportResult mc = simulate_transport(m, w, 20000, 99);
    CHECK(std::abs(mc.mean_transit - tt.T) < 5.0 * mc.stderr_transit);
    CHECK(mc.displacement ==
          doctest::Approx((mc.n_group - 1.0) * w * m.length_L / (m.mass_M))
              .epsilon(1e-12));

    // Zero cross-section short-circuits to exact vacuum flight.
    m.sigma0 = 0.0;
    const TransportResult vac = simulate_transport(m, w, 1000, 99);
    CHECK(vac.mean_transit == doctest::Approx(100.0).epsilon(1e-15));
    CHECK(vac.stderr_transit == 0.0);
    CHECK(vac.n_events_mean == 0.0);
}

} // TEST_SUITE
