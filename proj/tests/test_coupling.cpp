#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "tempus/coupling.hpp"
#include "tempus/error.hpp"

using namespace tempus;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
} // namespace

TEST_SUITE_BEGIN("running_coupling");

TEST_CASE("running and bare couplings are exact inverses")
{
    // ln(Lambda^2/k^2) = 3 with k = 1, Lambda = e^(3/2).
    const double alpha0 = 1.0 / 137.0;
    const double nu = 1.0;
    const double k = 1.0;
    const double cut = std::exp(1.5);

    const double ac = running_coupling(alpha0, nu, k, cut);
    // alpha/(1 - 3 alpha) = (1/137)/(134/137) = 1/134.
    CHECK(ac == doctest::Approx(1.0 / 134.0).epsilon(1e-14));

    const double back = bare_coupling(ac, nu, k, cut);
    CHECK(std::abs(back - alpha0) < 1e-15 * alpha0);

    // Round trip in the other direction too.
    const double a0b = bare_coupling(0.2, nu, k, cut);
    CHECK(running_coupling(a0b, nu, k, cut) ==
          doctest::Approx(0.2).epsilon(1e-14));

    // Guards.
    CHECK_THROWS_AS(running_coupling(-0.1, nu, k, cut), Error);
    CHECK_THROWS_AS(running_coupling(alpha0, 0.0, k, cut), Error);
    CHECK_THROWS_AS(running_coupling(alpha0, nu, 0.0, cut), Error);
    CHECK_THROWS_AS(running_coupling(alpha0, nu, k, -1.0), Error);
    CHECK_THROWS_AS(bare_coupling(0.0, nu, k, cut), Error);
}

TEST_CASE("running coupling diverges at the Landau pole")
{
    // nu alpha ln(Lambda^2/k^2) = 1 exactly: alpha = 1/2, Lambda/k = e.
    CHECK_THROWS_AS(running_coupling(0.5, 1.0, 1.0, std::exp(1.0)), Error);

    // landau_pole returns the cutoff at which the denominator vanishes.
    const double alpha = 0.1, nu = 1.0, k = 2.0;
    const double lp = landau_pole(alpha, nu, k);
    CHECK(lp == doctest::Approx(2.0 * std::exp(5.0)).epsilon(1e-14));
    CHECK_THROWS_AS(running_coupling(alpha, nu, k, lp), Error);

    // Slightly below the pole the coupling is huge but finite and positive.
    const double near = running_coupling(alpha, nu, k, lp * 0.999);
    CHECK(near > 10.0 * alpha);
    CHECK(std::isfinite(near));

    // Screening (nu alpha < 0) has no pole above k.
    CHECK_THROWS_AS(landau_pole(0.1, -1.0, 2.0), Error);
    CHECK_THROWS_AS(landau_pole(0.1, 1.0, 0.0), Error);

    // A feeble coupling pushes the pole past double range: +inf, not UB.
    CHECK(landau_pole(1e-4, 1.0, 1.0) == kInf);
}

TEST_CASE("formation time of the polarization cloud")
{
    // Simplified form: tau2 = (2 k0 / k^2)(1 - eta_c).
    const FormationTau simp = formation_tau(2.0, 3.0, 0.5, 10.0, false);
    CHECK(simp.tau1 == 0.0);
    CHECK(simp.tau2 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

    // With the log, at Lambda^2 = k^2 the bracket is 1 and the two forms
    // coincide exactly.
    const FormationTau at_cut =
        formation_tau(2.0, 3.0, 0.5, std::sqrt(3.0), true);
    CHECK(at_cut.tau2 == doctest::Approx(simp.tau2).epsilon(1e-15));

    // General point: k0 = 1, k^2 = 1, eta = 0.2, Lambda = e ->
    // tau2 = 2 (1 - 0.2/1.4) = 12/7.
    const FormationTau gen = formation_tau(1.0, 1.0, 0.2, std::exp(1.0), true);
    CHECK(gen.tau2 == doctest::Approx(12.0 / 7.0).epsilon(1e-14));

    // Screening eta < 0 lengthens the formation time.
    const FormationTau scr = formation_tau(1.0, 1.0, -0.2, std::exp(1.0), true);
    CHECK(scr.tau2 > 2.0);

    // Bracket pole: 1 + eta ln(Lambda^2/k^2) = 0 at eta = -1/2, ln = 2.
    CHECK_THROWS_AS(formation_tau(1.0, 1.0, -0.5, std::exp(1.0), true), Error);

    CHECK_THROWS_AS(formation_tau(0.0, 3.0, 0.5, 10.0, true), Error);
    CHECK_THROWS_AS(formation_tau(2.0, -3.0, 0.5, 10.0, true), Error);
    CHECK_THROWS_AS(formation_tau(2.0, 3.0, 0.5, 0.0, true), Error);
}

TEST_CASE("causality verdict on both beta branches")
{
    // beta = 7: bound 4 pi / 7.
    const CausalityVerdict v7 = causality_verdict(0.12, 7.0);
    CHECK(v7.branch == "beta>=0");
    CHECK(v7.bound == doctest::Approx(4.0 * kPi / 7.0).epsilon(1e-15));
    CHECK(v7.bound == doctest::Approx(1.7951958020513104).epsilon(1e-12));
    CHECK(v7.ln_ratio == 0.0);
    CHECK(v7.pass);

    // Same slope, excessive coupling: fails.
    const CausalityVerdict hot = causality_verdict(2.0, 7.0);
    CHECK_FALSE(hot.pass);

    // beta = 0: infinite bound, any alpha passes.
    const CausalityVerdict flat = causality_verdict(1000.0, 0.0);
    CHECK(flat.bound == kInf);
    CHECK(flat.pass);

    // beta < 0: always passes at finite alpha, with the window exponent
    // ln_ratio = (|eta_c| + 1) / (2 |eta_c|).
    const double alpha = 1.0 / 171.0, beta = -4.0;
    const CausalityVerdict neg = causality_verdict(alpha, beta);
    CHECK(neg.branch == "beta<0");
    CHECK(neg.pass);
    const double eta = std::abs(beta) * alpha / (4.0 * kPi); // = 1/(171 pi)
    CHECK(eta == doctest::Approx(1.0 / (171.0 * kPi)).epsilon(1e-15));
    // ln_ratio = 1/2 + 171 pi / 2 = 269.106...
    CHECK(neg.ln_ratio == doctest::Approx(0.5 + 171.0 * kPi / 2.0).epsilon(1e-14));
    CHECK(neg.ln_ratio > 268.0);
    CHECK(neg.ln_ratio < 270.0);
    CHECK(neg.bound < 0.0); // informational only on this branch

    CHECK_THROWS_AS(causality_verdict(0.0, 7.0), Error);
    CHECK_THROWS_AS(causality_verdict(-0.1, -4.0), Error);
}

TEST_CASE("fermion census flags only a screening electromagnetic coupling")
{
    // Three-family table: all conforming.
    const std::vector<CouplingEntry> three = {
        {"strong", 0.12, 7.0},
        {"em", 0.23 / 128.0, 10.0 / 3.0},
        {"weak", 1.0 / 171.0, -4.0},
    };
    const CensusResult ok = fermion_census(three);
    CHECK(ok.summary == "conforms");
    REQUIRE(ok.rows.size() == 3);
    for (const auto& r : ok.rows) {
        CHECK(r.verdict.pass);
        CHECK_FALSE(r.flagged);
    }
    CHECK(ok.rows[0].verdict.bound ==
          doctest::Approx(4.0 * kPi / 7.0).epsilon(1e-14));
    // The weak entry takes the beta < 0 branch but is not electromagnetic.
    CHECK(ok.rows[2].verdict.branch == "beta<0");

    // Extended table: the em coupling runs with beta < 0 and gets flagged.
    const std::vector<CouplingEntry> crowded = {
        {"strong", 0.12, 3.0},
        {"em", 0.23 / 128.0, -1.0},
        {"weak", 1.0 / 171.0, -33.0 / 5.0},
    };
    const CensusResult bad = fermion_census(crowded);
    CHECK(bad.summary == "overcrowded");
    REQUIRE(bad.rows.size() == 3);
    CHECK_FALSE(bad.rows[0].flagged);
    CHECK(bad.rows[1].flagged);
    CHECK_FALSE(bad.rows[1].verdict.pass);
    CHECK_FALSE(bad.rows[2].flagged); // beta < 0 but not the em label
    CHECK(bad.rows[2].verdict.pass);

    // Label matching is case-insensitive and accepts the long form.
    const CensusResult caps = fermion_census({{"EM", 0.01, -1.0}});
    CHECK(caps.rows[0].flagged);
    const CensusResult longform =
        fermion_census({{"Electromagnetic", 0.01, -1.0}});
    CHECK(longform.rows[0].flagged);
    // A positive-beta em coupling is fine.
    const CensusResult em_ok = fermion_census({{"em", 0.01, 2.0}});
    CHECK(em_ok.summary == "conforms");

    CHECK_THROWS_AS(fermion_census({}), Error);
}

TEST_CASE("weak-coupling window scale and matching radius")
{
    const WeakScale w = weak_scale(1.0 / 171.0, -4.0, 1.0, 1.0);
    CHECK(w.eta_c_abs == doctest::Approx(1.0 / (171.0 * kPi)).epsilon(1e-15));
    const double lr = 0.5 + 171.0 * kPi / 2.0;
    CHECK(w.ln_ratio == doctest::Approx(lr).epsilon(1e-14));
    CHECK(w.ln_ratio > 268.0);
    CHECK(w.ln_ratio < 270.0);
    CHECK(w.lambda_w == doctest::Approx(std::exp(lr)).epsilon(1e-12));
    CHECK(w.r_w == doctest::Approx(std::exp(-lr)).epsilon(1e-12));

    // Scales multiply through the mass and Compton inputs.
    const WeakScale w2 = weak_scale(1.0 / 171.0, -4.0, 80.4, 2.5e-16);
    CHECK(w2.lambda_w == doctest::Approx(80.4 * std::exp(lr)).epsilon(1e-12));
    CHECK(w2.r_w == doctest::Approx(2.5e-16 * std::exp(-lr)).epsilon(1e-12));

    // A feeble coupling pushes Lambda_w past double range: saturates to
    // +inf while the radius underflows cleanly to zero.
    const WeakScale tiny = weak_scale(1e-4, -4.0, 1.0, 1.0);
    CHECK(tiny.lambda_w == kInf);
    CHECK(tiny.r_w == 0.0);

    CHECK_THROWS_AS(weak_scale(1.0 / 171.0, 4.0, 1.0, 1.0), Error);
    CHECK_THROWS_AS(weak_scale(1.0 / 171.0, 0.0, 1.0, 1.0), Error);
    CHECK_THROWS_AS(weak_scale(0.0, -4.0, 1.0, 1.0), Error);
    CHECK_THROWS_AS(weak_scale(1.0 / 171.0, -4.0, 0.0, 1.0), Error);
    CHECK_THROWS_AS(weak_scale(1.0 / 171.0, -4.0, 1.0, 0.0), Error);
}

TEST_CASE("froissart-bounded formation time per unit s")
{
    // tau2 <= 4 m ln s / s; at s = e the bound is 4 m / e.
    const double at_e = froissart_tau_bound(std::exp(1.0), 1.0, 1.0);
    CHECK(at_e == doctest::Approx(4.0 / std::exp(1.0)).epsilon(1e-14));

    // Linear in the target mass.
    CHECK(froissart_tau_bound(std::exp(1.0), 3.0, 1.0) ==
          doctest::Approx(3.0 * at_e).epsilon(1e-14));

    // sigma_const scales the cross-section, not the bound.
    CHECK(froissart_tau_bound(10.0, 1.0, 1.0) ==
          froissart_tau_bound(10.0, 1.0, 42.0));

    // Decreasing beyond the maximum at s = e.
    CHECK(froissart_tau_bound(10.0, 1.0, 1.0) >
          froissart_tau_bound(100.0, 1.0, 1.0));
    CHECK(at_e > froissart_tau_bound(10.0, 1.0, 1.0));

    CHECK_THROWS_AS(froissart_tau_bound(1.0, 1.0, 1.0), Error);
    CHECK_THROWS_AS(froissart_tau_bound(0.5, 1.0, 1.0), Error);
    CHECK_THROWS_AS(froissart_tau_bound(10.0, 0.0, 1.0), Error);
}

TEST_SUITE_END();
