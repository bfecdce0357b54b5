#include <doctest.h>

#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "tempus/io.hpp"
#include "tempus/response.hpp"

using namespace tempus;
using cplx = std::complex<double>;
static const double kPi = 3.14159265358979323846;

TEST_SUITE("response_models") {

TEST_CASE("validation rejects unphysical parameters")
{
    CHECK_NOTHROW(validate(ResponseModel{Lorentzian{1.0, 0.1, 1.0}}));
    CHECK_THROWS_AS(validate(ResponseModel{Lorentzian{1.0, 0.0, 1.0}}), Error);
    CHECK_THROWS_AS(validate(ResponseModel{Lorentzian{1.0, 0.1, 0.0}}), Error);
    CHECK_THROWS_AS(validate(ResponseModel{FreePhoton{1.0, 0.0}}), Error);
    CHECK_THROWS_AS(validate(ResponseModel{FreePhoton{-1.0, 1.0}}), Error);
    CHECK_THROWS_AS(validate(ResponseModel{PauliJordan{0.0}}), Error);
    CHECK_THROWS_AS(validate(ResponseModel{NearField{-1.0}}), Error);
    // A negative delay is a pure advance -- admissible, not an error.
    CHECK_NOTHROW(validate(ResponseModel{PureDelay{-0.5}}));
    // Regulator mass must sit above the physical mass.
    CHECK_THROWS_AS(validate(ResponseModel{PauliVillars{2.0, 1.0, 2.0, 1.0}}),
                    Error);
    CHECK_NOTHROW(validate(ResponseModel{PauliVillars{1.0, 10.0, 2.0, 1.0}}));
}

TEST_CASE("lorentzian on resonance equals the full two-level value")
{
    // C is chosen so the resonant pole alone reproduces the two-pole
    // response at omega0: S(omega0) = 1 / (i (i Gamma omega0 - Gamma^2/4)).
    const double g = 0.1, w0 = 1.0;
    const ResponseModel m{Lorentzian{w0, g, 1.0}};
    const cplx expect = 1.0 / (cplx(0.0, 1.0) *
                               (cplx(0.0, g * w0) - g * g / 4.0));
    CHECK(std::abs(evaluate(m, w0) - expect) < 1e-14 * std::abs(expect));

    // And off resonance it is exactly C / (omega - omega0 + i Gamma/2).
    const cplx C = 1.0 / (2.0 * (cplx(0.0, w0) - g / 4.0));
    const double w = 1.3;
    const cplx direct = C / cplx(w - w0, g / 2.0);
    CHECK(std::abs(evaluate(m, w) - direct) < 1e-14 * std::abs(direct));
}

TEST_CASE("free photon response is the off-shell principal value")
{
    const ResponseModel m{FreePhoton{1.0, 1.0}};
    const double w = 2.0;
    CHECK(evaluate(m, w).real() ==
          doctest::Approx(4.0 * kPi / (w * w - 1.0)).epsilon(1e-14));
    CHECK(evaluate(m, w).imag() == 0.0);
    // On the light cone the response diverges; the evaluator refuses.
    CHECK_THROWS_AS(evaluate(m, 1.0), Error);
    CHECK_THROWS_AS(evaluate(m, -1.0 + 1e-15), Error);
}

TEST_CASE("commutator kernels at the worked point")
{
    // sin(omega r) at omega r = pi/2 is 1; the near-field kernel divides by
    // 2 pi omega^2 r^3 and flips sign.
    const double w = kPi / 2.0;
    CHECK(evaluate(ResponseModel{PauliJordan{1.0}}, w).real() ==
          doctest::Approx(1.0).epsilon(1e-14));
    const double nf = -std::sin(w) / (2.0 * kPi * w * w);
    CHECK(evaluate(ResponseModel{NearField{1.0}}, w).real() ==
          doctest::Approx(nf).epsilon(1e-14));
    CHECK(nf == doctest::Approx(-0.06450306886639899).epsilon(1e-12));
    // Both kernels are guarded at omega = 0 and at the sin zeros.
    CHECK_THROWS_AS(evaluate(ResponseModel{PauliJordan{1.0}}, 0.0), Error);
    CHECK_THROWS_AS(evaluate(ResponseModel{NearField{1.0}}, kPi), Error);
}

TEST_CASE("pure delay is a unit-modulus phase ramp")
{
    const ResponseModel m{PureDelay{2.5}};
    for (double w : {-3.0, 0.0, 0.7, 10.0}) {
        const cplx s = evaluate(m, w);
        CHECK(std::abs(std::abs(s) - 1.0) < 1e-15);
        CHECK(std::arg(s) == doctest::Approx(std::remainder(2.5 * w, 2.0 * kPi))
                                 .epsilon(1e-12));
    }
}

TEST_CASE("pauli-villars pair at the worked point")
{
    // The sweep variable plays the role of p0: at omega = 2 with |p| = 1,
    // p^2 = 3; masses 1 and 10 -> 1/2 - 1/(3-100).
    const ResponseModel m{PauliVillars{1.0, 10.0, 2.0, 1.0}};
    const double expect = 0.5 + 1.0 / 97.0;
    CHECK(evaluate(m, 2.0).real() == doctest::Approx(expect).epsilon(1e-14));
    CHECK(evaluate(m, 2.0).imag() == 0.0);
    // The regulator term vanishes as M grows: response approaches 1/(p2-m2).
    const ResponseModel heavy{PauliVillars{1.0, 1e6, 2.0, 1.0}};
    CHECK(evaluate(heavy, 2.0).real() == doctest::Approx(0.5).epsilon(1e-9));
    // On either mass shell the difference blows up and the evaluator refuses.
    CHECK_THROWS_AS(evaluate(m, std::sqrt(2.0)), Error);
}

TEST_CASE("pole sets are sorted and restricted to the window")
{
    CHECK(pole_set(ResponseModel{Lorentzian{1.0, 0.1, 1.0}}, -10.0, 10.0)
              .empty());
    CHECK(pole_set(ResponseModel{PureDelay{1.0}}, -10.0, 10.0).empty());

    const std::vector<double> fp =
        pole_set(ResponseModel{FreePhoton{2.0, 1.0}}, -3.0, 3.0);
    REQUIRE(fp.size() == 2);
    CHECK(fp[0] == doctest::Approx(-2.0));
    CHECK(fp[1] == doctest::Approx(2.0));
    CHECK(pole_set(ResponseModel{FreePhoton{2.0, 1.0}}, 0.0, 1.0).empty());

    const std::vector<double> pj =
        pole_set(ResponseModel{PauliJordan{1.0}}, 0.5, 7.0);
    REQUIRE(pj.size() == 2);
    CHECK(pj[0] == doctest::Approx(kPi));
    CHECK(pj[1] == doctest::Approx(2.0 * kPi));

    const std::vector<double> pv =
        pole_set(ResponseModel{PauliVillars{1.0, 10.0, 2.0, 1.0}}, 0.0, 20.0);
    // sqrt(1+1) and sqrt(1+100) are the positive energy poles.
    REQUIRE(pv.size() == 2);
    CHECK(pv[0] == doctest::Approx(std::sqrt(2.0)));
    CHECK(pv[1] == doctest::Approx(std::sqrt(101.0)));

    for (const auto& model :
         {ResponseModel{PauliJordan{0.7}}, ResponseModel{NearField{2.0}}}) {
        const std::vector<double> ps = pole_set(model, -9.0, 9.0);
        for (std::size_t i = 1; i < ps.size(); ++i)
            CHECK(ps[i - 1] < ps[i]);
    }
}

TEST_CASE("sampled response validation pins the failure line")
{
    std::istringstream ok("omega,re,im\n1,1,0\n2,1,0\n3,1,0\n4,1,0\n5,1,0\n");
    CHECK_NOTHROW(read_sampled_response(ok, "ok"));

    std::istringstream short_data("omega,re,im\n1,1,0\n2,1,0\n");
    CHECK_THROWS_AS(read_sampled_response(short_data, "short"), Error);

    std::istringstream bad_head("w,re,im\n1,1,0\n");
    CHECK_THROWS_AS(read_sampled_response(bad_head, "head"), Error);

    std::istringstream decreasing(
        "omega,re,im\n1,1,0\n2,1,0\n2,1,0\n4,1,0\n5,1,0\n");
    CHECK_THROWS_AS(read_sampled_response(decreasing, "monotone"), Error);

    std::istringstream garbage("omega,re,im\n1,1,0\n2,x,0\n3,1,0\n4,1,0\n5,1,0\n");
    try {
        read_sampled_response(garbage, "garbage");
        FAIL("expected InputFormat");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InputFormat);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

} // TEST_SUITE
