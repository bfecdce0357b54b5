// tempus: temporal functions of response models and the kinetics built on
// them.  Subcommands: temporal, dispersion, multiphoton, critical, tunnel,
// coupling.  Data goes to stdout (CSV for sweeps, JSON for records); errors
// are a single JSON object on stderr; exit codes: 0 success, 2 usage,
// 3 input format, 4 numerical/domain failure.
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tempus/coupling.hpp"
#include "tempus/critical.hpp"
#include "tempus/dispersion.hpp"
#include "tempus/io.hpp"
#include "tempus/multiphoton.hpp"
#include "tempus/response.hpp"
#include "tempus/temporal.hpp"
#include "tempus/tunneling.hpp"

using json = nlohmann::ordered_json;
using namespace tempus;

namespace {

// SI boundary constants; everything inside the library is natural units.
constexpr double kCSi = 2.99792458e10;    // cm/s
constexpr double kHbarSi = 1.054571817e-34; // J s

struct GlobalOpts {
    int precision = 17;
    std::string units = "natural";
    bool si() const { return units == "si"; }
    double c_default() const { return si() ? kCSi : 1.0; }
    double hbar() const { return si() ? kHbarSi : 1.0; }
};

// "lo:hi:n" sweep request.
struct Range {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t n = 0;
};

Range parse_range(const std::string& text)
{
    Range r;
    char* end = nullptr;
    const char* p = text.c_str();
    r.lo = std::strtod(p, &end);
    if (end == p || *end != ':')
        fail(ErrorCode::Usage, "range must be lo:hi:n, got '" + text + "'");
    p = end + 1;
    r.hi = std::strtod(p, &end);
    if (end == p || *end != ':')
        fail(ErrorCode::Usage, "range must be lo:hi:n, got '" + text + "'");
    p = end + 1;
    const long long n = std::strtoll(p, &end, 10);
    if (end == p || *end != '\0' || n < 2)
        fail(ErrorCode::Usage, "range must end in an integer count >= 2");
    r.n = static_cast<std::size_t>(n);
    if (!(r.hi > r.lo))
        fail(ErrorCode::Usage, "range requires hi > lo");
    return r;
}

std::vector<double> range_grid(const Range& r)
{
    std::vector<double> g(r.n);
    const double h = (r.hi - r.lo) / static_cast<double>(r.n - 1);
    for (std::size_t i = 0; i < r.n; ++i)
        g[i] = r.lo + h * static_cast<double>(i);
    return g;
}

// Resolve a cspeed option left at the "auto" sentinel to the unit system's
// default.
double resolve_c(double cspeed, const GlobalOpts& g)
{
    if (cspeed == 0.0)
        return g.c_default();
    if (!(cspeed > 0.0))
        fail(ErrorCode::Usage, "cspeed must be > 0");
    return cspeed;
}

void emit_json(const json& j)
{
    std::cout << j.dump(2) << '\n';
}

MediumSpec load_medium(const std::string& path, const GlobalOpts& g)
{
    std::ifstream is(path);
    if (!is)
        fail(ErrorCode::InputFormat, path + ": cannot open");
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        fail(ErrorCode::InputFormat, path + ": " + e.what());
    }
    MediumSpec m;
    try {
        m.density = j.at("density").get<double>();
        m.sigma0 = j.at("sigma0").get<double>();
        m.sigma_model = j.value("sigma_model", std::string("constant"));
        const json& res = j.at("resonance");
        m.omega0 = res.at("omega0").get<double>();
        m.gamma = res.at("gamma").get<double>();
        m.length_L = j.at("length_L").get<double>();
        m.mass_M = j.at("mass_M").get<double>();
        m.cspeed = j.value("cspeed", 0.0);
    } catch (const json::exception& e) {
        fail(ErrorCode::InputFormat, path + ": " + e.what());
    }
    m.cspeed = resolve_c(m.cspeed, g);
    return m;
}

TabulatedBarrier load_tabulated_barrier(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        fail(ErrorCode::InputFormat, path + ": cannot open");
    std::string head;
    if (!std::getline(is, head))
        fail(ErrorCode::InputFormat, path + ": empty file");
    std::string squeezed;
    for (char c : head)
        if (!std::isspace(static_cast<unsigned char>(c)))
            squeezed += c;
    if (squeezed != "x,u")
        fail(ErrorCode::InputFormat, path + ": header must be 'x,u'");
    TabulatedBarrier tab;
    std::string row;
    std::size_t line = 1;
    while (std::getline(is, row)) {
        ++line;
        if (row.find_first_not_of(" \t\r\n") == std::string::npos)
            continue;
        double x = 0.0;
        double u = 0.0;
        char* end = nullptr;
        x = std::strtod(row.c_str(), &end);
        if (end == row.c_str() || *end != ',')
            fail(ErrorCode::InputFormat,
                 path + ": line " + std::to_string(line) + ": expected 'x,u'");
        const char* p = end + 1;
        u = std::strtod(p, &end);
        if (end == p)
            fail(ErrorCode::InputFormat,
                 path + ": line " + std::to_string(line) + ": expected 'x,u'");
        tab.x.push_back(x);
        tab.u.push_back(u);
    }
    return tab;
}

// ---------------------------------------------------------------- temporal

struct TemporalOpts {
    std::string model;
    std::string input;
    std::string switching;
    bool renorm_pj = false;
    bool numeric = false;
    std::string range_text;
    int order = 4;
    int terms = 64;
    // model / switching parameters
    double omega0 = 1.0;
    double gamma = 0.1;
    double strength = 1.0;
    double kmag = 1.0;
    double cspeed = 0.0;
    double r = 1.0;
    double tdelay = 1.0;
    double mass_m = 1.0;
    double mass_big = 10.0;
    double p0 = 2.0;
    double pmag = 1.0;
    double gamma_s = 1.0;
};

ResponseModel make_model(const TemporalOpts& o, const GlobalOpts& g)
{
    if (o.model == "lorentzian")
        return Lorentzian{o.omega0, o.gamma, o.strength};
    if (o.model == "freephoton")
        return FreePhoton{o.kmag, resolve_c(o.cspeed, g)};
    if (o.model == "paulijordan")
        return PauliJordan{o.r};
    if (o.model == "nearfield")
        return NearField{o.r};
    if (o.model == "puredelay")
        return PureDelay{o.tdelay};
    if (o.model == "paulivillars")
        return PauliVillars{o.mass_m, o.mass_big, o.p0, o.pmag};
    fail(ErrorCode::Usage, "unknown model '" + o.model + "'");
}

int run_temporal(const TemporalOpts& o, const GlobalOpts& g)
{
    const int modes = static_cast<int>(!o.model.empty()) +
                      static_cast<int>(!o.input.empty()) +
                      static_cast<int>(!o.switching.empty()) +
                      static_cast<int>(o.renorm_pj);
    if (modes != 1)
        fail(ErrorCode::Usage,
             "temporal: pick exactly one of --model, --input, --switching, "
             "--renormalized-pj");

    if (!o.input.empty()) {
        const SampledResponse data = load_sampled_response(o.input);
        write_temporal_csv(std::cout, numeric_tau(data, o.order), g.precision);
        return 0;
    }

    if (o.range_text.empty())
        fail(ErrorCode::Usage, "temporal: this mode needs --omega-range");
    const Range range = parse_range(o.range_text);

    if (!o.model.empty()) {
        const ResponseModel model = make_model(o, g);
        write_temporal_csv(std::cout,
                           model_tau_grid(model, range.lo, range.hi, range.n),
                           g.precision);
        return 0;
    }

    if (!o.switching.empty()) {
        SwitchMode mode;
        if (o.switching == "on")
            mode = SwitchMode::TurnOn;
        else if (o.switching == "off")
            mode = SwitchMode::TurnOff;
        else if (o.switching == "symmetric")
            mode = SwitchMode::Symmetric;
        else
            fail(ErrorCode::Usage,
                 "switching mode must be on, off, or symmetric");
        TemporalFunction tf;
        tf.omega = range_grid(range);
        for (double w : tf.omega) {
            const TauPair tp = o.numeric
                                   ? switching_tau_numeric(o.gamma_s, w,
                                                           o.omega0, mode)
                                   : switching_tau(o.gamma_s, w, o.omega0, mode);
            tf.tau1.push_back(tp.tau1);
            tf.tau2.push_back(tp.tau2);
            tf.masked.push_back(0);
        }
        write_temporal_csv(std::cout, tf, g.precision);
        return 0;
    }

    // --renormalized-pj: both evaluation paths side by side; samples that hit
    // a pole of cot are skipped rather than reported as numbers.
    std::cout << "omega,tau2_closed,tau2_series\n";
    for (double w : range_grid(parse_range(o.range_text))) {
        try {
            const RenormalizedPj rp = renormalized_pj_tau(w, o.r, o.terms);
            std::cout << fmt_float(w, g.precision) << ','
                      << fmt_float(rp.closed_form, g.precision) << ','
                      << fmt_float(rp.series, g.precision) << '\n';
        } catch (const Error& e) {
            if (e.code() != ErrorCode::PoleHit)
                throw;
        }
    }
    return 0;
}

// -------------------------------------------------------------- dispersion

struct DispersionOpts {
    std::string config;
    std::string mode; // "", mc, indices, ledger, recoil, quasi, evanescent,
                      // forerunner, displacement
    std::string range_text;
    double omega = 1.0;
    std::uint64_t photons = 100000;
    std::uint64_t seed = 12345;
    bool serial = false;
    double n_g = 1.5;
    double n_phase = 1.5;
    double hbar_k = 1.0;
    double delta_u = 0.0;
    double k = 1.0;
    double density = 1.0;
    double sigma = 1.0;
    double tau = 1.0;
    double cspeed = 0.0;
    double r = 1.0;
    double lambda_w = 1.0;
    double v_sound = 1.0;
    double hbar_omega = 1.0;
    double mass = 1.0;
    double length = 1.0;
};

int run_dispersion(const DispersionOpts& o, const GlobalOpts& g)
{
    std::string mode = o.mode;
    if (mode.empty())
        mode = o.range_text.empty() ? "mc" : "indices";

    if (mode == "mc" || mode == "indices") {
        if (o.config.empty())
            fail(ErrorCode::Usage, "dispersion: --config is required here");
        const MediumSpec medium = load_medium(o.config, g);

        if (mode == "mc") {
            const double sigma_w = medium_sigma(medium, o.omega);
            const TransportResult mc =
                simulate_transport(medium, o.omega, o.photons, o.seed, o.serial);
            json j;
            j["omega"] = o.omega;
            j["sigma"] = sigma_w;
            json jmc;
            jmc["mean_transit"] = mc.mean_transit;
            jmc["stderr_transit"] = mc.stderr_transit;
            jmc["n_events_mean"] = mc.n_events_mean;
            jmc["samples"] = mc.samples;
            jmc["n_group"] = mc.n_group;
            jmc["momentum_fraction"] = mc.momentum_fraction;
            jmc["displacement"] = mc.displacement;
            j["mc"] = jmc;
            if (medium.density * sigma_w > 0.0) {
                const double ell = 1.0 / (medium.density * sigma_w);
                const TauPair tp = model_tau(
                    Lorentzian{medium.omega0, medium.gamma, 1.0}, o.omega);
                const TransitTime tt = transit_time(medium.length_L, ell,
                                                    tp.tau1, tp.tau2,
                                                    medium.cspeed);
                const GroupIndex gi =
                    group_index(ell, tp.tau1, tp.tau2, medium.cspeed);
                j["ell"] = ell;
                j["tau1"] = tp.tau1;
                j["tau2"] = tp.tau2;
                json jc;
                jc["mean_transit"] = tt.T;
                jc["n_events"] = tt.n_events;
                jc["n_group"] = gi.n_g;
                jc["n_group_thin"] = gi.n_g_thin;
                jc["n_group_transit"] = gi.n_g_transit;
                j["closed"] = jc;
            }
            emit_json(j);
            return 0;
        }

        // indices sweep
        const Range range = parse_range(o.range_text);
        const std::vector<double> grid = range_grid(range);
        std::vector<double> ngs(grid.size());
        std::cout << "omega,sigma,ell,tau1,tau2,n_group,n_group_thin,"
                     "n_group_transit,n_phase,phase_quad_err\n";
        std::vector<std::string> rows(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double w = grid[i];
            const double sg = medium_sigma(medium, w);
            if (!(medium.density * sg > 0.0))
                fail(ErrorCode::DomainError,
                     "indices: medium transparent at omega = " +
                         fmt_float(w, 6));
            const double ell = 1.0 / (medium.density * sg);
            const TauPair tp =
                model_tau(Lorentzian{medium.omega0, medium.gamma, 1.0}, w);
            const GroupIndex gi = group_index(ell, tp.tau1, tp.tau2,
                                              medium.cspeed);
            ngs[i] = gi.n_g;
            rows[i] = fmt_float(w, g.precision) + ',' +
                      fmt_float(sg, g.precision) + ',' +
                      fmt_float(ell, g.precision) + ',' +
                      fmt_float(tp.tau1, g.precision) + ',' +
                      fmt_float(tp.tau2, g.precision) + ',' +
                      fmt_float(gi.n_g, g.precision) + ',' +
                      fmt_float(gi.n_g_thin, g.precision) + ',' +
                      fmt_float(gi.n_g_transit, g.precision);
        }
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const PhaseIndex ph = phase_index(grid, ngs, grid[i]);
            std::cout << rows[i] << ',' << fmt_float(ph.n, g.precision) << ','
                      << fmt_float(ph.quad_error, g.precision) << '\n';
        }
        return 0;
    }

    if (mode == "ledger") {
        const MomentumLedger ml = momentum_ledger(o.n_g, o.hbar_k, o.n_phase);
        emit_json(json{{"n_group", o.n_g},
                       {"n_phase", o.n_phase},
                       {"hbar_k", o.hbar_k},
                       {"fraction_in_body", ml.fraction_in_body},
                       {"p_photon_transit", ml.p_photon_transit},
                       {"delta_hk", ml.delta_hk},
                       {"p_minkowski", ml.p_minkowski},
                       {"p_abraham", ml.p_abraham}});
        return 0;
    }
    if (mode == "recoil") {
        const AbsorptionRecoil ar =
            absorption_recoil(o.omega, o.n_phase, o.delta_u);
        emit_json(json{{"omega", o.omega},
                       {"n_phase", o.n_phase},
                       {"delta_u", o.delta_u},
                       {"omega_prime", ar.omega_prime},
                       {"p_absorbed", ar.p_absorbed},
                       {"p_body", ar.p_body},
                       {"p_total_check", ar.p_total_check}});
        return 0;
    }
    if (mode == "quasi") {
        const QuasiMomentum qm = quasi_momentum(o.k, o.density, o.sigma, o.tau,
                                                resolve_c(o.cspeed, g));
        emit_json(json{{"k", o.k},
                       {"k_prime", qm.k_prime},
                       {"k_prime_scaled", qm.k_prime_scaled}});
        return 0;
    }
    if (mode == "evanescent") {
        const EvanescentSplit ev =
            evanescent_split(o.omega, o.r, resolve_c(o.cspeed, g));
        emit_json(json{{"omega", o.omega},
                       {"r", o.r},
                       {"far_re", ev.far_zone.real()},
                       {"far_im", ev.far_zone.imag()},
                       {"near_re", ev.near_zone.real()},
                       {"near_im", ev.near_zone.imag()}});
        return 0;
    }
    if (mode == "forerunner") {
        const Forerunner fr =
            forerunner_threshold(o.lambda_w, o.v_sound, o.omega, g.hbar());
        emit_json(json{{"lambda", o.lambda_w},
                       {"v_sound", o.v_sound},
                       {"omega", o.omega},
                       {"j_min", fr.j_min},
                       {"intensity_min", fr.intensity_min}});
        return 0;
    }
    if (mode == "displacement") {
        const Displacement d = displacement(o.n_g, o.hbar_omega, o.mass,
                                            o.length, resolve_c(o.cspeed, g));
        emit_json(json{{"n_group", o.n_g},
                       {"delta_s", d.delta_s},
                       {"delta_s_over_l", d.delta_s_over_l}});
        return 0;
    }
    fail(ErrorCode::Usage, "dispersion: unknown mode '" + mode + "'");
}

// -------------------------------------------------------------- multiphoton

struct MultiphotonOpts {
    double x = -1.0;
    int n_max = 10;
    double flux = 0.0;
    double sigma = 1.0;
    double omega0 = 1.0;
    double gamma = 0.1;
    double omega = 1.0;
};

int run_multiphoton(const MultiphotonOpts& o, const GlobalOpts& g)
{
    if (o.x >= 0.0 && o.flux > 0.0)
        fail(ErrorCode::Usage, "multiphoton: pick --x or --flux, not both");

    if (o.x >= 0.0) {
        if (o.n_max < 0)
            fail(ErrorCode::Usage, "multiphoton: n_max must be >= 0");
        std::cout << "n,rate,ratio\n";
        for (int n = 0; n <= o.n_max; ++n) {
            std::cout << n << ',' << fmt_float(hhg_high_order(o.x, n), g.precision)
                      << ',';
            if (n > 0)
                std::cout << fmt_float(std::exp(hhg_high_order_log(o.x, n) -
                                                hhg_high_order_log(o.x, n - 1)),
                                       g.precision);
            std::cout << '\n';
        }
        std::cout << "n_star," << channel_threshold(o.x) << '\n';
        return 0;
    }

    if (!(o.flux > 0.0))
        fail(ErrorCode::Usage, "multiphoton: need --x X or --flux J");
    const HhgSpec spec{o.flux, o.sigma, o.omega0, o.gamma, o.omega, o.n_max};
    validate(spec);
    std::cout << "n,rate,ratio,eta\n";
    for (int n = 1; n <= spec.n_max; ++n) {
        std::cout << n << ',' << fmt_float(hhg_rate(spec, n), g.precision) << ',';
        if (n > 1)
            std::cout << fmt_float(
                std::exp(hhg_log_rate(spec, n) - hhg_log_rate(spec, n - 1)),
                g.precision);
        std::cout << ',' << fmt_float(saturation_parameter(spec, n), g.precision)
                  << '\n';
    }
    return 0;
}

// ----------------------------------------------------------------- critical

struct CriticalOpts {
    bool exponents = false;
    int dimension = 3;
    std::string theta_range;
    bool ordered = false;
    double r0 = 1.0;
    double a_coeff = 1.0;
    double b_coeff = 1.0;
    bool em_radius = false;
    double omega = 0.0;
    double lambda_w = 0.0;
    double r0_classical = 2.8179403262e-13; // cm, used with --units si
    double cspeed = 0.0;
    bool volume = false;
    double tau2 = 1.0;
    double sigma = 1.0;
    double density = 1.0;
    std::string latent;
    double theta = 0.01;
    double t_c = 300.0;
    double latent_molar = 0.0;
    double mean_c = 0.0;
};

json rational_json(const Rational& r)
{
    return json{{"str", r.str()}, {"value", r.value()}};
}

int run_critical(const CriticalOpts& o, const GlobalOpts& g)
{
    if (o.exponents) {
        const ExponentSet e = exponent_set(o.dimension);
        emit_json(json{{"dimension", e.dimension},
                       {"alpha", rational_json(e.alpha)},
                       {"beta", rational_json(e.beta)},
                       {"gamma", rational_json(e.gamma)},
                       {"delta", rational_json(e.delta)},
                       {"nu", rational_json(e.nu)},
                       {"eta", rational_json(e.eta)},
                       {"canonical_set", e.canonical_set}});
        return 0;
    }

    if (o.em_radius) {
        const double c = resolve_c(o.cspeed, g);
        double omega = o.omega;
        if (omega == 0.0) {
            if (o.lambda_w == 0.0)
                fail(ErrorCode::Usage, "em-radius: need --omega or --lambda");
            if (!(o.lambda_w > 0.0))
                fail(ErrorCode::Usage, "em-radius: lambda must be > 0");
            omega = 2.0 * 3.14159265358979323846 * c / o.lambda_w;
        }
        const EmCorrelationRadius rg = em_correlation_radius(omega, o.r0_classical, c);
        emit_json(json{{"omega", omega},
                       {"r0", o.r0_classical},
                       {"r_gamma", rg.r_gamma},
                       {"lambda_coeff", rg.lambda_coeff}});
        return 0;
    }

    if (o.volume) {
        const InteractionVolume iv = interaction_volume(o.tau2, o.sigma,
                                                        o.density,
                                                        resolve_c(o.cspeed, g));
        emit_json(json{{"v_c", iv.v_c},
                       {"x_packing", iv.x_packing},
                       {"saturated", iv.saturated}});
        return 0;
    }

    if (!o.latent.empty()) {
        TransitionKind kind;
        if (o.latent == "first")
            kind = TransitionKind::FirstOrder;
        else if (o.latent == "second")
            kind = TransitionKind::SecondOrder;
        else
            fail(ErrorCode::Usage, "latent kind must be first or second");
        const LatentHeat lh =
            latent_heat(kind, o.theta, o.t_c, o.latent_molar, o.mean_c);
        emit_json(json{{"kind", o.latent},
                       {"theta", o.theta},
                       {"w", lh.w},
                       {"base_w", lh.base_w}});
        return 0;
    }

    if (!o.theta_range.empty()) {
        const Range range = parse_range(o.theta_range);
        std::cout << "theta,r_c,a_coeff,b_coeff,eta_eq\n";
        for (double th : range_grid(range)) {
            const double signed_theta = o.ordered ? -th : th;
            const GlCoefficients gl =
                gl_coefficients(signed_theta, o.a_coeff, o.b_coeff, o.r0);
            std::cout << fmt_float(signed_theta, g.precision) << ','
                      << fmt_float(gl.r_c, g.precision) << ','
                      << fmt_float(gl.a_coeff, g.precision) << ','
                      << fmt_float(gl.b_coeff, g.precision) << ','
                      << fmt_float(gl.eta_eq, g.precision) << '\n';
        }
        return 0;
    }

    fail(ErrorCode::Usage,
         "critical: pick one of --exponents, --theta-range, --em-radius, "
         "--volume, --latent");
}

// ------------------------------------------------------------------- tunnel

struct TunnelOpts {
    std::string barrier;
    std::string table;
    double u0 = 2.0;
    double a = 1.0;
    double mass = 1.0;
    double energy = 1.0;
    std::string experiment;
    std::string fields;
    // experiment overrides
    double k0 = 1.0;
    double exp_u0 = 2.0;
    double exp_a = 3.0;
    double packet_width = 48.0;
    double x0 = -560.0;
    double t_snapshot = 900.0;
    double dx = 0.5;
    int n = 4096;
};

json hartman_row_json(const HartmanRow& r)
{
    return json{{"width_w", r.width_w},
                {"norm_transmitted", r.norm_transmitted},
                {"peak_shift", r.peak_shift},
                {"effective_delay", r.effective_delay},
                {"traversal", r.traversal}};
}

int run_tunnel(const TunnelOpts& o, const GlobalOpts& g)
{
    if (!o.experiment.empty()) {
        if (o.experiment != "hartman")
            fail(ErrorCode::Usage, "unknown experiment '" + o.experiment + "'");
        HartmanConfig cfg;
        cfg.mass_m = o.mass;
        cfg.u0 = o.exp_u0;
        cfg.k0 = o.k0;
        cfg.half_width_a = o.exp_a;
        cfg.packet_width = o.packet_width;
        cfg.x0 = o.x0;
        cfg.t_snapshot = o.t_snapshot;
        cfg.dx = o.dx;
        cfg.n = o.n;
        const HartmanResult res = hartman_experiment(cfg);
        if (!o.fields.empty()) {
            const SquareBarrier bar{cfg.u0, cfg.half_width_a};
            const PacketSpec packet{cfg.k0, cfg.packet_width, cfg.x0, cfg.n,
                                    cfg.dx};
            const PacketFields f =
                transmit_packet(bar, cfg.mass_m, packet, cfg.t_snapshot);
            std::ofstream os(o.fields);
            if (!os)
                fail(ErrorCode::InputFormat, o.fields + ": cannot open for write");
            os << "x,abs2_transmitted,abs2_free\n";
            for (std::size_t i = 0; i < f.x.size(); ++i)
                os << fmt_float(f.x[i], g.precision) << ','
                   << fmt_float(std::norm(f.transmitted[i]), g.precision) << ','
                   << fmt_float(std::norm(f.free_ref[i]), g.precision) << '\n';
        }
        emit_json(json{{"kappa", res.kappa},
                       {"v_group", res.v_group},
                       {"single", hartman_row_json(res.single)},
                       {"doubled", hartman_row_json(res.doubled)},
                       {"saturation_delta", res.saturation_delta},
                       {"packet_time_width", res.packet_time_width},
                       {"saturated", res.saturated}});
        return 0;
    }

    if (o.barrier.empty())
        fail(ErrorCode::Usage, "tunnel: need --barrier or --experiment");
    BarrierSpec spec;
    if (o.barrier == "square")
        spec = SquareBarrier{o.u0, o.a};
    else if (o.barrier == "parabolic")
        spec = ParabolicBarrier{o.u0, o.a};
    else if (o.barrier == "tabulated") {
        if (o.table.empty())
            fail(ErrorCode::Usage, "tunnel: tabulated barrier needs --table");
        spec = load_tabulated_barrier(o.table);
    } else {
        fail(ErrorCode::Usage, "unknown barrier '" + o.barrier + "'");
    }

    const WkbTau wt = wkb_tau(spec, o.mass, o.energy);
    emit_json(json{{"barrier", o.barrier},
                   {"mass", o.mass},
                   {"energy", o.energy},
                   {"tau1", wt.tau.tau1},
                   {"tau2", wt.tau.tau2},
                   {"x_left", wt.turning.x_left},
                   {"x_right", wt.turning.x_right},
                   {"quad_error", wt.quad_error}});
    return 0;
}

// ----------------------------------------------------------------- coupling

struct CouplingOpts {
    double alpha = 0.0;
    double beta = 0.0;
    bool beta_set = false;
    double nu = 0.0;
    double k = 0.0;
    double lambda_cut = 0.0;
    bool formation = false;
    double k0 = 1.0;
    double ksq = 1.0;
    double eta_c = 0.0;
    bool simplified = false;
    bool census = false;
    std::string preset;
    std::vector<std::string> couplings;
    bool weak = false;
    double mass = 1.0;
    double compton = 1.0;
    bool froissart = false;
    double s = 0.0;
    double sigma_const = 1.0;
};

json verdict_json(const CausalityVerdict& v)
{
    return json{{"branch", v.branch},
                {"bound", v.bound},
                {"ln_ratio", v.ln_ratio},
                {"pass", v.pass}};
}

std::vector<CouplingEntry> census_entries(const CouplingOpts& o)
{
    if (!o.preset.empty()) {
        if (o.preset == "three-family")
            return {{"strong", 0.12, 7.0},
                    {"em", 0.23 / 128.0, 10.0 / 3.0},
                    {"weak", 1.0 / 171.0, -4.0}};
        if (o.preset == "susy")
            return {{"strong", 0.12, 3.0},
                    {"em", 0.23 / 128.0, -1.0},
                    {"weak", 1.0 / 171.0, -33.0 / 5.0}};
        fail(ErrorCode::Usage,
             "census preset must be three-family or susy");
    }
    if (o.couplings.empty())
        fail(ErrorCode::Usage,
             "census: need --preset or --coupling label:alpha:beta");
    std::vector<CouplingEntry> out;
    for (const std::string& text : o.couplings) {
        const std::size_t c1 = text.find(':');
        const std::size_t c2 = c1 == std::string::npos
                                   ? std::string::npos
                                   : text.find(':', c1 + 1);
        if (c2 == std::string::npos)
            fail(ErrorCode::Usage,
                 "coupling entry must be label:alpha:beta, got '" + text + "'");
        CouplingEntry e;
        e.label = text.substr(0, c1);
        try {
            e.alpha = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
            e.beta = std::stod(text.substr(c2 + 1));
        } catch (const std::exception&) {
            fail(ErrorCode::Usage,
                 "coupling entry must be label:alpha:beta, got '" + text + "'");
        }
        out.push_back(std::move(e));
    }
    return out;
}

int run_coupling(const CouplingOpts& o, const GlobalOpts&)
{
    if (o.census) {
        const CensusResult res = fermion_census(census_entries(o));
        json rows = json::array();
        for (const auto& row : res.rows) {
            rows.push_back(json{{"label", row.entry.label},
                                {"alpha", row.entry.alpha},
                                {"beta", row.entry.beta},
                                {"flagged", row.flagged},
                                {"verdict", verdict_json(row.verdict)}});
        }
        emit_json(json{{"rows", rows}, {"summary", res.summary}});
        return 0;
    }

    if (o.formation) {
        const FormationTau ft = o.lambda_cut > 0.0
                                    ? formation_tau(o.k0, o.ksq, o.eta_c,
                                                    o.lambda_cut, !o.simplified)
                                    : formation_tau(o.k0, o.ksq, o.eta_c, o.ksq,
                                                    false);
        emit_json(json{{"tau1", ft.tau1}, {"tau2", ft.tau2}});
        return 0;
    }

    if (o.weak) {
        const WeakScale ws = weak_scale(o.alpha, o.beta, o.mass, o.compton);
        emit_json(json{{"eta_c_abs", ws.eta_c_abs},
                       {"ln_ratio", ws.ln_ratio},
                       {"lambda_w", ws.lambda_w},
                       {"r_w", ws.r_w}});
        return 0;
    }

    if (o.froissart) {
        if (!(o.s > 0.0))
            fail(ErrorCode::Usage, "froissart: need --s");
        emit_json(json{{"s", o.s},
                       {"bound", froissart_tau_bound(o.s, o.mass, o.sigma_const)}});
        return 0;
    }

    if (!(o.alpha > 0.0) || !o.beta_set)
        fail(ErrorCode::Usage, "coupling: need --alpha and --beta");
    const CausalityVerdict v = causality_verdict(o.alpha, o.beta);
    json j;
    j["alpha"] = o.alpha;
    j["beta"] = o.beta;
    j["verdict"] = verdict_json(v);
    if (o.nu != 0.0 && o.k > 0.0 && o.lambda_cut > 0.0) {
        const double ac = running_coupling(o.alpha, o.nu, o.k, o.lambda_cut);
        j["alpha_running"] = ac;
        j["alpha_bare_roundtrip"] = bare_coupling(ac, o.nu, o.k, o.lambda_cut);
        if (o.nu * o.alpha > 0.0)
            j["landau_pole"] = landau_pole(o.alpha, o.nu, o.k);
    }
    emit_json(j);
    return 0;
}

void emit_error(ErrorCode code, const std::string& msg)
{
    json j;
    j["error"] = to_string(code);
    j["message"] = msg;
    std::cerr << j.dump() << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"temporal functions of response models and the kinetics "
                 "built on them"};
    app.require_subcommand(1);

    GlobalOpts global;
    app.add_option("--precision", global.precision,
                   "significant digits for CSV output (6..17)")
        ->check(CLI::Range(6, 17));
    app.add_option("--units", global.units,
                   "unit system at the I/O boundary: natural | si")
        ->check(CLI::IsMember({"natural", "si"}));

    TemporalOpts to;
    CLI::App* temporal = app.add_subcommand(
        "temporal", "tau1/tau2 sweeps of analytic models and sampled data");
    temporal->add_option("--model", to.model,
                         "lorentzian | freephoton | paulijordan | nearfield | "
                         "puredelay | paulivillars");
    temporal->add_option("--input", to.input, "omega,re,im CSV to differentiate");
    temporal->add_option("--switching", to.switching,
                         "switching edge: on | off | symmetric");
    temporal->add_flag("--renormalized-pj", to.renorm_pj,
                       "renormalized commutator tau2, closed form vs series");
    temporal->add_flag("--numeric", to.numeric,
                       "use the Fourier path for --switching");
    temporal->add_option("--omega-range", to.range_text, "sweep as lo:hi:n");
    temporal->add_option("--order", to.order, "stencil order for --input: 2 | 4")
        ->check(CLI::IsMember({2, 4}));
    temporal->add_option("--terms", to.terms, "series floor for --renormalized-pj");
    temporal->add_option("--omega0", to.omega0, "resonance / carrier");
    temporal->add_option("--gamma", to.gamma, "linewidth");
    temporal->add_option("--strength", to.strength, "oscillator strength");
    temporal->add_option("--kmag", to.kmag, "photon wavenumber");
    temporal->add_option("--cspeed", to.cspeed, "speed of light (0 = per --units)");
    temporal->add_option("--r", to.r, "separation");
    temporal->add_option("--tdelay", to.tdelay, "pure delay");
    temporal->add_option("--mass-m", to.mass_m, "physical mass");
    temporal->add_option("--mass-big", to.mass_big, "regulator mass");
    temporal->add_option("--p0", to.p0, "energy component");
    temporal->add_option("--pmag", to.pmag, "momentum magnitude");
    temporal->add_option("--gamma-s", to.gamma_s, "switching rate");

    DispersionOpts do_;
    CLI::App* dispersion = app.add_subcommand(
        "dispersion", "saltatory transport, indices, momentum bookkeeping");
    dispersion->add_option("--config", do_.config, "medium JSON file");
    dispersion->add_option("--mode", do_.mode,
                           "mc | indices | ledger | recoil | quasi | "
                           "evanescent | forerunner | displacement");
    dispersion->add_option("--omega-range", do_.range_text, "sweep as lo:hi:n");
    dispersion->add_option("--omega", do_.omega, "probe frequency");
    dispersion->add_option("--photons", do_.photons, "Monte Carlo photon count");
    dispersion->add_option("--seed", do_.seed, "Monte Carlo seed");
    dispersion->add_flag("--serial", do_.serial,
                         "run the reference serial path");
    dispersion->add_option("--n-g", do_.n_g, "group index");
    dispersion->add_option("--n-phase", do_.n_phase, "phase index");
    dispersion->add_option("--hbar-k", do_.hbar_k, "photon momentum");
    dispersion->add_option("--delta-u", do_.delta_u, "retained excitation");
    dispersion->add_option("--k", do_.k, "vacuum wavenumber");
    dispersion->add_option("--density", do_.density, "scatterer density");
    dispersion->add_option("--sigma", do_.sigma, "total cross-section");
    dispersion->add_option("--tau", do_.tau, "delay for quasi-momentum");
    dispersion->add_option("--cspeed", do_.cspeed, "speed of light (0 = per --units)");
    dispersion->add_option("--r", do_.r, "separation");
    dispersion->add_option("--lambda", do_.lambda_w, "wavelength");
    dispersion->add_option("--v-sound", do_.v_sound, "sound speed");
    dispersion->add_option("--hbar-omega", do_.hbar_omega, "photon energy");
    dispersion->add_option("--mass", do_.mass, "body mass");
    dispersion->add_option("--length", do_.length, "body length");

    MultiphotonOpts mo;
    CLI::App* multiphoton = app.add_subcommand(
        "multiphoton", "order-n absorption rates and channel threshold");
    multiphoton->add_option("--x", mo.x, "squared flux-delay parameter");
    multiphoton->add_option("--n-max", mo.n_max, "highest order");
    multiphoton->add_option("--flux", mo.flux, "photon flux j");
    multiphoton->add_option("--sigma", mo.sigma, "cross-section");
    multiphoton->add_option("--omega0", mo.omega0, "resonance");
    multiphoton->add_option("--gamma", mo.gamma, "linewidth");
    multiphoton->add_option("--omega", mo.omega, "drive frequency");

    CriticalOpts co;
    CLI::App* critical = app.add_subcommand(
        "critical", "formation volumes, correlation radii, exponents");
    critical->add_flag("--exponents", co.exponents, "critical exponent table");
    critical->add_option("--dimension", co.dimension, "spatial dimension");
    critical->add_option("--theta-range", co.theta_range,
                         "reduced temperature sweep lo:hi:n");
    critical->add_flag("--ordered", co.ordered,
                       "sweep the ordered phase (theta < 0)");
    critical->add_option("--r0", co.r0, "correlation radius prefactor");
    critical->add_option("--a-coeff", co.a_coeff, "GL quadratic scale");
    critical->add_option("--b-coeff", co.b_coeff, "GL quartic scale");
    critical->add_flag("--em-radius", co.em_radius,
                       "electromagnetic correlation radius");
    critical->add_option("--omega", co.omega, "frequency for --em-radius");
    critical->add_option("--lambda", co.lambda_w, "wavelength for --em-radius");
    critical->add_option("--r0-electron", co.r0_classical,
                         "classical electron radius");
    critical->add_option("--cspeed", co.cspeed, "speed of light (0 = per --units)");
    critical->add_flag("--volume", co.volume, "interaction volume / packing");
    critical->add_option("--tau2", co.tau2, "formation time");
    critical->add_option("--sigma", co.sigma, "total cross-section");
    critical->add_option("--density", co.density, "scatterer density");
    critical->add_option("--latent", co.latent,
                         "latent heat per particle: first | second");
    critical->add_option("--theta", co.theta, "reduced temperature");
    critical->add_option("--tc", co.t_c, "critical temperature");
    critical->add_option("--lambda-molar", co.latent_molar, "molar latent heat");
    critical->add_option("--mean-c", co.mean_c, "molar heat capacity");

    TunnelOpts tn;
    CLI::App* tunnel = app.add_subcommand(
        "tunnel", "WKB formation times and the packet experiment");
    tunnel->add_option("--barrier", tn.barrier,
                       "square | parabolic | tabulated");
    tunnel->add_option("--table", tn.table, "x,u CSV for --barrier tabulated");
    tunnel->add_option("--u0", tn.u0, "barrier height");
    tunnel->add_option("--a", tn.a, "barrier half-width");
    tunnel->add_option("--mass", tn.mass, "particle mass");
    tunnel->add_option("--energy", tn.energy, "particle energy");
    tunnel->add_option("--experiment", tn.experiment, "hartman");
    tunnel->add_option("--fields", tn.fields,
                       "write |psi|^2 snapshot CSV here (experiment mode)");
    tunnel->add_option("--k0", tn.k0, "packet carrier wavenumber");
    tunnel->add_option("--exp-u0", tn.exp_u0, "experiment barrier height");
    tunnel->add_option("--exp-a", tn.exp_a, "experiment barrier half-width");
    tunnel->add_option("--packet-width", tn.packet_width, "packet width");
    tunnel->add_option("--x0", tn.x0, "packet start position");
    tunnel->add_option("--time", tn.t_snapshot, "snapshot time");
    tunnel->add_option("--dx", tn.dx, "grid spacing");
    tunnel->add_option("--n", tn.n, "grid points (power of two)");

    CouplingOpts cp;
    CLI::App* coupling = app.add_subcommand(
        "coupling", "running couplings and the causality bound");
    coupling->add_option("--alpha", cp.alpha, "coupling strength");
    CLI::Option* beta_opt =
        coupling->add_option("--beta", cp.beta, "beta-function slope");
    coupling->add_option("--nu", cp.nu, "log coefficient for running");
    coupling->add_option("--k", cp.k, "probe momentum");
    coupling->add_option("--lambda", cp.lambda_cut, "cutoff scale");
    coupling->add_flag("--formation", cp.formation, "polarization formation time");
    coupling->add_option("--k0", cp.k0, "energy component");
    coupling->add_option("--ksq", cp.ksq, "momentum-squared scale");
    coupling->add_option("--eta-c", cp.eta_c, "screening parameter");
    coupling->add_flag("--simplified", cp.simplified, "drop the log bracket");
    coupling->add_flag("--census", cp.census, "family causality census");
    coupling->add_option("--preset", cp.preset, "three-family | susy");
    coupling->add_option("--coupling", cp.couplings,
                         "census row as label:alpha:beta (repeatable)");
    coupling->add_flag("--weak-scale", cp.weak, "consistency window scales");
    coupling->add_option("--mass", cp.mass, "mass scale");
    coupling->add_option("--compton", cp.compton, "Compton radius");
    coupling->add_flag("--froissart", cp.froissart, "formation-time bound");
    coupling->add_option("--s", cp.s, "Mandelstam s (units of s0)");
    coupling->add_option("--sigma-const", cp.sigma_const,
                         "ln^2 s cross-section scale");

    try {
        app.parse(argc, argv);
        cp.beta_set = beta_opt->count() > 0;
        if (temporal->parsed())
            return run_temporal(to, global);
        if (dispersion->parsed())
            return run_dispersion(do_, global);
        if (multiphoton->parsed())
            return run_multiphoton(mo, global);
        if (critical->parsed())
            return run_critical(co, global);
        if (tunnel->parsed())
            return run_tunnel(tn, global);
        if (coupling->parsed())
            return run_coupling(cp, global);
        fail(ErrorCode::Usage, "no subcommand given");
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit_error(ErrorCode::Usage, e.what());
        return 2;
    } catch (const Error& e) {
        emit_error(e.code(), e.what());
        return exit_class(e.code());
    } catch (const std::exception& e) {
        emit_error(ErrorCode::DomainError,
                   std::string("internal: ") + e.what());
        return 4;
    }
}
