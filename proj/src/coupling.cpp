#include "tempus/coupling.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>

#include "tempus/error.hpp"

namespace tempus {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// exp() that saturates to +inf instead of overflowing silently.
double exp_or_inf(double x)
{
    return x > 709.0 ? kInf : std::exp(x);
}

} // namespace

double running_coupling(double alpha, double nu, double k, double lambda_cut)
{
    if (!(alpha > 0.0) || nu == 0.0 || !(k > 0.0) || !(lambda_cut > 0.0))
        fail(ErrorCode::DomainError,
             "running_coupling: alpha, k, lambda_cut > 0 and nu != 0 required");
    const double den =
        1.0 - nu * alpha * std::log(lambda_cut * lambda_cut / (k * k));
    if (std::abs(den) < 1e-12)
        fail(ErrorCode::AtPole, "running_coupling: at the Landau pole");
    return alpha / den;
}

double bare_coupling(double alpha_c, double nu, double k, double lambda_cut)
{
    if (!(alpha_c > 0.0) || nu == 0.0 || !(k > 0.0) || !(lambda_cut > 0.0))
        fail(ErrorCode::DomainError,
             "bare_coupling: alpha_c, k, lambda_cut > 0 and nu != 0 required");
    const double den =
        1.0 + nu * alpha_c * std::log(lambda_cut * lambda_cut / (k * k));
    if (std::abs(den) < 1e-12)
        fail(ErrorCode::AtPole, "bare_coupling: at the Landau pole");
    return alpha_c / den;
}

double landau_pole(double alpha, double nu, double k)
{
    if (!(k > 0.0))
        fail(ErrorCode::DomainError, "landau_pole: k must be > 0");
    if (!(nu * alpha > 0.0))
        fail(ErrorCode::DomainError,
             "landau_pole: nu alpha must be > 0 for a pole above k");
    return k * exp_or_inf(1.0 / (2.0 * nu * alpha));
}

FormationTau formation_tau(double k0, double ksq_scale, double eta_c,
                           double lambda_cut, bool with_log)
{
    if (!(k0 > 0.0) || !(ksq_scale > 0.0) || !(lambda_cut > 0.0))
        fail(ErrorCode::DomainError,
             "formation_tau: k0, k^2 scale, lambda_cut must be > 0");
    const double tau0 = 2.0 * k0 / ksq_scale;
    if (!with_log)
        return {0.0, tau0 * (1.0 - eta_c)};
    const double den =
        1.0 + eta_c * std::log(lambda_cut * lambda_cut / ksq_scale);
    if (std::abs(den) < 1e-12)
        fail(ErrorCode::DenominatorCollapse,
             "formation_tau: screening bracket vanishes");
    return {0.0, tau0 * (1.0 - eta_c / den)};
}

CausalityVerdict causality_verdict(double alpha, double beta)
{
    if (!(alpha > 0.0))
        fail(ErrorCode::DomainError, "causality_verdict: alpha must be > 0");

    CausalityVerdict out;
    if (beta >= 0.0) {
        out.branch = "beta>=0";
        out.bound = beta == 0.0 ? kInf : 4.0 * kPi / beta;
        out.ln_ratio = 0.0;
        out.pass = alpha <= out.bound;
    } else {
        // Negative beta never violates the bound at finite alpha; the cloud
        // merely outgrows the light cone beyond the window scale Lambda_w.
        out.branch = "beta<0";
        out.bound = 4.0 * kPi / beta; // informational: a negative "bound"
        const double eta_abs = std::abs(beta) * alpha / (4.0 * kPi);
        out.ln_ratio = (eta_abs + 1.0) / (2.0 * eta_abs);
        out.pass = true;
    }
    return out;
}

CensusResult fermion_census(const std::vector<CouplingEntry>& entries)
{
    if (entries.empty())
        fail(ErrorCode::DomainError, "fermion_census: no couplings given");

    CensusResult out;
    bool any_flagged = false;
    for (const auto& e : entries) {
        CensusRow row;
        row.entry = e;
        row.verdict = causality_verdict(e.alpha, e.beta);

        std::string low = e.label;
        std::transform(low.begin(), low.end(), low.begin(), [](unsigned char c) {
            return static_cast<char>(std::tolower(c));
        });
        // A screening (beta < 0) electromagnetic coupling needs more charged
        // fermion species than the causality bound leaves room for.
        const bool em_like =
            low.rfind("em", 0) == 0 || low.rfind("electromagnetic", 0) == 0;
        row.flagged = em_like && e.beta < 0.0;
        if (row.flagged) {
            row.verdict.pass = false;
            any_flagged = true;
        }
        out.rows.push_back(std::move(row));
    }
    out.summary = any_flagged ? "overcrowded" : "conforms";
    return out;
}

WeakScale weak_scale(double alpha, double beta, double mass_m, double compton)
{
    if (!(alpha > 0.0) || !(mass_m > 0.0) || !(compton > 0.0))
        fail(ErrorCode::DomainError,
             "weak_scale: alpha, mass, compton must be > 0");
    if (!(beta < 0.0))
        fail(ErrorCode::DomainError,
             "weak_scale: window scale is defined for beta < 0 only");
    WeakScale out;
    out.eta_c_abs = std::abs(beta) * alpha / (4.0 * kPi);
    out.ln_ratio = (out.eta_c_abs + 1.0) / (2.0 * out.eta_c_abs);
    out.lambda_w = mass_m * exp_or_inf(out.ln_ratio);
    out.r_w = compton * std::exp(-out.ln_ratio);
    return out;
}

double froissart_tau_bound(double s, double mass_target, double sigma_const)
{
    (void)sigma_const; // scales sigma_tot itself, not the bound
    if (!(s > 1.0))
        fail(ErrorCode::DomainError, "froissart_tau_bound: s must be > 1");
    if (!(mass_target > 0.0))
        fail(ErrorCode::DomainError, "froissart_tau_bound: mass must be > 0");
    return 4.0 * mass_target * std::log(s) / s;
}

} // namespace tempus
