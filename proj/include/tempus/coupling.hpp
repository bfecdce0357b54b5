// Running coupling constants and the causality bound they must respect:
// the formation time of the polarization cloud caps how fast a coupling may
// run, which turns into the condition alpha <= 4 pi / beta for beta >= 0 and,
// for beta < 0, into a finite consistency window ending at the scale
// Lambda_w where the cloud would outrun the light cone.
#pragma once

#include <string>
#include <vector>

namespace tempus {

// One-loop running coupling at momentum k for bare coupling alpha at cutoff
// Lambda: alpha_c = alpha / (1 - nu alpha ln(Lambda^2 / k^2)).
// Throws DomainError (alpha > 0, nu != 0, k > 0, lambda_cut > 0), AtPole if
// the denominator is within 1e-12 of zero.
double running_coupling(double alpha, double nu, double k, double lambda_cut);

// Inverse map: bare alpha from the running value at k (same guards).
double bare_coupling(double alpha_c, double nu, double k, double lambda_cut);

// Landau pole Lambda_p = k exp(1 / (2 nu alpha)) for nu alpha > 0; returns
// +infinity if the exponent exceeds double range.  Throws DomainError if
// nu alpha <= 0 (no pole on the real axis above k).
double landau_pole(double alpha, double nu, double k);

// Formation time of the polarization cloud at momentum (k0, k):
//   tau2 = (2 k0 / k^2) [ 1 - eta_c / (1 + eta_c ln(Lambda^2/k^2)) ],
// tau1 = 0.  with_log = false drops the logarithm (the simplified form
// tau2^(0) (1 - eta_c)).  Throws DomainError (k > 0, k0 > 0, lambda_cut > 0),
// DenominatorCollapse within 1e-12 of the bracket pole.
struct FormationTau {
    double tau1;
    double tau2;
};
FormationTau formation_tau(double k0, double ksq_scale, double eta_c,
                           double lambda_cut, bool with_log = true);

// Causality verdict for one coupling (alpha, beta), beta the usual
// beta-function slope so eta_c = beta alpha / (4 pi).
//   beta >= 0: the cloud forms inside the light cone iff alpha <= 4 pi/beta
//              (beta = 0 -> infinite bound, always passes).
//   beta < 0:  no finite-alpha violation; the verdict is "consistent below
//              Lambda_w" with ln_ratio = (|eta_c| + 1) / (2 |eta_c|) the
//              log of the window scale over the probe scale.
// Throws DomainError on alpha <= 0.
struct CausalityVerdict {
    std::string branch; // "beta>=0" | "beta<0"
    double bound;       // 4 pi / beta (infinite for beta = 0; negative
                        // and informational only on the beta < 0 branch)
    double ln_ratio;    // beta < 0 window exponent; 0 otherwise
    bool pass;
};
CausalityVerdict causality_verdict(double alpha, double beta);

// Census over a family of couplings.  A row fails only if it is labeled as
// the electromagnetic coupling and runs with beta < 0: that combination
// would need more fermion screening than causality allows.  summary is
// "conforms" when every row passes, "overcrowded" otherwise.
struct CouplingEntry {
    std::string label;
    double alpha;
    double beta;
};
struct CensusRow {
    CouplingEntry entry;
    CausalityVerdict verdict;
    bool flagged;
};
struct CensusResult {
    std::vector<CensusRow> rows;
    std::string summary;
};
CensusResult fermion_census(const std::vector<CouplingEntry>& entries);

// Weak-coupling window: for a beta < 0 coupling of mass scale mass_m and
// Compton radius compton, the consistency window ends at
// Lambda_w = mass_m e^{ln_ratio} and the matching radius is
// R_w = compton e^{-ln_ratio}.  Throws DomainError on beta >= 0 or
// nonpositive inputs; Lambda_w overflows to +infinity past double range.
struct WeakScale {
    double eta_c_abs;
    double ln_ratio;
    double lambda_w;
    double r_w;
};
WeakScale weak_scale(double alpha, double beta, double mass_m, double compton);

// Formation-time reading of the Froissart-bounded cross-section: with
// sigma_tot growing as ln^2 s, the per-collision formation time per unit s
// is bounded by tau2 <= 4 m ln s / s (decreasing for s > e).  sigma_const
// scales sigma_tot, not the bound, and is recorded for context only.
// Throws DomainError on s <= 1 or mass_target <= 0.
double froissart_tau_bound(double s, double mass_target, double sigma_const);

} // namespace tempus
