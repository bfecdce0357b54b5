// Error taxonomy shared by all tempus modules.  Every failure that crosses a
// public interface is a tempus::Error carrying a code; the CLI maps codes to
// exit classes (2 usage, 3 input format, 4 numerical domain).
#pragma once

#include <stdexcept>
#include <string>

namespace tempus {

enum class ErrorCode {
    PoleHit,               // frequency within tolerance of a pole of the response / temporal function
    InvalidModel,          // response-model field invariant violated
    PhaseJump,             // adjacent unwrapped phase step >= pi: grid too coarse
    ZeroResponse,          // |S| below representability guard, log-derivative undefined
    ResolventSingular,     // 1 - gamma*K denominator vanishes in a composition
    DomainError,           // argument outside the documented domain
    NoProgress,            // transport kernel cannot advance (ell + c*tau2 <= 0)
    DenominatorCollapse,   // group-index / running-coupling denominator at or past zero
    GridGap,               // grid spacing nonuniformity beyond tolerance
    Overflow,              // log-space result exceeds representable range
    NoBarrier,             // E >= max(U): no tunneling regime
    QuadratureFail,        // quadrature error estimate above the requested bound
    GridTooCoarse,         // spectral content too close to Nyquist
    NoPeak,                // transmitted field below measurable norm
    AtPole,                // running-coupling denominator at the Landau pole
    MissingParameter,      // a required parameter for the selected mode is absent
    NonPhysical,           // computed result violates a physical sanity floor
    InconsistentRelations, // scaling-relation system failed its exactness check
    InputFormat,           // malformed input file / config
    Usage,                 // malformed command line
};

const char* to_string(ErrorCode code);

// Exit class for the CLI: 2 = usage, 3 = input format, 4 = numerical domain.
int exit_class(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
    throw Error(code, msg);
}

} // namespace tempus
