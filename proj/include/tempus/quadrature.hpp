// Tanh-sinh (double-exponential) quadrature over a finite interval.  The
// change of variable x = c0 + c1*tanh((pi/2) sinh t) pushes endpoint
// singularities like (x-a)^(-1/2) into exponentially decaying tails, which is
// exactly what the WKB turning-point integrals need.
#pragma once

#include <cmath>
#include <cstddef>
#include <type_traits>
#include <utility>

#include "tempus/error.hpp"

namespace tempus {

struct QuadResult {
    double value = 0.0;
    double error = 0.0; // |I_level - I_{level-1}|, standard DE error proxy
    int levels = 0;
    std::size_t evals = 0;
};

namespace detail {

// Abscissa expressed as a signed offset from the nearer endpoint, plus weight.
// Offsets stay positive down to the underflow floor, so integrands singular at
// the endpoints are never evaluated exactly on them.
struct DeNode {
    double offset; // distance from endpoint (t > 0: from b, t < 0: from a)
    double weight; // half-interval times transformed weight
};

inline bool de_node(double t, double c1, DeNode& node) {
    const double pi_half = 1.57079632679489661923;
    const double v = pi_half * std::sinh(std::abs(t));
    const double e = std::exp(-2.0 * v);
    const double denom = 1.0 + e;
    node.offset = c1 * 2.0 * e / denom;                              // c1*(1 - |tanh v|)
    node.weight = c1 * pi_half * std::cosh(t) * 4.0 * e / (denom * denom); // c1*(pi/2)cosh t sech^2 v
    return node.offset > 0.0 && node.weight > 0.0;
}

} // namespace detail

// Integrate f over [a, b]; stops when successive level estimates agree to
// target_rel (relative, with a small absolute floor) or max_level is reached.
// The caller decides whether result.error is acceptable.
//
// f is called either as f(x) or, if it accepts a second argument, as
// f(x, xc) with xc the signed offset from the nearer endpoint: xc > 0 means
// x = a + xc, xc < 0 means x = b + xc (the midpoint arrives as xc = +c1).
// Integrands singular at an endpoint should use xc, which stays accurate in
// the deep tail where a + xc or b + xc rounds to the endpoint itself and an
// x-based evaluation would see the singular value exactly on it.
template <typename F>
QuadResult tanh_sinh(F&& f, double a, double b, double target_rel = 1e-10, int max_level = 10) {
    if (!(b > a)) fail(ErrorCode::DomainError, "tanh_sinh: requires b > a");
    const double c0 = 0.5 * (a + b);
    const double c1 = 0.5 * (b - a);
    const double t_max = 6.5; // sinh(6.5) ~ 332: offsets underflow well before this

    QuadResult res;
    auto call = [&](double x, double xc) -> double {
        if constexpr (std::is_invocable_v<F&, double, double>)
            return f(x, xc);
        else
            return f(x);
    };
    auto sample = [&](double t) -> double {
        detail::DeNode node{};
        if (!detail::de_node(t, c1, node)) return 0.0;
        double x, xc;
        if (t > 0.0) {
            x = b - node.offset;
            xc = -node.offset;
        } else if (t < 0.0) {
            x = a + node.offset;
            xc = node.offset;
        } else {
            x = c0;
            xc = c1;
        }
        ++res.evals;
        const double fx = call(x, xc);
        if (!std::isfinite(fx)) return 0.0; // singular tail already weighted to nothing
        return node.weight * fx;
    };

    double h = 1.0;
    double sum = sample(0.0);
    for (double t = h; t <= t_max; t += h) {
        sum += sample(t) + sample(-t);
    }
    double prev = h * sum;
    res.value = prev;

    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        // new points are the odd multiples of the refined step
        for (double t = h; t <= t_max; t += 2.0 * h) {
            sum += sample(t) + sample(-t);
        }
        const double cur = h * sum;
        res.error = std::abs(cur - prev);
        res.levels = level;
        res.value = cur;
        const double floor_abs = 1e-300;
        if (res.error <= target_rel * std::abs(cur) + floor_abs) break;
        prev = cur;
    }
    return res;
}

} // namespace tempus
