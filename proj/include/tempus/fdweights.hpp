// Finite-difference weights on arbitrary (possibly nonuniform) grids via the
// Fornberg recursion, plus a grid-wide first-derivative helper with centered
// interior stencils and one-sided edge stencils.
#pragma once

#include <vector>

#include "tempus/error.hpp"

namespace tempus {

// Weights w[j] such that f^(m)(z) ~ sum_j w[j] f(x[j]) for nodes x[0..nd-1].
// Exact for polynomials up to degree nd-1 (Fornberg, Math. Comp. 51, 1988).
inline std::vector<double> fornberg_weights(double z, const double* x, int nd, int m) {
    if (nd < m + 1) fail(ErrorCode::DomainError, "fornberg: stencil smaller than derivative order + 1");
    std::vector<std::vector<double>> C(nd, std::vector<double>(m + 1, 0.0));
    C[0][0] = 1.0;
    double c1 = 1.0;
    double c4 = x[0] - z;
    for (int i = 1; i < nd; ++i) {
        const int mn = i < m ? i : m;
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    C[i][k] = c1 * (k * C[i - 1][k - 1] - c5 * C[i - 1][k]) / c2;
                C[i][0] = -c1 * c5 * C[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                C[j][k] = (c4 * C[j][k] - k * C[j][k - 1]) / c3;
            C[j][0] = c4 * C[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(nd);
    for (int j = 0; j < nd; ++j) w[j] = C[j][m];
    return w;
}

// First derivative of samples f over grid x using stencils of order+1 points
// (order 2: 3-point, order 4: 5-point), shifted one-sided at the edges.
template <typename T>
std::vector<T> fd_first_derivative(const std::vector<double>& x, const std::vector<T>& f, int order) {
    if (order != 2 && order != 4) fail(ErrorCode::DomainError, "fd_first_derivative: order must be 2 or 4");
    const int n = static_cast<int>(x.size());
    const int np = order + 1;
    if (n < np) fail(ErrorCode::DomainError, "fd_first_derivative: grid shorter than stencil");
    std::vector<T> out(n);
    for (int i = 0; i < n; ++i) {
        int start = i - order / 2;
        if (start < 0) start = 0;
        if (start > n - np) start = n - np;
        const std::vector<double> w = fornberg_weights(x[i], x.data() + start, np, 1);
        T acc{};
        for (int j = 0; j < np; ++j) acc += w[j] * f[start + j];
        out[i] = acc;
    }
    return out;
}

} // namespace tempus
