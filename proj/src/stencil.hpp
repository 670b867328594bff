#pragma once

// Flat-array one-sided difference kernels shared by the relaxation solvers.

#include <cstddef>

#include "lgpr/grid.hpp"

namespace lgpr::detail {

struct OneSidedPair {
    double minus = 0.0;
    double plus = 0.0;
    bool has_minus = false;
    bool has_plus = false;
};

// Second difference at p along a stride, or 0 when k is on the grid edge.
inline double dxx_at(const double* u, std::ptrdiff_t p, std::ptrdiff_t s, int k, int n, double inv_h2) {
    if (k < 1 || k > n - 2)
        return 0.0;
    return (u[p + s] - 2.0 * u[p] + u[p - s]) * inv_h2;
}

/// ENO2 one-sided differences along one axis at flat index p (position k of n
/// along the axis). A positive delta replaces the neighbour by an interface
/// point at that distance carrying the value bm (minus) or bp (plus).
inline OneSidedPair one_sided(const double* u, std::ptrdiff_t p, std::ptrdiff_t s, int k, int n, double h,
                              double inv_h2, double delta_m, double bm, double delta_p, double bp) {
    OneSidedPair r;
    const double d0 = dxx_at(u, p, s, k, n, inv_h2);
    if (delta_m > 0.0) {
        const double dm = k >= 1 ? dxx_at(u, p - s, s, k - 1, n, inv_h2) : 0.0;
        r.minus = (u[p] - bm) / delta_m + 0.5 * delta_m * minmod(dm, d0);
        r.has_minus = true;
    } else if (k >= 1) {
        const double dm = dxx_at(u, p - s, s, k - 1, n, inv_h2);
        r.minus = (u[p] - u[p - s]) / h + 0.5 * h * minmod(d0, dm);
        r.has_minus = true;
    }
    if (delta_p > 0.0) {
        const double dp = k <= n - 2 ? dxx_at(u, p + s, s, k + 1, n, inv_h2) : 0.0;
        r.plus = (bp - u[p]) / delta_p - 0.5 * delta_p * minmod(d0, dp);
        r.has_plus = true;
    } else if (k <= n - 2) {
        const double dp = dxx_at(u, p + s, s, k + 1, n, inv_h2);
        r.plus = (u[p + s] - u[p]) / h - 0.5 * h * minmod(d0, dp);
        r.has_plus = true;
    }
    return r;
}

// The four sweep orders: (+i,+j), (+i,-j), (-i,+j), (-i,-j).
struct SweepDir {
    int di;
    int dj;
};
inline constexpr SweepDir kSweeps[4] = {{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}};

template <typename Fn>
void sweep(const Grid2D& g, int order, Fn&& fn) {
    const SweepDir d = kSweeps[order & 3];
    const int i0 = d.di > 0 ? 0 : g.nx - 1;
    const int j0 = d.dj > 0 ? 0 : g.ny - 1;
    for (int jj = 0, j = j0; jj < g.ny; ++jj, j += d.dj)
        for (int ii = 0, i = i0; ii < g.nx; ++ii, i += d.di)
            fn(i, j);
}

} // namespace lgpr::detail
