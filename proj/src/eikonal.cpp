#include "lgpr/eikonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "stencil.hpp"

namespace lgpr {

double sweep_update(double a, double b, double g, double h) {
    const double gh = g * h;
    if (std::abs(a - b) >= gh)
        return std::min(a, b) + gh;
    return 0.5 * (a + b + std::sqrt(2.0 * gh * gh - (a - b) * (a - b)));
}

EikonalResult solve_eikonal(const EikonalProblem& pb) {
    const Grid2D& g = pb.g.grid();
    if (!(pb.frozen.grid() == g) || !(pb.frozen_values.grid() == g) || !(pb.sign.grid() == g))
        throw Error("solve_eikonal: fields on different grids");
    constexpr double inf = std::numeric_limits<double>::infinity();

    std::vector<double> u(g.size(), inf);
    bool any = false;
    for (std::size_t p = 0; p < g.size(); ++p) {
        if (!pb.frozen[p])
            continue;
        if (!(pb.frozen_values[p] >= 0.0))
            throw GeometryError("solve_eikonal: negative seed value");
        u[p] = pb.frozen_values[p];
        any = true;
        if (!(pb.g[p] > 0.0))
            throw ConfigError("solve_eikonal: cost must be positive");
    }
    if (!any)
        throw GeometryError("solve_eikonal: no frozen seeds");

    EikonalResult out;
    for (int cycle = 0; cycle < pb.max_cycles; ++cycle) {
        double change = 0.0;
        for (int order = 0; order < 4; ++order) {
            detail::sweep(g, order, [&](int i, int j) {
                const std::size_t p = g.index(i, j);
                if (pb.frozen[p])
                    return;
                const double a = std::min(i > 0 ? u[p - 1] : inf, i < g.nx - 1 ? u[p + 1] : inf);
                const double b = std::min(j > 0 ? u[p - g.nx] : inf, j < g.ny - 1 ? u[p + g.nx] : inf);
                if (a == inf && b == inf)
                    return;
                const double cand = sweep_update(a, b, pb.g[p], g.h);
                if (cand < u[p]) {
                    change = std::max(change, u[p] - cand);
                    u[p] = cand;
                }
            });
        }
        out.cycles = cycle + 1;
        if (change <= pb.tol) {
            out.u = ScalarField(g);
            for (std::size_t p = 0; p < g.size(); ++p) {
                if (u[p] == inf)
                    throw GeometryError("solve_eikonal: node unreachable from the seeds");
                out.u[p] = pb.sign[p] * u[p];
            }
            return out;
        }
    }
    throw DivergenceError("solve_eikonal: no convergence after " + std::to_string(pb.max_cycles) + " cycles", {});
}

EikonalProblem seeded_problem(const CrossingSet& set, const ScalarField& g, const ScalarField& sign_source) {
    const Grid2D& grid = g.grid();
    EikonalProblem pb;
    pb.g = g;
    pb.frozen = NodeMask(grid, false);
    pb.frozen_values = ScalarField(grid, std::numeric_limits<double>::infinity());
    pb.sign = ScalarField(grid);
    for (std::size_t p = 0; p < grid.size(); ++p)
        pb.sign[p] = sgn(sign_source[p]);

    double c2 = 0.0;
    for (std::size_t p = 0; p < grid.size(); ++p)
        c2 = std::max(c2, g[p]);

    for (const auto& c : set.crossings) {
        const auto [pa, pb_] = edge_nodes(grid, c.edge);
        const double gn = c.grad.norm();
        for (std::size_t p : {pa, pb_}) {
            const int i = static_cast<int>(p % grid.nx);
            const int j = static_cast<int>(p / grid.nx);
            const Eigen::Vector2d x(grid.x(i), grid.y(j));
            double d;
            if (gn > 0.0)
                d = std::abs((x - c.position).dot(c.grad) / gn);
            else
                d = (x - c.position).norm();
            const double v = g[p] * std::min(d, grid.h);
            if (v < pb.frozen_values[p])
                pb.frozen_values[p] = v;
            pb.frozen[p] = true;
        }
    }
    for (std::size_t p = 0; p < grid.size(); ++p)
        if (pb.frozen[p] && pb.frozen_values[p] > grid.h * c2 * (1 + 1e-12))
            throw GeometryError("seeded_problem: seed value exceeds h c2");
    return pb;
}

} // namespace lgpr
