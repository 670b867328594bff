#include "lgpr/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "anderson.hpp"
#include "stencil.hpp"

namespace lgpr {

namespace {

double pos(double v) { return std::max(v, 0.0); }
double neg(double v) { return -std::min(v, 0.0); }

struct Kernel {
    const Grid2D& g;
    const SubcellInfo& sc;
    const std::vector<InterfaceCrossing>& cr;
    double inv_h2;

    double boundary(std::size_t p, int slot) const {
        const int id = sc.crossing_index(p, slot);
        return id >= 0 ? cr[static_cast<std::size_t>(id)].chi : 0.0;
    }

    // L_T at (i,j) from the current values of f.
    double apply(const double* f, int i, int j, double ex, double ey) const {
        const std::size_t p = g.index(i, j);
        const auto pp = static_cast<std::ptrdiff_t>(p);
        const auto& o = sc.offsets_at(p);
        const auto x = detail::one_sided(f, pp, 1, i, g.nx, g.h, inv_h2, o[0], boundary(p, 0), o[1], boundary(p, 1));
        const auto y =
            detail::one_sided(f, pp, g.nx, j, g.ny, g.h, inv_h2, o[2], boundary(p, 2), o[3], boundary(p, 3));
        return -(pos(ex) * x.minus - neg(ex) * x.plus + pos(ey) * y.minus - neg(ey) * y.plus);
    }
};

} // namespace

Eigen::Vector2d upwind_direction(const ScalarField& phi, const SubcellInfo& sc, int i, int j, double eps) {
    const OneSidedDifferences d = subcell_modified_differences(phi, sc, i, j);
    const double s = sgn(phi(i, j));
    const double dx = maxabs(std::max(s * d.xm, 0.0), std::min(0.0, s * d.xp));
    const double dy = maxabs(std::max(s * d.ym, 0.0), std::min(0.0, s * d.yp));
    const double n = std::sqrt(dx * dx + dy * dy + eps * eps);
    return {dx / n, dy / n};
}

DirectionField upwind_directions(const ScalarField& phi, const SubcellInfo& sc, double eps) {
    const Grid2D& g = phi.grid();
    DirectionField eta{ScalarField(g), ScalarField(g)};
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const Eigen::Vector2d e = upwind_direction(phi, sc, i, j, eps);
            eta.x(i, j) = e.x();
            eta.y(i, j) = e.y();
        }
    return eta;
}

double boundary_modified_eno_f(const ScalarField& f, const CrossingSet& set, int i, int j, Axis a, Side side) {
    const Grid2D& g = f.grid();
    if (!g.contains(i, j))
        throw StencilError("boundary_modified_eno_f: node outside grid");
    const std::size_t p = g.index(i, j);
    const int slot = SubcellInfo::slot(a, side);
    const int id = set.subcell.crossing_index(p, slot);
    const double delta = set.subcell.raw_offset(p, slot);
    if (id < 0 || !(delta > 0.0))
        throw Error("boundary_modified_eno_f: no crossing on the requested side");
    const double fb = set.crossings[static_cast<std::size_t>(id)].chi;
    const int k = a == Axis::X ? i : j;
    const int n = g.extent(a);
    const double inv_h2 = 1.0 / (g.h * g.h);
    const auto r = detail::one_sided(f.values().data(), static_cast<std::ptrdiff_t>(p), g.stride(a), k, n, g.h, inv_h2,
                                     side == Side::Minus ? delta : 0.0, fb, side == Side::Plus ? delta : 0.0, fb);
    return side == Side::Minus ? r.minus : r.plus;
}

ScalarField transport_operator(const ScalarField& f, const DirectionField& eta, const CrossingSet& set) {
    const Grid2D& g = f.grid();
    const Kernel kern{g, set.subcell, set.crossings, 1.0 / (g.h * g.h)};
    ScalarField out(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out(i, j) = kern.apply(f.values().data(), i, j, eta.x(i, j), eta.y(i, j));
    return out;
}

ScalarField initial_cost_fill(const CrossingSet& set, const Grid2D& g) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(g.size(), inf);
    ScalarField f(g, 0.0);
    for (const auto& c : set.crossings) {
        const auto [pa, pb] = edge_nodes(g, c.edge);
        const double da = g.h - c.delta, db = c.delta;
        if (da < dist[pa]) {
            dist[pa] = da;
            f[pa] = c.chi;
        }
        if (db < dist[pb]) {
            dist[pb] = db;
            f[pb] = c.chi;
        }
    }
    bool missing = true;
    for (int pass = 0; missing && pass < 64; ++pass) {
        for (int order = 0; order < 4; ++order)
            detail::sweep(g, order, [&](int i, int j) {
                const std::size_t p = g.index(i, j);
                const std::size_t nb[4] = {i > 0 ? p - 1 : p, i < g.nx - 1 ? p + 1 : p, j > 0 ? p - g.nx : p,
                                           j < g.ny - 1 ? p + g.nx : p};
                for (std::size_t q : nb)
                    if (dist[q] + g.h < dist[p]) {
                        dist[p] = dist[q] + g.h;
                        f[p] = f[q];
                    }
            });
        missing = std::any_of(dist.begin(), dist.end(), [](double d) { return d == inf; });
    }
    return f;
}

TransportResult extend_cost(const TransportProblem& pb) {
    pb.params.validate();
    const Grid2D& g = pb.phi_sd.grid();
    const SubcellInfo& sc = pb.crossings.subcell;
    if (pb.crossings.crossings.empty())
        throw GeometryError("extend_cost: no interface crossings");
    if (!(sc.grid() == g))
        throw Error("extend_cost: crossings on another grid");
    require_finite(pb.phi_sd, "extend_cost phi_sd");

    TransportResult out;
    out.f = pb.initial ? *pb.initial : initial_cost_fill(pb.crossings, g);
    if (!(out.f.grid() == g))
        throw Error("extend_cost: initial cost on another grid");

    // Nodes lying exactly on the zero set take the crossing value and stay fixed.
    for (const auto& c : pb.crossings.crossings) {
        const auto [pa, pb_] = edge_nodes(g, c.edge);
        if (pb.phi_sd[pb_] == 0.0)
            out.f[pb_] = c.chi;
        if (pb.phi_sd[pa] == 0.0)
            out.f[pa] = c.chi;
    }

    const DirectionField eta = upwind_directions(pb.phi_sd, sc, pb.params.epsilon);
    std::vector<double> k(g.size(), 0.0);
    // Next to a very close crossing (f - chi)/delta is dominated by round-off;
    // such nodes still update but are left out of the residual.
    const double scale = std::max(1.0, std::max(std::abs(pb.crossings.min_chi()), std::abs(pb.crossings.max_chi())));
    const double min_delta = 16.0 * std::numeric_limits<double>::epsilon() * scale / pb.params.tol;
    std::vector<char> measured(g.size(), 0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t p = g.index(i, j);
            if (pb.phi_sd[p] == 0.0 || (pb.active && !(*pb.active)[p]))
                continue;
            k[p] = local_timestep(sc, g.h, pb.params.cfl, i, j);
            measured[p] = k[p] / pb.params.cfl >= min_delta && std::abs(pb.phi_sd[p]) < pb.params.measure_band;
        }

    const Kernel kern{g, sc, pb.crossings.crossings, 1.0 / (g.h * g.h)};
    const double* ex = eta.x.values().data();
    const double* ey = eta.y.values().data();
    const int cap = pb.params.max_sweeps;

    if (pb.stepper == Stepper::GaussSeidel) {
        double* f = out.f.values().data();
        Eigen::Map<Eigen::VectorXd> fv(f, static_cast<Eigen::Index>(g.size()));
        Eigen::VectorXd cycle_start = fv, mixed;
        detail::AndersonMixer mixer(pb.params.anderson_depth);
        double cycle_res = 0.0, best_cycle = std::numeric_limits<double>::infinity();
        for (int sweep = 0; sweep < cap; ++sweep) {
            double res = 0.0;
            bool finite = true;
            detail::sweep(g, sweep, [&](int i, int j) {
                const std::size_t p = g.index(i, j);
                if (k[p] == 0.0)
                    return;
                const double L = kern.apply(f, i, j, ex[p], ey[p]);
                if (!std::isfinite(L))
                    finite = false;
                if (measured[p])
                    res = std::max(res, std::abs(L));
                f[p] += k[p] * L;
            });
            if (!finite)
                throw NumericError("extend_cost: non-finite transport operator at sweep " + std::to_string(sweep));
            out.residual_history.push_back(res);
            out.sweeps = sweep + 1;
            out.residual = res;
            if (res < pb.params.tol) {
                out.converged = true;
                return out;
            }
            cycle_res = std::max(cycle_res, res);
            if (sweep % 4 == 3) {
                if (pb.params.anderson_depth > 0 && cycle_res < pb.params.anderson_start) {
                    if (cycle_res > 10.0 * best_cycle) {
                        mixer.reset();
                    } else {
                        mixed = fv;
                        mixer.mix(cycle_start, mixed);
                        fv = mixed;
                    }
                }
                best_cycle = std::min(best_cycle, cycle_res);
                cycle_res = 0.0;
                cycle_start = fv;
            }
        }
    } else {
        ScalarField stage(g);
        std::vector<double> L0(g.size(), 0.0);
        for (int step = 0; step < cap; ++step) {
            double res = 0.0;
            stage = out.f;
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i) {
                    const std::size_t p = g.index(i, j);
                    if (k[p] == 0.0)
                        continue;
                    L0[p] = kern.apply(out.f.values().data(), i, j, ex[p], ey[p]);
                    if (measured[p])
                        res = std::max(res, std::abs(L0[p]));
                    stage[p] = out.f[p] + k[p] * L0[p];
                }
            out.residual_history.push_back(res);
            out.sweeps = step + 1;
            out.residual = res;
            if (!std::isfinite(res))
                throw NumericError("extend_cost: non-finite transport operator at step " + std::to_string(step));
            if (res < pb.params.tol) {
                out.converged = true;
                return out;
            }
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i) {
                    const std::size_t p = g.index(i, j);
                    if (k[p] == 0.0)
                        continue;
                    const double L1 = kern.apply(stage.values().data(), i, j, ex[p], ey[p]);
                    out.f[p] = 0.5 * (out.f[p] + stage[p]) + 0.5 * k[p] * L1;
                }
        }
    }
    if (!pb.params.throw_on_cap)
        return out;
    throw DivergenceError("extend_cost: no convergence after " + std::to_string(cap) + " iterations (residual " +
                              std::to_string(out.residual) + ")",
                          std::move(out.residual_history));
}

} // namespace lgpr
