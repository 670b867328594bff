#include "lgpr/reinit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "anderson.hpp"
#include "stencil.hpp"

namespace lgpr {

void SolverParams::validate() const {
    if (!(cfl > 0.0 && cfl < 1.0))
        throw ConfigError("SolverParams: CFL constant must lie in (0,1)");
    if (!(tol > 0.0))
        throw ConfigError("SolverParams: tolerance must be positive");
    if (max_sweeps < 1)
        throw ConfigError("SolverParams: max_sweeps must be positive");
    if (anderson_depth < 0)
        throw ConfigError("SolverParams: anderson_depth must be non-negative");
    if (!(epsilon > 0.0))
        throw ConfigError("SolverParams: epsilon must be positive");
}

double godunov_hamiltonian(double s, double a, double b, double c, double d, double g) {
    auto pos = [](double v) { return std::max(v, 0.0); };
    auto neg = [](double v) { return -std::min(v, 0.0); };
    if (s >= 0.0) {
        const double px = std::max(pos(a), neg(b));
        const double py = std::max(pos(c), neg(d));
        return s * (std::sqrt(px * px + py * py) - g);
    }
    const double px = std::max(neg(a), pos(b));
    const double py = std::max(neg(c), pos(d));
    return s * (std::sqrt(px * px + py * py) - g);
}

OneSidedDifferences subcell_modified_differences(const ScalarField& u, const SubcellInfo& sc, int i, int j) {
    const Grid2D& g = u.grid();
    if (!g.contains(i, j))
        throw StencilError("subcell_modified_differences: node outside grid");
    if (!(sc.grid() == g))
        throw Error("subcell_modified_differences: subcell info on another grid");
    const std::size_t p = g.index(i, j);
    const double* data = u.values().data();
    const double inv_h2 = 1.0 / (g.h * g.h);
    const auto& o = sc.offsets_at(p);
    const auto x = detail::one_sided(data, static_cast<std::ptrdiff_t>(p), 1, i, g.nx, g.h, inv_h2, o[0], 0.0, o[1], 0.0);
    const auto y = detail::one_sided(data, static_cast<std::ptrdiff_t>(p), g.nx, j, g.ny, g.h, inv_h2, o[2], 0.0, o[3], 0.0);
    return {x.minus, x.plus, y.minus, y.plus};
}

double local_timestep(const SubcellInfo& sc, double h, double C, int i, int j) {
    double m = h;
    for (double d : sc.offsets_at(sc.grid().index(i, j)))
        if (d > 0.0)
            m = std::min(m, d);
    return C * m;
}

ReinitProblem::ReinitProblem(ScalarField u0, ScalarField g, SolverParams params, std::optional<NodeMask> active)
    : u0_(std::move(u0)), g_(std::move(g)), params_(params), active_(std::move(active)) {
    params_.validate();
    const Grid2D& grid = u0_.grid();
    if (!(g_.grid() == grid))
        throw Error("ReinitProblem: cost field on another grid");
    if (active_ && !(active_->grid() == grid))
        throw Error("ReinitProblem: band mask on another grid");
    require_finite(u0_, "ReinitProblem u0");
    require_finite(g_, "ReinitProblem g");

    sign_ = ScalarField(grid);
    for (std::size_t p = 0; p < grid.size(); ++p)
        sign_[p] = sgn(u0_[p]);

    c1_ = std::numeric_limits<double>::infinity();
    c2_ = 0.0;
    for (std::size_t p = 0; p < grid.size(); ++p) {
        if (active_ && !(*active_)[p])
            continue;
        c1_ = std::min(c1_, g_[p]);
        c2_ = std::max(c2_, g_[p]);
    }
    if (!(c1_ > 0.0))
        throw ConfigError("ReinitProblem: cost must be bounded below by a positive constant");

    subcell_ = find_crossings(u0_).subcell;
}

RelaxResult relax_to_steady(const ReinitProblem& problem) { return relax_to_steady(problem, problem.u0()); }

RelaxResult relax_to_steady(const ReinitProblem& problem, const ScalarField& initial) {
    const Grid2D& g = problem.u0().grid();
    const SolverParams& prm = problem.params();
    const SubcellInfo& sc = problem.subcell();
    if (!(initial.grid() == g))
        throw Error("relax_to_steady: initial field on another grid");

    RelaxResult out;
    out.u = initial;
    // Nodes outside the band and nodes where u0 vanishes are held fixed.
    std::vector<double> k(g.size(), 0.0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t p = g.index(i, j);
            const bool free = problem.sign()[p] != 0.0 && (!problem.active() || (*problem.active())[p]);
            if (free)
                k[p] = local_timestep(sc, g.h, prm.cfl, i, j);
            else if (problem.sign()[p] == 0.0)
                out.u[p] = 0.0;
        }

    double* u = out.u.values().data();
    const double* s = problem.sign().values().data();
    const double* cost = problem.g().values().data();
    const double h = g.h;
    const double inv_h2 = 1.0 / (h * h);
    // absolute tolerance relative to the largest cost
    const double tol = prm.tol * problem.c2();

    const auto n = static_cast<Eigen::Index>(g.size());
    Eigen::Map<Eigen::VectorXd> uv(u, n);
    Eigen::VectorXd cycle_start = uv, mixed;
    detail::AndersonMixer mixer(prm.anderson_depth);
    double cycle_res = 0.0, best_cycle = std::numeric_limits<double>::infinity();

    for (int sweep = 0; sweep < prm.max_sweeps; ++sweep) {
        double res = 0.0;
        bool finite = true;
        detail::sweep(g, sweep, [&](int i, int j) {
            const std::size_t p = g.index(i, j);
            if (k[p] == 0.0)
                return;
            const auto& o = sc.offsets_at(p);
            const auto pp = static_cast<std::ptrdiff_t>(p);
            const auto x = detail::one_sided(u, pp, 1, i, g.nx, h, inv_h2, o[0], 0.0, o[1], 0.0);
            const auto y = detail::one_sided(u, pp, g.nx, j, g.ny, h, inv_h2, o[2], 0.0, o[3], 0.0);
            const double H = godunov_hamiltonian(s[p], x.minus, x.plus, y.minus, y.plus, cost[p]);
            if (!std::isfinite(H))
                finite = false;
            if (std::abs(u[p]) < prm.measure_band)
                res = std::max(res, std::abs(H));
            u[p] -= k[p] * H;
        });
        if (!finite)
            throw NumericError("relax_to_steady: non-finite Hamiltonian at sweep " + std::to_string(sweep));
        out.residual_history.push_back(res);
        out.sweeps = sweep + 1;
        out.residual = res;
        if (res < tol) {
            out.converged = true;
            return out;
        }
        cycle_res = std::max(cycle_res, res);
        if (sweep % 4 == 3) {
            if (prm.anderson_depth > 0 && cycle_res < prm.anderson_start) {
                if (cycle_res > 10.0 * best_cycle) {
                    mixer.reset();
                } else {
                    mixed = uv;
                    mixer.mix(cycle_start, mixed);
                    uv = mixed;
                }
            }
            best_cycle = std::min(best_cycle, cycle_res);
            cycle_res = 0.0;
            cycle_start = uv;
        }
    }
    if (!prm.throw_on_cap)
        return out;
    throw DivergenceError("relax_to_steady: no convergence after " + std::to_string(prm.max_sweeps) +
                              " sweeps (residual " + std::to_string(out.residual) + ")",
                          std::move(out.residual_history));
}

ScalarField hamiltonian_residual(const ReinitProblem& problem, const ScalarField& u) {
    const Grid2D& g = problem.u0().grid();
    if (!(u.grid() == g))
        throw Error("hamiltonian_residual: field on another grid");
    ScalarField out(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t p = g.index(i, j);
            if (problem.sign()[p] == 0.0 || (problem.active() && !(*problem.active())[p]))
                continue;
            const OneSidedDifferences d = subcell_modified_differences(u, problem.subcell(), i, j);
            out[p] = godunov_hamiltonian(problem.sign()[p], d.xm, d.xp, d.ym, d.yp, problem.g()[p]);
        }
    return out;
}

} // namespace lgpr
