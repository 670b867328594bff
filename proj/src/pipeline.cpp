#include "lgpr/pipeline.hpp"

#include <cmath>

namespace lgpr {

namespace {

LgprResult finish(const ScalarField& u0, CrossingSet crossings, RelaxResult distance, const LgprOptions& o) {
    LgprResult r;
    r.distance = std::move(distance);
    r.crossings = std::move(crossings);

    TransportProblem tp{r.distance.u, r.crossings, o.params, o.stepper, o.active, std::nullopt};
    r.cost = extend_cost(tp);

    ReinitProblem eq7(u0, r.cost.f, o.params, o.active);
    // f times the distance field is already first-order close to the answer.
    ScalarField start = u0;
    for (std::size_t p = 0; p < start.size(); ++p)
        if (!o.active || (*o.active)[p])
            start[p] = r.cost.f[p] * r.distance.u[p];
    r.phi = relax_to_steady(eq7, start);
    return r;
}

} // namespace

LgprResult run_lgpr(const ScalarField& phi0, const LgprOptions& o) {
    ReinitProblem eq5(phi0, ScalarField(phi0.grid(), 1.0), o.params, o.active);
    RelaxResult d = relax_to_steady(eq5);
    CrossingSet set = find_crossings(d.u, &phi0);
    return finish(phi0, std::move(set), std::move(d), o);
}

LgprResult run_lgpr_with_chi(const ScalarField& phi_init, const ScalarField& chi_nodes, const LgprOptions& o) {
    ReinitProblem eq5(phi_init, ScalarField(phi_init.grid(), 1.0), o.params, o.active);
    RelaxResult d = relax_to_steady(eq5);
    CrossingSet set = find_crossings(d.u);
    interpolate_chi(set, chi_nodes);
    return finish(phi_init, std::move(set), std::move(d), o);
}

EikonalResult direct_cost_solution(const LgprResult& r, const ScalarField& sign_source) {
    return solve_eikonal(seeded_problem(r.crossings, r.cost.f, sign_source));
}

Example example1(int cells) { return example1(Grid2D::square(-1.5, 1.5, cells)); }
Example example3(int cells) { return example3(Grid2D::square(-2.5, 2.5, cells)); }
Example circle_const(int cells, double c) { return circle_const(Grid2D::square(-1.5, 1.5, cells), c); }

Example example1(const Grid2D& grid) {
    Example ex;
    ex.name = "ex1";
    ex.grid = grid;
    ex.phi_sd = signed_distance(curves::trefoil(), ex.grid);
    ex.phi0 = ex.phi_sd;
    for (int j = 0; j < ex.grid.ny; ++j)
        for (int i = 0; i < ex.grid.nx; ++i)
            ex.phi0(i, j) *= std::exp(0.5 * ex.grid.y(j));
    ex.chi_target = [](double, double y) { return std::exp(0.5 * y); };
    ex.grad_chi = [](double, double y) { return Eigen::Vector2d(0.0, 0.5 * std::exp(0.5 * y)); };
    return ex;
}

Example example3(const Grid2D& grid) {
    Example ex;
    ex.name = "ex3";
    ex.grid = grid;
    const CurveInit init = init_from_curve(curves::ellipse21(), ex.grid, 3.0 * ex.grid.h);
    ex.phi0 = init.phi_sd;
    ex.phi_sd = init.phi_sd;
    ex.chi_nodes = init.chi;
    ex.chi_target = [](double x, double y) { return std::sqrt(4 * y * y + x * x / 4); };
    ex.grad_chi = [](double x, double y) {
        const double n = std::sqrt(4 * y * y + x * x / 4);
        return Eigen::Vector2d(x / (4 * n), 4 * y / n);
    };
    return ex;
}

Example circle_const(const Grid2D& grid, double c) {
    Example ex;
    ex.name = "circle-const";
    ex.grid = grid;
    ex.phi0 = ScalarField::sample(ex.grid, [c](double x, double y) { return 0.5 * c * (1.0 - x * x - y * y); });
    ex.phi_sd = ScalarField::sample(ex.grid, [](double x, double y) { return 1.0 - std::hypot(x, y); });
    ex.chi_target = [c](double, double) { return c; };
    ex.grad_chi = [](double, double) { return Eigen::Vector2d(0.0, 0.0); };
    return ex;
}

RunMetrics example1_metrics(const Example& ex, const LgprResult& r) {
    const CrossingSet before = find_crossings(ex.phi0);
    const CrossingSet after = find_crossings(r.phi.u);
    const GradientErrors ge = gradient_and_stretch_errors(before, after, ex.chi_target);
    const auto tq0 = interface_tangential_quantities(ex.phi0, before, &r.cost.f);
    const auto tq1 = interface_tangential_quantities(r.phi.u, after);
    const TangentialErrors te = tangential_errors(before, tq0, after, tq1, ex.grad_chi);
    return {location_error(before, after), ge.E_G, ge.E_S, te.E_f, te.E_Sprime};
}

RunMetrics example3_metrics(const LgprResult& r) {
    const CrossingSet after = find_crossings(r.phi.u);
    RunMetrics m;
    m.E_L = location_residual(after, [](double x, double y) { return x * x / 4 + y * y - 1.0; });
    m.E_G = stretch_error(after, [](double x, double y) { return std::sqrt(4 * y * y + x * x / 4); });
    m.E_S = m.E_G;
    m.E_f = std::nan("");
    m.E_Sprime = std::nan("");
    return m;
}

} // namespace lgpr
