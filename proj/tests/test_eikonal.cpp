#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "lgpr/eikonal.hpp"
#include "lgpr/interface.hpp"
#include "lgpr/metrics.hpp"
#include "lgpr/reinit.hpp"

using namespace lgpr;

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();

ScalarField circle_sd(const Grid2D& g) {
    return ScalarField::sample(g, [](double x, double y) { return 1.0 - std::hypot(x, y); });
}

EikonalProblem circle_problem(const Grid2D& g, const ScalarField& cost) {
    const ScalarField sd = circle_sd(g);
    return seeded_problem(find_crossings(sd), cost, sd);
}
} // namespace

TEST_CASE("sweep update") {
    CHECK(sweep_update(0.0, inf, 1.0, 0.1) == doctest::Approx(0.1));
    CHECK(sweep_update(0.0, 0.0, 1.0, 1.0) == doctest::Approx(std::sqrt(2.0) / 2));
    CHECK(sweep_update(0.3, 0.1, 2.0, 0.05) == doctest::Approx(0.2));
    // the two-sided branch solves (u - a)^2 + (u - b)^2 = (g h)^2
    const double u = sweep_update(0.02, 0.05, 1.0, 0.1);
    CHECK((u - 0.02) * (u - 0.02) + (u - 0.05) * (u - 0.05) == doctest::Approx(0.01));
}

TEST_CASE("circle distance by fast sweeping") {
    ConvergenceStudy global, near;
    for (int n : {32, 64, 128, 256}) {
        const Grid2D g = Grid2D::square(-1.5, 1.5, n);
        const EikonalProblem pb = circle_problem(g, ScalarField(g, 1.0));
        const EikonalResult r = solve_eikonal(pb);
        CHECK(r.cycles <= 8);
        const ScalarField sd = circle_sd(g);
        double eg = 0, en = 0;
        for (std::size_t p = 0; p < g.size(); ++p) {
            const double e = std::abs(r.u[p] - sd[p]);
            // the centre is the cut locus of the circle
            if (std::abs(sd[p] - 1.0) > 0.2)
                eg = std::max(eg, e);
            if (std::abs(sd[p]) < 1.5 * g.h)
                en = std::max(en, e);
            if (pb.frozen[p])
                CHECK(r.u[p] == doctest::Approx(sd[p] >= 0 ? pb.frozen_values[p] : -pb.frozen_values[p]));
            if (sd[p] != 0)
                CHECK(r.u[p] * sd[p] >= 0);
        }
        global.ladder.emplace_back(g.h, eg);
        near.ladder.emplace_back(g.h, en);
    }
    CHECK(fit_order(global) >= 0.8);
    CHECK(fit_order(near) >= 1.8);
}

TEST_CASE("cost scaling") {
    const Grid2D g = Grid2D::square(-1.5, 1.5, 64);
    const EikonalResult r1 = solve_eikonal(circle_problem(g, ScalarField(g, 1.0)));
    const EikonalResult r2 = solve_eikonal(circle_problem(g, ScalarField(g, 2.0)));
    CHECK((r2.u.values() - 2.0 * r1.u.values()).abs().maxCoeff() < 1e-12);
}

TEST_CASE("monotone in the cost") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const Grid2D g = Grid2D::square(-1.5, 1.5, 32);
    for (int trial = 0; trial < 10; ++trial) {
        ScalarField g1(g), g2(g);
        for (std::size_t p = 0; p < g.size(); ++p) {
            g1[p] = 0.5 + U(rng);
            g2[p] = g1[p] + 0.5 * U(rng);
        }
        const EikonalResult a = solve_eikonal(circle_problem(g, g1));
        const EikonalResult b = solve_eikonal(circle_problem(g, g2));
        CHECK((a.u.values().abs() - b.u.values().abs()).maxCoeff() <= 1e-12);
    }
}

TEST_CASE("agrees with the distance relaxation near the interface") {
    const Grid2D g = Grid2D::square(-1.5, 1.5, 64);
    const ScalarField sd = circle_sd(g);
    const EikonalResult e = solve_eikonal(circle_problem(g, ScalarField(g, 1.0)));
    const RelaxResult r = relax_to_steady(ReinitProblem(sd, ScalarField(g, 1.0), SolverParams{}));
    for (std::size_t p = 0; p < g.size(); ++p)
        if (std::abs(sd[p]) < 2 * g.h)
            CHECK(std::abs(e.u[p] - r.u[p]) <= 10 * g.h * g.h);
}

TEST_CASE("eikonal errors") {
    const Grid2D g = Grid2D::square(-1, 1, 8);
    EikonalProblem pb;
    pb.g = ScalarField(g, 1.0);
    pb.frozen = NodeMask(g, false);
    pb.frozen_values = ScalarField(g, 0.0);
    pb.sign = ScalarField(g, 1.0);
    CHECK_THROWS_AS(solve_eikonal(pb), GeometryError);
    pb.frozen(3, 3) = true;
    pb.max_cycles = 1;
    pb.tol = -1;
    CHECK_THROWS_AS(solve_eikonal(pb), DivergenceError);
}
