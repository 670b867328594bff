#include <doctest.h>

#include <cmath>

#include "lgpr/force.hpp"
#include "lgpr/interface.hpp"
#include "lgpr/metrics.hpp"

using namespace lgpr;

namespace {
ScalarField circle_sd(const Grid2D& g, double scale = 1.0) {
    return ScalarField::sample(g, [=](double x, double y) { return scale * (1 - std::hypot(x, y)); });
}
} // namespace

TEST_CASE("fit order") {
    CHECK(fit_order({{{0.1, 1e-3}, {0.05, 1.25e-4}}}) == doctest::Approx(3.0));
    CHECK(fit_order({{{0.1, 4e-2}, {0.05, 1e-2}}}) == doctest::Approx(2.0));
    CHECK(fit_order({{{0.1, 1e-2}, {0.05, 1e-2}, {0.025, 1e-2}}}) == doctest::Approx(0.0));
    const ConvergenceStudy s{{{0.1, 3e-3}, {0.05, 9e-4}, {0.025, 2e-4}}};
    ConvergenceStudy scaled = s;
    for (auto& [h, e] : scaled.ladder)
        e *= 7.5;
    CHECK(fit_order(scaled) == doctest::Approx(fit_order(s)));
    CHECK_THROWS_AS(fit_order({{{0.1, 1e-3}}}), FitError);
    CHECK_THROWS_AS(fit_order({{{0.1, 0.0}, {0.05, 1e-3}}}), FitError);
    CHECK_THROWS_AS(fit_order({{{0.1, 1e-3}, {0.1, 1e-4}}}), FitError);
}

TEST_CASE("pairing and location error") {
    const Grid2D g = Grid2D::square(-1.5, 1.5, 32);
    const CrossingSet a = find_crossings(circle_sd(g));
    CHECK(location_error(a, a) == 0.0);
    const auto pairs = pair_crossings(a, find_crossings(circle_sd(g, 2.0)));
    CHECK(pairs.size() == a.crossings.size());
    for (const auto& [i, j] : pairs)
        CHECK(i == j);

    CrossingSet b = a;
    for (auto& c : b.crossings)
        c.position.x() += 1e-4;
    CHECK(location_error(a, b) == doctest::Approx(1e-4));

    const CrossingSet other = find_crossings(ScalarField::sample(g, [](double x, double y) {
        return 0.9 - std::hypot(x, y);
    }));
    CHECK_THROWS_AS(pair_crossings(a, other), PairingError);
}

TEST_CASE("location residual against an analytic curve") {
    const Grid2D g = Grid2D::square(-1.5, 1.5, 64);
    const CrossingSet a = find_crossings(circle_sd(g));
    const double r = location_residual(a, [](double x, double y) { return x * x + y * y - 1; });
    CHECK(r >= 0.0);
    CHECK(r < 10 * g.h * g.h * g.h);
}

TEST_CASE("gradient and stretch errors") {
    const Grid2D g = Grid2D::square(-1.5, 1.5, 32);
    const CrossingSet a = find_crossings(circle_sd(g, 2.0));
    const auto two = [](double, double) { return 2.0; };
    const GradientErrors same = gradient_and_stretch_errors(a, a, two);
    CHECK(same.E_G == 0.0);
    CHECK(same.E_S == doctest::Approx(stretch_error(a, two)));
    CHECK(same.E_S < 0.05);
    // exact target
    CrossingSet exact = a;
    for (auto& c : exact.crossings)
        c.grad = c.grad.normalized() * 2.0;
    CHECK(stretch_error(exact, two) == doctest::Approx(0.0).epsilon(1e-14));
    const GradientErrors e = gradient_and_stretch_errors(a, find_crossings(circle_sd(g)), two);
    CHECK(e.E_G == doctest::Approx(e.E_S).epsilon(0.05));
    CHECK(e.E_G > 0.9);
}

TEST_CASE("tangential errors") {
    const Grid2D g = Grid2D::square(-1.5, 1.5, 64);
    const ScalarField sd = circle_sd(g);
    const CrossingSet a = find_crossings(sd);
    const ScalarField f(g, 1.0);
    const auto tq = interface_tangential_quantities(sd, a, &f);
    const auto zero = [](double, double) { return Eigen::Vector2d(0, 0); };
    const TangentialErrors same = tangential_errors(a, tq, a, tq, zero);
    CHECK(same.E_f == 0.0);
    CHECK(same.E_Sprime == 0.0);

    // f radially constant with angular profile: Tf against the symbolic tangential derivative
    const auto grad_chi = [](double x, double y) {
        const double r2 = x * x + y * y, th = std::atan2(y, x);
        return Eigen::Vector2d(-0.4 * std::cos(th) * y / r2, 0.4 * std::cos(th) * x / r2);
    };
    ConvergenceStudy s;
    for (int n : {32, 64, 128}) {
        const Grid2D gg = Grid2D::square(-1.5, 1.5, n);
        const ScalarField ss = circle_sd(gg);
        const CrossingSet cs = find_crossings(ss);
        const auto ff = ScalarField::sample(gg, [](double x, double y) { return 1.5 + 0.4 * std::sin(std::atan2(y, x)); });
        const auto q = interface_tangential_quantities(ss, cs, &ff);
        s.ladder.emplace_back(gg.h, tangential_errors(cs, q, cs, q, grad_chi).E_f);
    }
    CHECK(fit_order(s) >= 0.8);
}
