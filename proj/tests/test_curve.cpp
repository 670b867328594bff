#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "lgpr/curve.hpp"

using namespace lgpr;

TEST_CASE("projection onto the ellipse") {
    const CurveProjector proj(curves::ellipse21());
    const Projection p = proj.project({0.0, 2.0}, 1e-13);
    CHECK(p.point.x() == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(p.point.y() == doctest::Approx(1.0));
    CHECK(p.distance == doctest::Approx(1.0));
    const Projection q = proj.project({3.0, 0.0}, 1e-13);
    CHECK(q.point.x() == doctest::Approx(2.0));
    CHECK(q.distance == doctest::Approx(1.0));
    CHECK(side_of(proj.curve(), {0.1, 0.1}, proj.project({0.1, 0.1}, 1e-13)) > 0);
    CHECK(side_of(proj.curve(), {2.5, 0.1}, proj.project({2.5, 0.1}, 1e-13)) < 0);
}

TEST_CASE("init from the unit-speed unit circle") {
    const Grid2D g = Grid2D::square(-1.5, 1.5, 48);
    const CurveInit ci = init_from_curve(curves::circle_arclength(1.0), g, 3 * g.h);
    int in_band = 0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double r = std::hypot(g.x(i), g.y(j));
            if (std::abs(r - 1) > 1e-12)
                CHECK(ci.sign(i, j) == (r < 1 ? 1.0 : -1.0));
            if (!ci.in_band(i, j))
                continue;
            ++in_band;
            CHECK(ci.phi_sd(i, j) == doctest::Approx(1.0 - r).epsilon(1e-10));
            CHECK(ci.chi(i, j) == doctest::Approx(1.0).epsilon(1e-10));
        }
    CHECK(in_band > 0);
}

TEST_CASE("radius-2 circle parameterised by angle has stretch 2") {
    const Grid2D g = Grid2D::square(-3, 3, 40);
    const CurveInit ci = init_from_curve(curves::circle(2.0), g, 3 * g.h);
    for (std::size_t p = 0; p < g.size(); ++p)
        if (ci.in_band[p])
            CHECK(ci.chi[p] == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("ellipse stretch at the projections") {
    const Grid2D g = Grid2D::square(-2.5, 2.5, 64);
    const ParametricCurve c = curves::ellipse21();
    const CurveInit ci = init_from_curve(c, g, 3 * g.h);
    const CurveProjector proj(c);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            if (!ci.in_band(i, j))
                continue;
            const Projection p = proj.project({g.x(i), g.y(j)}, 1e-13);
            const double s = std::sin(p.xi), co = std::cos(p.xi);
            CHECK(ci.chi(i, j) == doctest::Approx(std::sqrt(4 * s * s + co * co)).epsilon(1e-9));
            CHECK(std::abs(ci.phi_sd(i, j)) == doctest::Approx(p.distance).epsilon(1e-10));
        }
}

TEST_CASE("init errors") {
    const Grid2D small = Grid2D::square(-1.2, 1.2, 24);
    CHECK_THROWS_AS(init_from_curve(curves::ellipse21(), small, 3 * small.h), GeometryError);
    const Grid2D g = Grid2D::square(-1.5, 1.5, 32);
    CHECK_THROWS_AS(init_from_curve(curves::circle(), g, g.h), GeometryError);
    CHECK_THROWS_AS(curves::by_name("square"), ConfigError);
    CHECK_THROWS_AS(read_curve_csv("/nonexistent/curve.csv"), IoError);
}

TEST_CASE("sampled curve file reproduces the ellipse") {
    const std::string path = "test_curve_samples.csv";
    {
        std::ofstream o(path);
        o << "xi,x,y\n";
        const int m = 64;
        for (int k = 0; k < m; ++k) {
            const double xi = 2 * M_PI * k / m;
            o.precision(17);
            o << xi << "," << 2 * std::cos(xi) << "," << std::sin(xi) << "\n";
        }
    }
    const ParametricCurve c = read_curve_csv(path);
    std::remove(path.c_str());
    for (double xi : {0.1, 1.3, 2.9, 4.4}) {
        CHECK(c.point(xi).x() == doctest::Approx(2 * std::cos(xi)).epsilon(1e-10));
        CHECK(c.tangent(xi).y() == doctest::Approx(std::cos(xi)).epsilon(1e-9));
    }
}
