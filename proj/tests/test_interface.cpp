#include <doctest.h>

#include <cmath>

#include "lgpr/interface.hpp"
#include "lgpr/metrics.hpp"

using namespace lgpr;

namespace {
ScalarField circle_sd(const Grid2D& g) {
    return ScalarField::sample(g, [](double x, double y) { return 1.0 - std::hypot(x, y); });
}
} // namespace

TEST_CASE("crossing offset") {
    CHECK(crossing_offset(-0.5, 0.5, 0.0) == doctest::Approx(0.5));
    CHECK(crossing_offset(-1.0, 3.0, 0.0) == doctest::Approx(0.75));
    CHECK(crossing_offset(0.0, 1.0, 0.0) == doctest::Approx(1.0));
    CHECK(crossing_offset(1.0, 0.0, 0.0) == doctest::Approx(0.0));
    // symmetric in the sign convention
    CHECK(crossing_offset(0.5, -1.5, 0.0) == doctest::Approx(crossing_offset(-0.5, 1.5, 0.0)));
    // a quadratic that crosses between nodes: phi(s) = s^2 - 0.25 with s measured from b
    // a-node at s = 1, b-node at s = 0, second difference 2 h^2 / h^2 = 2
    CHECK(crossing_offset(0.75, -0.25, 2.0) == doctest::Approx(0.5));
}

TEST_CASE("edge_crosses") {
    CHECK(edge_crosses(-1.0, 1.0));
    CHECK(edge_crosses(0.0, 1.0));
    CHECK_FALSE(edge_crosses(1.0, 2.0));
    CHECK_FALSE(edge_crosses(-1.0, -2.0));
}

TEST_CASE("find_crossings on the unit circle is third-order accurate") {
    ConvergenceStudy s;
    for (int n : {32, 64, 128, 256}) {
        const Grid2D g = Grid2D::square(-1.5, 1.5, n);
        const CrossingSet set = find_crossings(circle_sd(g));
        REQUIRE(!set.crossings.empty());
        double err = 0;
        for (const auto& c : set.crossings) {
            err = std::max(err, std::abs(c.position.norm() - 1.0));
            CHECK(c.delta >= 0.0);
            CHECK(c.delta <= g.h);
            CHECK(c.chi == doctest::Approx(c.grad.norm()));
        }
        if (n == 64)
            CHECK(err < 10 * g.h * g.h * g.h);
        s.ladder.emplace_back(g.h, err);
    }
    CHECK(fit_order(s) >= 2.5);
}

TEST_CASE("find_crossings records subcell offsets on both endpoints") {
    const Grid2D g(7, 7, 0.1, -0.33, -0.3);
    const auto phi = ScalarField::sample(g, [](double x, double) { return x; });
    const CrossingSet set = find_crossings(phi);
    // x = 0 lies between i = 3 (x = -0.03) and i = 4 (x = 0.07)
    CHECK(set.crossings.size() == 7);
    for (const auto& c : set.crossings) {
        CHECK(c.edge.axis == Axis::X);
        CHECK(c.edge.i == 4);
        CHECK(c.delta == doctest::Approx(0.07));
        CHECK(c.position.x() == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(c.grad.x() == doctest::Approx(1.0));
        CHECK(c.grad.y() == doctest::Approx(0.0));
    }
    CHECK(*set.subcell.offset(4, 2, Axis::X, Side::Minus) == doctest::Approx(0.07));
    CHECK(*set.subcell.offset(3, 2, Axis::X, Side::Plus) == doctest::Approx(0.03));
    CHECK_FALSE(set.subcell.offset(3, 2, Axis::X, Side::Minus).has_value());
    CHECK_FALSE(set.subcell.offset(4, 2, Axis::Y, Side::Plus).has_value());
}

TEST_CASE("find_crossings without a sign change") {
    const Grid2D g = Grid2D::square(-1, 1, 8);
    CHECK_THROWS_AS(find_crossings(ScalarField(g, 1.0)), GeometryError);
}

TEST_CASE("interface gradient") {
    const Grid2D g = Grid2D::square(-1.5, 1.5, 30);
    const auto plane = ScalarField::sample(g, [](double x, double y) { return x - 0.05 + 0 * y; });
    for (const auto& c : find_crossings(plane).crossings) {
        CHECK(c.grad.x() == doctest::Approx(1.0));
        CHECK(c.grad.y() == doctest::Approx(0.0).epsilon(1e-12));
    }
    ConvergenceStudy s;
    for (int n : {32, 64, 128}) {
        const Grid2D gc = Grid2D::square(-1.5, 1.5, n);
        double err = 0;
        for (const auto& c : find_crossings(circle_sd(gc)).crossings)
            err = std::max(err, std::abs(c.grad.norm() - 1.0));
        s.ladder.emplace_back(gc.h, err);
    }
    CHECK(fit_order(s) >= 1.8);
}

TEST_CASE("interpolate_chi keeps the edges and reads nodal samples") {
    const Grid2D g = Grid2D::square(-1.5, 1.5, 32);
    CrossingSet set = find_crossings(circle_sd(g));
    const auto before = set.crossings;
    interpolate_chi(set, ScalarField::sample(g, [](double x, double) { return 2.0 + x; }));
    REQUIRE(set.crossings.size() == before.size());
    for (std::size_t k = 0; k < before.size(); ++k) {
        CHECK(set.crossings[k].edge == before[k].edge);
        CHECK(set.crossings[k].chi == doctest::Approx(2.0 + set.crossings[k].position.x()));
    }
    CHECK(set.min_chi() >= 1.0 - 1e-12);
    CHECK(set.max_chi() <= 3.0 + 1e-12);
}
