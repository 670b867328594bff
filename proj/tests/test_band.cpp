#include <doctest.h>

#include <cmath>

#include "lgpr/band.hpp"
#include "lgpr/interface.hpp"

using namespace lgpr;

namespace {
ScalarField circle_sd(const Grid2D& g, double cx = 0.0, double scale = 1.0) {
    return ScalarField::sample(g, [=](double x, double y) { return scale * (1 - std::hypot(x - cx, y)); });
}
} // namespace

TEST_CASE("band widths") {
    CHECK_NOTHROW(BandSpec::cells(4, 8, 12, 0.1));
    const BandSpec b = BandSpec::cells(4, 8, 12, 0.1);
    CHECK(b.gamma == doctest::Approx(1.2));
    CHECK_THROWS_AS(BandSpec::cells(8, 4, 12, 0.1), ConfigError);
    CHECK_THROWS_AS(BandSpec::cells(1, 2, 3, 0.1, 1.5), ConfigError);
}

TEST_CASE("band mask") {
    const Grid2D g = Grid2D::square(-1.5, 1.5, 40);
    const ScalarField sd = circle_sd(g);
    const NodeMask m = band_mask(sd, 0.3);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double r = std::hypot(g.x(i), g.y(j));
            CHECK(m(i, j) == (r > 0.7 && r < 1.3));
        }
    const NodeMask all = band_mask(sd, 10.0);
    CHECK(all.values().all());
    const auto shifted = ScalarField::sample(g, [&](double x, double) { return x - 0.5 * g.h; });
    CHECK_THROWS_AS(band_mask(shifted, 0.25 * g.h), BandError);
}

TEST_CASE("cutoff") {
    CHECK(cutoff(1.0, 1.0, 2.0) == doctest::Approx(1.0));
    CHECK(cutoff(2.0, 1.0, 2.0) == doctest::Approx(0.0));
    CHECK(cutoff(1.5, 1.0, 2.0) == doctest::Approx(0.5));
    CHECK(cutoff(-1.5, 1.0, 2.0) == doctest::Approx(0.5));
    CHECK(cutoff(0.2, 1.0, 2.0) == 1.0);
    CHECK(cutoff(3.0, 1.0, 2.0) == 0.0);
    // C1 at both ends
    const double e = 1e-6;
    CHECK(std::abs(cutoff(1.0 + e, 1.0, 2.0) - 1.0) < 1e-10);
    CHECK(std::abs(cutoff(2.0 - e, 1.0, 2.0)) < 1e-10);
    double prev = 1.0;
    for (double y = 1.0; y <= 2.0; y += 0.01) {
        const double c = cutoff(y, 1.0, 2.0);
        CHECK(c <= prev + 1e-15);
        prev = c;
    }
    CHECK_THROWS_AS(cutoff(0.5, 2.0, 1.0), ConfigError);
}

TEST_CASE("bilinear interpolation reproduces bilinear fields") {
    const Grid2D g = Grid2D::square(-1, 1, 10);
    const auto f = ScalarField::sample(g, [](double x, double y) { return 1 + 2 * x - y + 0.5 * x * y; });
    for (const Eigen::Vector2d p : {Eigen::Vector2d(0.13, -0.42), Eigen::Vector2d(-0.99, 0.71)})
        CHECK(bilinear(f, p) == doctest::Approx(1 + 2 * p.x() - p.y() + 0.5 * p.x() * p.y()));
}

TEST_CASE("re-banding trigger") {
    const Grid2D g = Grid2D::square(-2, 2, 80);
    const BandSpec band = BandSpec::cells(4, 8, 12, g.h);
    const ScalarField sd = circle_sd(g);
    const CrossingSet fresh = find_crossings(sd);
    const Tube tube = make_tube(sd, fresh, band);

    const ReinitDecision ok = needs_reinit(fresh, tube, band);
    CHECK_FALSE(ok.needed);
    CHECK(ok.reason.empty());

    // interface moved to within alpha/2 of the tube edge
    const double shift = band.gamma - band.alpha / 2;
    const ReinitDecision moved = needs_reinit(find_crossings(circle_sd(g, shift)), tube, band);
    CHECK(moved.needed);
    CHECK(moved.reason == "tube-encroachment");

    const ReinitDecision drift = needs_reinit(find_crossings(circle_sd(g, 0.0, 1.5)), tube, band);
    CHECK(drift.needed);
    CHECK(drift.reason == "gradient-drift");

    const ReinitDecision mild = needs_reinit(find_crossings(circle_sd(g, 0.0, 1.1)), tube, band);
    CHECK_FALSE(mild.needed);
}
