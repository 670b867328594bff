#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lgpr/config.hpp"
#include "lgpr/expression.hpp"
#include "lgpr/field_io.hpp"
#include "lgpr/interface.hpp"

using namespace lgpr;
namespace fs = std::filesystem;

namespace {
std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / "lgpr_test_io";
    fs::create_directories(d);
    return d / name;
}
} // namespace

TEST_CASE("field CSV round trip is exact") {
    const Grid2D g(9, 7, 0.3, -1.2, 0.45);
    const auto f = ScalarField::sample(g, [](double x, double y) { return std::exp(x) / 3.0 - std::sin(7 * y) * 1e-9; });
    const auto p = scratch("field.csv");
    write_field_csv(p.string(), f);
    CHECK(slurp(p).rfind("i,j,x,y,value\n", 0) == 0);
    const ScalarField back = read_field_csv(p.string());
    CHECK(back.grid().nx == g.nx);
    CHECK(back.grid().ny == g.ny);
    CHECK(back.grid().h == doctest::Approx(g.h));
    for (std::size_t q = 0; q < g.size(); ++q)
        CHECK(back[q] == f[q]);
}

TEST_CASE("field CSV errors") {
    CHECK_THROWS_AS(read_field_csv("/nonexistent/field.csv"), IoError);
    const auto p = scratch("broken.csv");
    {
        std::ofstream o(p);
        o << "i,j,x,y,value\n0,0,0,0,abc\n";
    }
    CHECK_THROWS_AS(read_field_csv(p.string()), IoError);
    CHECK_THROWS_AS(write_field_csv("/nonexistent/dir/f.csv", ScalarField(Grid2D(4, 4, 1, 0, 0))), IoError);
}

TEST_CASE("crossings, forces, residuals and manifest") {
    const Grid2D g = Grid2D::square(-1.5, 1.5, 16);
    const auto sd = ScalarField::sample(g, [](double x, double y) { return 1 - std::hypot(x, y); });
    const CrossingSet set = find_crossings(sd);
    const auto pc = scratch("crossings.csv");
    write_crossings_csv(pc.string(), set);
    const std::string c = slurp(pc);
    CHECK(c.rfind("x,y,gx,gy,chi\n", 0) == 0);
    CHECK(static_cast<std::size_t>(std::count(c.begin(), c.end(), '\n')) == set.crossings.size() + 1);

    ForceField F{ScalarField(g), ScalarField(g)};
    F.Fx(3, 4) = 1.5;
    const auto pf = scratch("force.csv");
    write_force_csv(pf.string(), F);
    const std::string fc = slurp(pf);
    CHECK(fc.rfind("i,j,x,y,Fx,Fy\n", 0) == 0);
    CHECK(std::count(fc.begin(), fc.end(), '\n') == 2);

    const auto pr = scratch("res.csv");
    write_residuals_csv(pr.string(), {1.0, 0.5});
    CHECK(slurp(pr) == "sweep,residual\n1,1\n2,0.5\n");

    const auto pm = scratch("manifest.txt");
    write_manifest(pm.string(), {{"verb", "run"}, {"tol", format_double(1e-10)}});
    CHECK(slurp(pm) == "verb = run\ntol = 1e-10\n");
    CHECK(std::stod(format_double(0.1)) == 0.1);
}

TEST_CASE("expressions") {
    CHECK(Expression("1 + 2 * 3")({}) == 7.0);
    CHECK(Expression("2 ^ 3 ^ 2")({}) == 512.0);
    CHECK(Expression("-2 ^ 2")({}) == -4.0);
    CHECK(Expression("exp(0.5 * y)")(0.0, 2.0) == doctest::Approx(std::exp(1.0)));
    CHECK(Expression("sqrt(4*sin(xi)^2 + cos(xi)^2)")(ExprVars{0, 0, 0.5, 0}) ==
          doctest::Approx(std::sqrt(4 * std::sin(0.5) * std::sin(0.5) + std::cos(0.5) * std::cos(0.5))));
    CHECK(Expression("atan2(y, x)")(0.0, 1.0) == doctest::Approx(M_PI / 2));
    CHECK(Expression("theta")(0.0, 1.0) == doctest::Approx(M_PI / 2));
    CHECK(Expression("min(x, 2) + max(abs(-3), 1) + pi - e")(5.0, 0.0) == doctest::Approx(5.0 + M_PI - M_E));
    CHECK(Expression("2").is_constant());
    CHECK_FALSE(Expression("1 + x").is_constant());
    for (const char* bad : {"exp(", "1 +", "foo(1)", "z", "2 3", "max(1)", ""})
        CHECK_THROWS_AS(Expression{bad}, ConfigError);
}

TEST_CASE("config parsing") {
    const auto s = parse_config_text("# comment\npreset = ex3\n n=128 \nband = 0.1, 0.2, 0.3 # trailing\n");
    REQUIRE(s.size() == 3);
    CHECK(s[0] == Setting{"preset", "ex3"});
    CHECK(s[1] == Setting{"n", "128"});
    ExperimentConfig c;
    for (const auto& [k, v] : s)
        apply_setting(c, k, v);
    CHECK(c.preset == "ex3");
    CHECK(*c.n == 128);
    CHECK(c.band->gamma == doctest::Approx(0.3));
    CHECK(c.grid().h == doctest::Approx(5.0 / 128));
    // later settings win
    apply_setting(c, "h", "0.078125");
    CHECK_FALSE(c.n.has_value());
    CHECK(c.grid().nx == 65);
    apply_setting(c, "stepper", "rk2");
    CHECK(c.stepper == Stepper::TvdRk2);

    CHECK_THROWS_AS(parse_config_text("novalue\n"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "unknown", "1"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "n", "12.5"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "tol", "small"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "stepper", "euler"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "chi", "exp("), ConfigError);
    CHECK_THROWS_AS(read_config_file("/nonexistent.cfg"), IoError);

    ExperimentConfig bad;
    bad.preset = "nope";
    bad.n = 32;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    ExperimentConfig both;
    both.n = 32;
    both.h = 0.1;
    CHECK_THROWS_AS(both.validate(), ConfigError);
    ExperimentConfig uneven;
    uneven.h = 0.7;
    CHECK_THROWS_AS(uneven.grid(), ConfigError);
}

TEST_CASE("settings round trip") {
    ExperimentConfig c;
    apply_setting(c, "preset", "circle-const");
    apply_setting(c, "chi", "2");
    apply_setting(c, "n", "48");
    apply_setting(c, "tol", "1e-9");
    apply_setting(c, "band", "0.1,0.2,0.3");
    ExperimentConfig d;
    for (const auto& [k, v] : to_settings(c))
        apply_setting(d, k, v);
    CHECK(to_settings(c) == to_settings(d));
}
