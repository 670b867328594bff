#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lgpr/experiment.hpp"
#include "lgpr/pipeline.hpp"

using namespace lgpr;
namespace fs = std::filesystem;

namespace {
std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}
} // namespace

TEST_CASE("constant stretch on the circle") {
    for (double c : {1.0, 2.0}) {
        const Example ex = circle_const(64, c);
        const LgprResult r = run_lgpr(ex.phi0, LgprOptions{});
        CHECK(r.distance.converged);
        CHECK(r.cost.converged);
        CHECK(r.phi.converged);
        double spread = 0.0;
        for (const auto& cr : r.crossings.crossings)
            spread = std::max(spread, std::abs(cr.chi - c));
        CHECK(spread < 1e-4);
        CHECK((r.cost.f.values() - c).abs().maxCoeff() <= spread + 1e-12);
        const double h = ex.grid.h;
        for (std::size_t p = 0; p < ex.grid.size(); ++p)
            if (std::abs(ex.phi_sd[p]) < 0.3)
                CHECK(std::abs(r.phi.u[p] - c * ex.phi_sd[p]) <= 5 * c * h * h);
    }
}

TEST_CASE("example 1 at a coarse resolution") {
    const Example ex = example1(64);
    const LgprResult r = run_lgpr(ex.phi0, LgprOptions{});
    const RunMetrics m = example1_metrics(ex, r);
    const double h = ex.grid.h;
    CHECK(m.E_L <= 5 * h * h * h);
    CHECK(m.E_G < 0.05);
    CHECK(m.E_S < 0.05);
    CHECK(m.E_f < 0.2);
    CHECK(m.E_Sprime < 0.2);
    const double slack = h * (r.crossings.max_chi() - r.crossings.min_chi());
    CHECK(r.cost.f.values().minCoeff() >= r.crossings.min_chi() - slack);
    CHECK(r.cost.f.values().maxCoeff() <= r.crossings.max_chi() + slack);
}

TEST_CASE("example 3 initialisation") {
    const Example ex = example3(32);
    REQUIRE(ex.chi_nodes.has_value());
    const LgprResult r = run_lgpr_with_chi(ex.phi0, *ex.chi_nodes, LgprOptions{});
    const RunMetrics m = example3_metrics(r);
    CHECK(m.E_L < 5e-3);
    CHECK(m.E_G < 5e-2);
    CHECK(std::isnan(m.E_f));
}

TEST_CASE("direct fast-sweeping solution of the cost equation") {
    const Example ex = circle_const(64, 2.0);
    const LgprResult r = run_lgpr(ex.phi0, LgprOptions{});
    const EikonalResult e = direct_cost_solution(r, ex.phi0);
    for (std::size_t p = 0; p < ex.grid.size(); ++p)
        if (std::abs(ex.phi_sd[p]) < 3 * ex.grid.h)
            CHECK(std::abs(e.u[p] - r.phi.u[p]) <= 10 * 2.0 * ex.grid.h * ex.grid.h);
}

TEST_CASE("run verb is deterministic") {
    const fs::path root = fs::temp_directory_path() / "lgpr_test_pipeline";
    fs::remove_all(root);
    ExperimentConfig cfg;
    apply_setting(cfg, "preset", "ex1");
    apply_setting(cfg, "n", "32");
    apply_setting(cfg, "outputs", "fields,crossings,residuals,metrics,forces");
    std::ostringstream log;
    for (const char* d : {"a", "b"}) {
        cfg.out = (root / d).string();
        run_verb(cfg, log);
    }
    int files = 0;
    for (const auto& e : fs::directory_iterator(root / "a")) {
        const fs::path other = root / "b" / e.path().filename();
        REQUIRE(fs::exists(other));
        if (e.path().filename() == "manifest.txt")
            continue;
        CHECK(slurp(e.path()) == slurp(other));
        ++files;
    }
    CHECK(files >= 5);
    const std::string m = slurp(root / "a" / "manifest.txt");
    CHECK(m.find("phi.sweeps") != std::string::npos);
    CHECK(m.find("phi.residual") != std::string::npos);
    CHECK(m.find("tol") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(exit_code_for(ConfigError("x")) == 2);
    CHECK(exit_code_for(IoError("x")) == 4);
    CHECK(exit_code_for(DivergenceError("x", {})) == 3);
    CHECK(exit_code_for(GeometryError("x")) == 3);
    CHECK(exit_code_for(std::runtime_error("x")) == 1);
}
