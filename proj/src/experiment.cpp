#include "lgpr/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "lgpr/expression.hpp"
#include "lgpr/field_io.hpp"
#include "lgpr/force.hpp"

namespace lgpr {

namespace {

ParametricCurve config_curve(const ExperimentConfig& cfg) {
    if (!cfg.curve_file.empty())
        return read_curve_csv(cfg.curve_file);
    return curves::by_name(cfg.curve);
}

VectorFn numeric_gradient(PointFn fn) {
    return [fn](double x, double y) {
        const double e = 1e-6;
        return Eigen::Vector2d((fn(x + e, y) - fn(x - e, y)) / (2 * e), (fn(x, y + e) - fn(x, y - e)) / (2 * e));
    };
}

bool wants(const ExperimentConfig& cfg, const char* what) { return cfg.outputs.count(what) > 0; }

std::string path_in(const ExperimentConfig& cfg, const std::string& file) {
    return (std::filesystem::path(cfg.out) / file).string();
}

void prepare_out(const ExperimentConfig& cfg) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.out, ec);
    if (ec)
        throw IoError("cannot create output directory '" + cfg.out + "': " + ec.message());
}

Manifest base_manifest(const ExperimentConfig& cfg, const std::string& verb, const Grid2D* g) {
    Manifest m;
    m.emplace_back("verb", verb);
    for (const auto& s : to_settings(cfg))
        m.push_back(s);
    if (g) {
        m.emplace_back("grid.nx", std::to_string(g->nx));
        m.emplace_back("grid.ny", std::to_string(g->ny));
        m.emplace_back("grid.h", format_double(g->h));
    }
    return m;
}

void add_run(Manifest& m, const LgprResult& r) {
    m.emplace_back("distance.sweeps", std::to_string(r.distance.sweeps));
    m.emplace_back("distance.residual", format_double(r.distance.residual));
    m.emplace_back("cost.sweeps", std::to_string(r.cost.sweeps));
    m.emplace_back("cost.residual", format_double(r.cost.residual));
    m.emplace_back("phi.sweeps", std::to_string(r.phi.sweeps));
    m.emplace_back("phi.residual", format_double(r.phi.residual));
    m.emplace_back("crossings", std::to_string(r.crossings.crossings.size()));
}

void add_metrics(Manifest& m, const RunMetrics& e) {
    m.emplace_back("E_L", format_double(e.E_L));
    m.emplace_back("E_G", format_double(e.E_G));
    m.emplace_back("E_S", format_double(e.E_S));
    m.emplace_back("E_f", format_double(e.E_f));
    m.emplace_back("E_Sprime", format_double(e.E_Sprime));
}

LgprResult execute(const Example& ex, const LgprOptions& o) {
    return ex.chi_nodes ? run_lgpr_with_chi(ex.phi0, *ex.chi_nodes, o) : run_lgpr(ex.phi0, o);
}

RunMetrics metrics_for(const ExperimentConfig& cfg, const Example& ex, const LgprResult& r) {
    if (ex.name == "ex3")
        return example3_metrics(r);
    if (ex.chi_nodes) {
        // Curve initialisation without an analytic oracle: distance to the curve.
        const CurveProjector proj(config_curve(cfg));
        RunMetrics m;
        for (const auto& c : find_crossings(r.phi.u).crossings)
            m.E_L = std::max(m.E_L, proj.project(c.position, 1e-12).distance);
        m.E_G = m.E_S = stretch_error(find_crossings(r.phi.u), ex.chi_target);
        m.E_f = m.E_Sprime = std::nan("");
        return m;
    }
    return example1_metrics(ex, r);
}

void write_run(const ExperimentConfig& cfg, const Example& ex, const LgprResult& r, Manifest& m) {
    if (wants(cfg, "fields")) {
        write_field_csv(path_in(cfg, "phi0.csv"), ex.phi0);
        write_field_csv(path_in(cfg, "distance.csv"), r.distance.u);
        write_field_csv(path_in(cfg, "cost.csv"), r.cost.f);
        write_field_csv(path_in(cfg, "phi.csv"), r.phi.u);
    }
    if (wants(cfg, "crossings")) {
        write_crossings_csv(path_in(cfg, "crossings_phi0.csv"), find_crossings(ex.phi0));
        write_crossings_csv(path_in(cfg, "crossings_phi.csv"), find_crossings(r.phi.u));
    }
    if (wants(cfg, "residuals")) {
        write_residuals_csv(path_in(cfg, "residuals_distance.csv"), r.distance.residual_history);
        write_residuals_csv(path_in(cfg, "residuals_cost.csv"), r.cost.residual_history);
        write_residuals_csv(path_in(cfg, "residuals_phi.csv"), r.phi.residual_history);
    }
    if (wants(cfg, "forces")) {
        const ElasticModel model{cfg.K, cfg.delta_cells};
        write_force_csv(path_in(cfg, "force_phi0.csv"), elastic_force(ex.phi0, model));
        write_force_csv(path_in(cfg, "force_phi.csv"), elastic_force(r.phi.u, model));
    }
    add_run(m, r);
    if (wants(cfg, "metrics"))
        add_metrics(m, metrics_for(cfg, ex, r));
}

void report(std::ostream& log, const Manifest& m) {
    for (const auto& [k, v] : m)
        log << k << " = " << v << '\n';
}

} // namespace

Example build_example(const ExperimentConfig& cfg, const Grid2D& grid, bool for_init) {
    if (cfg.preset == "ex1")
        return example1(grid);
    if (cfg.preset == "ex3")
        return example3(grid);
    if (cfg.preset == "circle-const") {
        double c = 1.0;
        if (!cfg.chi.empty()) {
            const Expression e(cfg.chi);
            if (!e.is_constant())
                throw ConfigError("circle-const needs a constant chi");
            c = e(0.0, 0.0);
        }
        if (!(c > 0.0))
            throw ConfigError("circle-const needs chi > 0");
        return circle_const(grid, c);
    }

    const ParametricCurve curve = config_curve(cfg);
    Example ex;
    ex.name = "curve";
    ex.grid = grid;
    if (for_init) {
        const CurveInit init = init_from_curve(curve, grid, 3.0 * grid.h);
        ex.phi0 = init.phi_sd;
        ex.phi_sd = init.phi_sd;
        ex.chi_nodes = init.chi;
        if (!cfg.chi.empty()) {
            const Expression e(cfg.chi);
            for (int j = 0; j < grid.ny; ++j)
                for (int i = 0; i < grid.nx; ++i)
                    (*ex.chi_nodes)(i, j) = e(grid.x(i), grid.y(j));
        }
        const CurveProjector proj(curve);
        ex.chi_target = [proj](double x, double y) {
            const Projection p = proj.project({x, y}, 1e-12);
            return proj.curve().tangent(p.xi).norm();
        };
        if (!cfg.chi.empty()) {
            const Expression e(cfg.chi);
            ex.chi_target = [e](double x, double y) { return e(x, y); };
        }
        ex.grad_chi = numeric_gradient(ex.chi_target);
        return ex;
    }
    const Expression e(cfg.chi.empty() ? "1" : cfg.chi);
    ex.phi_sd = signed_distance(curve, grid);
    ex.phi0 = ex.phi_sd;
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const double v = e(grid.x(i), grid.y(j));
            if (!(v > 0.0))
                throw ConfigError("chi must be positive on the grid");
            ex.phi0(i, j) *= v;
        }
    ex.chi_target = [e](double x, double y) { return e(x, y); };
    ex.grad_chi = numeric_gradient(ex.chi_target);
    return ex;
}

LgprOptions lgpr_options(const ExperimentConfig& cfg, const Example& ex) {
    LgprOptions o;
    o.params = cfg.solver;
    o.stepper = cfg.stepper;
    if (cfg.band) {
        // The tube comes from a first-order distance estimate of phi0.
        const CrossingSet set = find_crossings(ex.phi0);
        const EikonalResult est = solve_eikonal(seeded_problem(set, ScalarField(ex.grid, 1.0), ex.phi0));
        // residuals are taken over the whole tube
        o.active = band_mask(est.u, cfg.band->gamma);
    }
    return o;
}

void run_verb(const ExperimentConfig& cfg, std::ostream& log) {
    const Grid2D g = cfg.grid();
    const bool init_path = cfg.preset == "ex3";
    const Example ex = build_example(cfg, g, init_path);
    prepare_out(cfg);
    const LgprResult r = execute(ex, lgpr_options(cfg, ex));
    Manifest m = base_manifest(cfg, "run", &g);
    write_run(cfg, ex, r, m);
    write_manifest(path_in(cfg, "manifest.txt"), m);
    report(log, m);
}

void init_verb(const ExperimentConfig& cfg, std::ostream& log) {
    if (cfg.preset == "ex1" || cfg.preset == "circle-const")
        throw ConfigError("init needs a curve: preset ex3 or curve");
    const Grid2D g = cfg.grid();
    const Example ex = build_example(cfg, g, true);
    prepare_out(cfg);
    const LgprResult r = execute(ex, lgpr_options(cfg, ex));
    Manifest m = base_manifest(cfg, "init", &g);
    if (wants(cfg, "fields"))
        write_field_csv(path_in(cfg, "chi_samples.csv"), *ex.chi_nodes);
    write_run(cfg, ex, r, m);
    write_manifest(path_in(cfg, "manifest.txt"), m);
    report(log, m);
}

void study_verb(const ExperimentConfig& cfg, std::ostream& log) {
    cfg.validate();
    const auto d = cfg.resolved_domain();
    int base = cfg.preset == "ex1" ? 64 : 32;
    if (cfg.n)
        base = *cfg.n;
    else if (cfg.h)
        base = static_cast<int>(std::lround((d[1] - d[0]) / *cfg.h));
    prepare_out(cfg);

    const char* names[5] = {"E_L", "E_G", "E_S", "E_f", "E_Sprime"};
    std::vector<ConvergenceStudy> studies(5);
    std::string csv = "h,E_L,E_G,E_S,E_f,E_Sprime\n";
    Manifest m = base_manifest(cfg, "study", nullptr);
    for (int k = 0; k < cfg.rungs; ++k) {
        ExperimentConfig rung = cfg;
        rung.n = base << k;
        rung.h.reset();
        const Grid2D g = rung.grid();
        const Example ex = build_example(rung, g, cfg.preset == "ex3");
        const LgprResult r = execute(ex, lgpr_options(rung, ex));
        const RunMetrics e = metrics_for(rung, ex, r);
        const double vals[5] = {e.E_L, e.E_G, e.E_S, e.E_f, e.E_Sprime};
        csv += format_double(g.h);
        for (int q = 0; q < 5; ++q) {
            csv += "," + format_double(vals[q]);
            if (std::isfinite(vals[q]))
                studies[q].ladder.emplace_back(g.h, vals[q]);
        }
        csv += "\n";
        log << "rung n=" << *rung.n << " h=" << format_double(g.h) << " E_L=" << format_double(e.E_L)
            << " E_G=" << format_double(e.E_G) << '\n';
        m.emplace_back("rung" + std::to_string(k) + ".n", std::to_string(*rung.n));
        m.emplace_back("rung" + std::to_string(k) + ".phi.sweeps", std::to_string(r.phi.sweeps));
    }
    std::string orders;
    for (int q = 0; q < 5; ++q) {
        if (studies[q].ladder.size() < 2)
            continue;
        const double slope = fit_order(studies[q]);
        const std::string key = std::string("order_") + (names[q] + 2);
        orders += key + "=" + format_double(slope) + "\n";
        m.emplace_back(key, format_double(slope));
    }
    {
        std::ofstream os(path_in(cfg, "study.csv"));
        if (!(os << csv))
            throw IoError("write failed for study.csv");
        std::ofstream ob(path_in(cfg, "study_orders.txt"));
        if (!(ob << orders))
            throw IoError("write failed for study_orders.txt");
    }
    write_manifest(path_in(cfg, "manifest.txt"), m);
    log << csv << orders;
}

void force_verb(const ExperimentConfig& cfg, const std::string& field_path, std::ostream& log) {
    const ElasticModel model{cfg.K, cfg.delta_cells};
    model.validate();
    prepare_out(cfg);
    if (!field_path.empty()) {
        const ScalarField phi = read_field_csv(field_path);
        const ForceField F = elastic_force(phi, model);
        write_force_csv(path_in(cfg, "force.csv"), F);
        Manifest m = base_manifest(cfg, "force", &phi.grid());
        m.emplace_back("field", field_path);
        m.emplace_back("max_abs_force", format_double(std::max(F.Fx.values().abs().maxCoeff(),
                                                               F.Fy.values().abs().maxCoeff())));
        write_manifest(path_in(cfg, "manifest.txt"), m);
        report(log, m);
        return;
    }
    const Grid2D g = cfg.grid();
    const Example ex = build_example(cfg, g, cfg.preset == "ex3");
    const LgprResult r = execute(ex, lgpr_options(cfg, ex));
    const ForceField F0 = elastic_force(ex.phi0, model);
    const ForceField F1 = elastic_force(r.phi.u, model);
    write_force_csv(path_in(cfg, "force_phi0.csv"), F0);
    write_force_csv(path_in(cfg, "force_phi.csv"), F1);
    const double dmax = std::max((F0.Fx.values() - F1.Fx.values()).abs().maxCoeff(),
                                 (F0.Fy.values() - F1.Fy.values()).abs().maxCoeff());
    const double fmax = std::max(F0.Fx.values().abs().maxCoeff(), F0.Fy.values().abs().maxCoeff());
    Manifest m = base_manifest(cfg, "force", &g);
    add_run(m, r);
    m.emplace_back("max_force_difference", format_double(dmax));
    m.emplace_back("max_force_phi0", format_double(fmax));
    write_manifest(path_in(cfg, "manifest.txt"), m);
    report(log, m);
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e))
        return 2;
    if (dynamic_cast<const IoError*>(&e))
        return 4;
    if (dynamic_cast<const Error*>(&e))
        return 3;
    return 1;
}

} // namespace lgpr
