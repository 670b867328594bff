#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "lgpr/config.hpp"
#include "lgpr/experiment.hpp"

namespace {

struct Flags {
    std::string config;
    std::vector<lgpr::Setting> settings;  // in the order they are applied
};

void add_setting(CLI::App* app, Flags& flags, const std::string& flag, const std::string& key,
                 const std::string& help) {
    app->add_option_function<std::string>(
        flag, [&flags, key](const std::string& v) { flags.settings.emplace_back(key, v); }, help);
}

void add_common(CLI::App* app, Flags& flags) {
    app->set_help_flag("--help", "print this help");
    app->add_option("--config", flags.config, "key = value config file (flags override it)");
    add_setting(app, flags, "--preset", "preset", "ex1, ex3, circle-const or curve");
    add_setting(app, flags, "--n", "n", "cells along x");
    add_setting(app, flags, "--h", "h", "grid spacing");
    add_setting(app, flags, "--domain", "domain", "xmin,xmax,ymin,ymax");
    add_setting(app, flags, "--chi", "chi", "stretch expression in x, y, xi, theta");
    add_setting(app, flags, "--curve", "curve", "circle, trefoil or ellipse21");
    add_setting(app, flags, "--curve-file", "curve_file", "CSV of xi,x,y samples");
    add_setting(app, flags, "--tol", "tol", "steady-state residual tolerance");
    add_setting(app, flags, "--cfl", "cfl", "pseudo-time CFL constant");
    add_setting(app, flags, "--max-sweeps", "max_sweeps", "sweep cap per solve");
    add_setting(app, flags, "--anderson", "anderson", "Anderson mixing depth (0 = plain sweeps)");
    add_setting(app, flags, "--stepper", "stepper", "gs or rk2 for the cost extension");
    add_setting(app, flags, "--band", "band", "alpha,beta,gamma tube widths");
    add_setting(app, flags, "--K", "K", "stretching stiffness");
    add_setting(app, flags, "--outputs", "outputs", "fields,crossings,residuals,metrics,forces");
    add_setting(app, flags, "--out", "out", "output directory");
    app->add_option_function<std::vector<std::string>>(
        "--set",
        [&flags](const std::vector<std::string>& kv) {
            for (const auto& s : kv) {
                const auto eq = s.find('=');
                if (eq == std::string::npos)
                    throw CLI::ValidationError("--set", "expected key=value");
                flags.settings.emplace_back(s.substr(0, eq), s.substr(eq + 1));
            }
        },
        "extra key=value settings");
}

lgpr::ExperimentConfig resolve(const Flags& flags) {
    lgpr::ExperimentConfig cfg;
    if (!flags.config.empty())
        for (const auto& [k, v] : lgpr::read_config_file(flags.config))
            lgpr::apply_setting(cfg, k, v);
    bool n_flag = false, h_flag = false;
    for (const auto& [k, v] : flags.settings) {
        n_flag |= k == "n";
        h_flag |= k == "h";
        lgpr::apply_setting(cfg, k, v);
    }
    if (n_flag && h_flag)
        throw lgpr::ConfigError("give either --n or --h, not both");
    if (!cfg.n && !cfg.h)
        cfg.n = 64;
    cfg.validate();
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Locally gradient-preserving level set reinitialization"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print this help");

    Flags run_f, init_f, study_f, force_f;
    std::string field;
    auto* run = app.add_subcommand("run", "reinitialize a preset or curve field");
    add_common(run, run_f);
    auto* init = app.add_subcommand("init", "build a level set from a parametric curve");
    add_common(init, init_f);
    auto* study = app.add_subcommand("study", "convergence ladder with fitted orders");
    add_common(study, study_f);
    study->add_option_function<std::string>(
        "--rungs", [&study_f](const std::string& v) { study_f.settings.emplace_back("rungs", v); },
        "number of grid levels");
    auto* force = app.add_subcommand("force", "elastic force before and after reinitialization");
    add_common(force, force_f);
    force->add_option("--field", field, "field CSV to evaluate instead of a preset run");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*run)
            lgpr::run_verb(resolve(run_f), std::cout);
        else if (*init)
            lgpr::init_verb(resolve(init_f), std::cout);
        else if (*study)
            lgpr::study_verb(resolve(study_f), std::cout);
        else if (*force)
            lgpr::force_verb(resolve(force_f), field, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "lgpr: " << e.what() << '\n';
        return lgpr::exit_code_for(e);
    }
    return 0;
}
