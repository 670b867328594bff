#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lgpr/band.hpp"
#include "lgpr/reinit.hpp"
#include "lgpr/transport.hpp"

namespace lgpr {

struct ExperimentConfig {
    std::string preset = "ex1";          // ex1, ex3, circle-const, curve
    std::string curve = "circle";        // named curve for the curve preset
    std::string curve_file;              // xi,x,y samples, overrides `curve`
    std::optional<std::array<double, 4>> domain;  // xmin, xmax, ymin, ymax
    std::optional<int> n;                // cells along x
    std::optional<double> h;
    std::string chi;                     // expression over x, y, xi, theta
    SolverParams solver;
    Stepper stepper = Stepper::GaussSeidel;
    std::optional<BandSpec> band;
    double K = 5.0;
    int delta_cells = 3;
    int rungs = 4;
    std::string out = "out";
    std::set<std::string> outputs{"fields", "crossings", "residuals", "metrics"};

    /// Domain: explicit, else the preset default.
    std::array<double, 4> resolved_domain() const;
    /// Grid from the domain and exactly one of n / h.
    Grid2D grid() const;
    void validate() const;
};

using Setting = std::pair<std::string, std::string>;

/// `key = value` lines; `#` starts a comment. Throws ConfigError with the line number.
std::vector<Setting> parse_config_text(const std::string& text);
std::vector<Setting> read_config_file(const std::string& path);

/// Applies one setting; a later n clears h and vice versa.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

std::vector<Setting> to_settings(const ExperimentConfig& cfg);

double parse_number(const std::string& key, const std::string& value);
int parse_int(const std::string& key, const std::string& value);

} // namespace lgpr
