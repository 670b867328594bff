#include "lgpr/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "lgpr/errors.hpp"
#include "lgpr/expression.hpp"
#include "lgpr/field_io.hpp"

namespace lgpr {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_number(key, trim(item)));
    return out;
}

} // namespace

double parse_number(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || trim(value.substr(used)) != "" || !std::isfinite(v))
        throw ConfigError("'" + key + "': expected a number, got '" + value + "'");
    return v;
}

int parse_int(const std::string& key, const std::string& value) {
    const double v = parse_number(key, value);
    if (v != std::floor(v) || std::abs(v) > 1e9)
        throw ConfigError("'" + key + "': expected an integer, got '" + value + "'");
    return static_cast<int>(v);
}

std::array<double, 4> ExperimentConfig::resolved_domain() const {
    if (domain)
        return *domain;
    if (preset == "ex3")
        return {-2.5, 2.5, -2.5, 2.5};
    if (preset == "curve" && (curve == "ellipse21" || !curve_file.empty()))
        return {-2.5, 2.5, -2.5, 2.5};
    return {-1.5, 1.5, -1.5, 1.5};
}

Grid2D ExperimentConfig::grid() const {
    validate();
    const auto d = resolved_domain();
    const double wx = d[1] - d[0], wy = d[3] - d[2];
    double step = 0.0;
    if (n)
        step = wx / *n;
    else
        step = *h;
    const double cx = wx / step, cy = wy / step;
    const long nx = std::lround(cx), ny = std::lround(cy);
    if (std::abs(cx - nx) > 1e-6 * cx || std::abs(cy - ny) > 1e-6 * cy)
        throw ConfigError("grid spacing does not divide the domain into whole cells");
    return Grid2D(static_cast<int>(nx) + 1, static_cast<int>(ny) + 1, step, d[0], d[2]);
}

void ExperimentConfig::validate() const {
    static const std::set<std::string> presets{"ex1", "ex3", "circle-const", "curve"};
    if (!presets.count(preset))
        throw ConfigError("unknown preset '" + preset + "' (ex1, ex3, circle-const, curve)");
    if (n.has_value() == h.has_value())
        throw ConfigError("exactly one of n and h must be given");
    if (n && *n < 3)
        throw ConfigError("n must be at least 3");
    if (h && !(*h > 0.0))
        throw ConfigError("h must be positive");
    const auto d = resolved_domain();
    if (!(d[1] > d[0] && d[3] > d[2]))
        throw ConfigError("domain must be nonempty");
    solver.validate();
    if (band)
        band->validate();
    if (!(K > 0.0) || delta_cells < 1)
        throw ConfigError("elastic model needs K > 0 and delta_cells >= 1");
    if (rungs < 2)
        throw ConfigError("a study needs at least two rungs");
    if (!chi.empty())
        Expression check(chi);
    static const std::set<std::string> known{"fields", "crossings", "residuals", "metrics", "forces"};
    for (const auto& o : outputs)
        if (!known.count(o))
            throw ConfigError("unknown output '" + o + "'");
}

std::vector<Setting> parse_config_text(const std::string& text) {
    std::vector<Setting> out;
    std::istringstream is(text);
    std::string line;
    int no = 0;
    while (std::getline(is, line)) {
        ++no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(no) + ": empty key");
        out.emplace_back(key, trim(line.substr(eq + 1)));
    }
    return out;
}

std::vector<Setting> read_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw IoError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config_text(ss.str());
}

void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& v) {
    if (key == "preset") {
        c.preset = v;
    } else if (key == "curve") {
        c.curve = v;
    } else if (key == "curve_file") {
        c.curve_file = v;
    } else if (key == "domain") {
        const auto d = parse_list(key, v);
        if (d.size() != 4)
            throw ConfigError("domain: expected xmin,xmax,ymin,ymax");
        c.domain = std::array<double, 4>{d[0], d[1], d[2], d[3]};
    } else if (key == "n") {
        c.n = parse_int(key, v);
        c.h.reset();
    } else if (key == "h") {
        c.h = parse_number(key, v);
        c.n.reset();
    } else if (key == "chi") {
        Expression check(v);
        c.chi = v;
    } else if (key == "tol") {
        c.solver.tol = parse_number(key, v);
    } else if (key == "cfl") {
        c.solver.cfl = parse_number(key, v);
    } else if (key == "max_sweeps") {
        c.solver.max_sweeps = parse_int(key, v);
    } else if (key == "epsilon") {
        c.solver.epsilon = parse_number(key, v);
    } else if (key == "anderson") {
        c.solver.anderson_depth = parse_int(key, v);
    } else if (key == "stepper") {
        if (v == "gs")
            c.stepper = Stepper::GaussSeidel;
        else if (v == "rk2")
            c.stepper = Stepper::TvdRk2;
        else
            throw ConfigError("stepper: expected gs or rk2");
    } else if (key == "band") {
        const auto b = parse_list(key, v);
        if (b.size() != 3)
            throw ConfigError("band: expected alpha,beta,gamma");
        const double ct = c.band ? c.band->c_tol : 0.2;
        c.band = BandSpec{b[0], b[1], b[2], ct};
    } else if (key == "band.alpha" || key == "band.beta" || key == "band.gamma" || key == "band.c_tol") {
        if (!c.band)
            c.band = BandSpec{};
        const double x = parse_number(key, v);
        if (key == "band.alpha")
            c.band->alpha = x;
        else if (key == "band.beta")
            c.band->beta = x;
        else if (key == "band.gamma")
            c.band->gamma = x;
        else
            c.band->c_tol = x;
    } else if (key == "K") {
        c.K = parse_number(key, v);
    } else if (key == "delta_cells") {
        c.delta_cells = parse_int(key, v);
    } else if (key == "rungs") {
        c.rungs = parse_int(key, v);
    } else if (key == "out") {
        c.out = v;
    } else if (key == "outputs") {
        c.outputs.clear();
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!trim(item).empty())
                c.outputs.insert(trim(item));
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

std::vector<Setting> to_settings(const ExperimentConfig& c) {
    std::vector<Setting> s;
    const auto d = c.resolved_domain();
    s.emplace_back("preset", c.preset);
    if (c.preset == "curve")
        s.emplace_back(c.curve_file.empty() ? "curve" : "curve_file", c.curve_file.empty() ? c.curve : c.curve_file);
    s.emplace_back("domain", format_double(d[0]) + "," + format_double(d[1]) + "," + format_double(d[2]) + "," +
                                 format_double(d[3]));
    if (c.n)
        s.emplace_back("n", std::to_string(*c.n));
    if (c.h)
        s.emplace_back("h", format_double(*c.h));
    if (!c.chi.empty())
        s.emplace_back("chi", c.chi);
    s.emplace_back("tol", format_double(c.solver.tol));
    s.emplace_back("cfl", format_double(c.solver.cfl));
    s.emplace_back("max_sweeps", std::to_string(c.solver.max_sweeps));
    s.emplace_back("epsilon", format_double(c.solver.epsilon));
    s.emplace_back("anderson", std::to_string(c.solver.anderson_depth));
    s.emplace_back("stepper", c.stepper == Stepper::GaussSeidel ? "gs" : "rk2");
    if (c.band) {
        s.emplace_back("band.alpha", format_double(c.band->alpha));
        s.emplace_back("band.beta", format_double(c.band->beta));
        s.emplace_back("band.gamma", format_double(c.band->gamma));
        s.emplace_back("band.c_tol", format_double(c.band->c_tol));
    }
    s.emplace_back("K", format_double(c.K));
    s.emplace_back("delta_cells", std::to_string(c.delta_cells));
    return s;
}

} // namespace lgpr
