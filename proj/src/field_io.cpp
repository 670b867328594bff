#include "lgpr/field_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lgpr {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os)
        throw IoError("cannot open '" + path + "' for writing");
    return os;
}

void check(const std::ofstream& os, const std::string& path) {
    if (!os)
        throw IoError("write failed for '" + path + "'");
}

} // namespace

std::string format_double(double v) {
    if (std::isnan(v))
        return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_field_csv(const std::string& path, const ScalarField& f) {
    auto os = open_out(path);
    const Grid2D& g = f.grid();
    os << "i,j,x,y,value\n";
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            os << i << ',' << j << ',' << format_double(g.x(i)) << ',' << format_double(g.y(j)) << ','
               << format_double(f(i, j)) << '\n';
    check(os, path);
}

ScalarField read_field_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw IoError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(is, line) || line.rfind("i,j,x,y,value", 0) != 0)
        throw IoError("'" + path + "': missing i,j,x,y,value header");
    struct Row {
        int i, j;
        double x, y, v;
    };
    std::vector<Row> rows;
    int nx = 0, ny = 0;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        Row r{};
        char c1, c2, c3, c4;
        std::istringstream ls(line);
        if (!(ls >> r.i >> c1 >> r.j >> c2 >> r.x >> c3 >> r.y >> c4 >> r.v) || c1 != ',' || c2 != ',' ||
            c3 != ',' || c4 != ',')
            throw IoError("'" + path + "': malformed row '" + line + "'");
        nx = std::max(nx, r.i + 1);
        ny = std::max(ny, r.j + 1);
        rows.push_back(r);
    }
    if (rows.size() != static_cast<std::size_t>(nx) * ny || nx < 2 || ny < 2)
        throw IoError("'" + path + "': rows do not form a complete grid");
    double x0 = 0, y0 = 0, x1 = 0;
    for (const auto& r : rows) {
        if (r.i == 0 && r.j == 0) {
            x0 = r.x;
            y0 = r.y;
        }
        if (r.i == nx - 1 && r.j == 0)
            x1 = r.x;
    }
    const Grid2D g(nx, ny, (x1 - x0) / (nx - 1), x0, y0);
    ScalarField f(g);
    for (const auto& r : rows)
        f(r.i, r.j) = r.v;
    return f;
}

void write_crossings_csv(const std::string& path, const CrossingSet& set) {
    auto os = open_out(path);
    os << "x,y,gx,gy,chi\n";
    for (const auto& c : set.crossings)
        os << format_double(c.position.x()) << ',' << format_double(c.position.y()) << ','
           << format_double(c.grad.x()) << ',' << format_double(c.grad.y()) << ',' << format_double(c.chi) << '\n';
    check(os, path);
}

void write_force_csv(const std::string& path, const ForceField& F) {
    auto os = open_out(path);
    const Grid2D& g = F.Fx.grid();
    os << "i,j,x,y,Fx,Fy\n";
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (F.Fx(i, j) != 0.0 || F.Fy(i, j) != 0.0)
                os << i << ',' << j << ',' << format_double(g.x(i)) << ',' << format_double(g.y(j)) << ','
                   << format_double(F.Fx(i, j)) << ',' << format_double(F.Fy(i, j)) << '\n';
    check(os, path);
}

void write_residuals_csv(const std::string& path, const std::vector<double>& history) {
    auto os = open_out(path);
    os << "sweep,residual\n";
    for (std::size_t k = 0; k < history.size(); ++k)
        os << k + 1 << ',' << format_double(history[k]) << '\n';
    check(os, path);
}

void write_manifest(const std::string& path, const Manifest& m) {
    auto os = open_out(path);
    for (const auto& [k, v] : m)
        os << k << " = " << v << '\n';
    check(os, path);
}

} // namespace lgpr
