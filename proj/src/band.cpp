#include "lgpr/band.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lgpr {

void BandSpec::validate() const {
    if (!(alpha > 0.0 && alpha < beta && beta < gamma))
        throw ConfigError("BandSpec: need 0 < alpha < beta < gamma");
    if (!(c_tol > 0.0 && c_tol < 1.0))
        throw ConfigError("BandSpec: c_tol must lie in (0,1)");
}

BandSpec BandSpec::cells(double a, double b, double g, double h, double c_tol) {
    BandSpec s{a * h, b * h, g * h, c_tol};
    s.validate();
    return s;
}

NodeMask band_mask(const ScalarField& phi_sd, double width) {
    NodeMask m(phi_sd.grid(), false);
    bool any = false;
    for (std::size_t p = 0; p < phi_sd.size(); ++p)
        if (std::abs(phi_sd[p]) < width) {
            m[p] = true;
            any = true;
        }
    if (!any)
        throw BandError("band_mask: no node within the requested width");
    return m;
}

double cutoff(double y, double beta, double gamma) {
    if (!(beta > 0.0 && beta < gamma))
        throw ConfigError("cutoff: need 0 < beta < gamma");
    const double a = std::abs(y);
    if (a <= beta)
        return 1.0;
    if (a > gamma)
        return 0.0;
    const double w = gamma - beta;
    return (a - gamma) * (a - gamma) * (2.0 * a + gamma - 3.0 * beta) / (w * w * w);
}

Tube make_tube(const ScalarField& phi_sd, const CrossingSet& crossings, const BandSpec& band) {
    band.validate();
    Tube t{phi_sd, band_mask(phi_sd, band.gamma), {}, {}};
    for (const auto& c : crossings.crossings) {
        t.positions.push_back(c.position);
        t.chi.push_back(c.chi);
    }
    if (t.positions.empty())
        throw BandError("make_tube: no crossings to record");
    return t;
}

double bilinear(const ScalarField& f, const Eigen::Vector2d& x) {
    const Grid2D& g = f.grid();
    const double s = std::clamp((x.x() - g.x0) / g.h, 0.0, g.nx - 1.0);
    const double t = std::clamp((x.y() - g.y0) / g.h, 0.0, g.ny - 1.0);
    const int i = std::min(static_cast<int>(s), g.nx - 2);
    const int j = std::min(static_cast<int>(t), g.ny - 2);
    const double u = s - i, v = t - j;
    return (1 - u) * (1 - v) * f(i, j) + u * (1 - v) * f(i + 1, j) + (1 - u) * v * f(i, j + 1) +
           u * v * f(i + 1, j + 1);
}

ReinitDecision needs_reinit(const CrossingSet& current, const Tube& tube, const BandSpec& band) {
    band.validate();
    for (const auto& c : current.crossings)
        if (band.gamma - std::abs(bilinear(tube.phi_sd, c.position)) < band.alpha)
            return {true, "tube-encroachment"};
    for (const auto& c : current.crossings) {
        std::size_t best = 0;
        double d2 = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < tube.positions.size(); ++k) {
            const double d = (tube.positions[k] - c.position).squaredNorm();
            if (d < d2) {
                d2 = d;
                best = k;
            }
        }
        const double ratio = c.grad.norm() / tube.chi[best];
        if (ratio < 1.0 - band.c_tol || ratio > 1.0 + band.c_tol)
            return {true, "gradient-drift"};
    }
    return {};
}

} // namespace lgpr
