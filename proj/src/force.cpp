#include "lgpr/force.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lgpr {

Energy hooke(double chi, double K) {
    if (!(chi > 0.0))
        throw NumericError("hooke: stretch must be positive");
    return {0.5 * K * (chi - 1.0) * (chi - 1.0), K * (chi - 1.0), K};
}

void ElasticModel::validate() const {
    if (!(K > 0.0))
        throw ConfigError("ElasticModel: K must be positive");
    if (delta_width_cells < 1)
        throw ConfigError("ElasticModel: delta width must be at least one cell");
}

double smoothed_delta(double phi, double h, int m) {
    if (!(h > 0.0))
        throw NumericError("smoothed_delta: h must be positive");
    const double w = m * h;
    if (std::abs(phi) > w)
        return 0.0;
    return (1.0 + std::cos(std::numbers::pi * phi / w)) / (2.0 * w);
}

Eigen::Vector2d tangential_gradient(const Eigen::Vector2d& v, const Eigen::Vector2d& n) {
    return v - n * n.dot(v);
}

Eigen::Vector2d stretch_derivative(const Eigen::Matrix2d& H, const Eigen::Vector2d& n) {
    const Eigen::Matrix2d P = Eigen::Matrix2d::Identity() - n * n.transpose();
    return (n.transpose() * H * P).transpose();
}

ForceField elastic_force(const ScalarField& phi, const ElasticModel& model) {
    model.validate();
    require_finite(phi, "elastic_force");
    const Grid2D& g = phi.grid();
    const double h = g.h;
    const double w = model.delta_width_cells * h;

    ScalarField nx(g), ny(g), gn(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const Eigen::Vector2d gr = centered_gradient(phi, i, j);
            const double n = std::max(gr.norm(), 1e-8);
            nx(i, j) = gr.x() / n;
            ny(i, j) = gr.y() / n;
            gn(i, j) = gr.norm();
        }

    ForceField F{ScalarField(g), ScalarField(g)};
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double p = phi(i, j);
            if (std::abs(p) > w)
                continue;
            // no centred curvature on the outer ring; those nodes keep zero force
            if (i < 1 || j < 1 || i > g.nx - 2 || j > g.ny - 2)
                continue;
            const double chi = gn(i, j);
            if (chi < 0.1)
                throw NumericError("elastic_force: degenerate gradient inside the delta support");
            const double kappa = -((nx(i + 1, j) - nx(i - 1, j)) + (ny(i, j + 1) - ny(i, j - 1))) / (2.0 * h);
            const Eigen::Vector2d n(nx(i, j), ny(i, j));
            const Eigen::Vector2d gr = n * chi;
            const Energy e = model.energy(chi);
            const double d = smoothed_delta(p, h, model.delta_width_cells);
            const Eigen::Vector2d v =
                kappa * e.dE * gr * d + e.d2E * stretch_derivative(centered_hessian(phi, i, j), n) * chi * d;
            F.Fx(i, j) = v.x();
            F.Fy(i, j) = v.y();
        }
    return F;
}

std::vector<TangentialQuantities> interface_tangential_quantities(const ScalarField& phi, const CrossingSet& set,
                                                                  const ScalarField* f) {
    const Grid2D& g = phi.grid();
    std::vector<TangentialQuantities> out;
    out.reserve(set.crossings.size());
    for (const auto& c : set.crossings) {
        const double gn = c.grad.norm();
        if (!(gn > 1e-8))
            throw NumericError("interface_tangential_quantities: degenerate gradient at a crossing");
        TangentialQuantities q;
        q.normal = c.grad / gn;
        const int ia = c.edge.axis == Axis::X ? c.edge.i - 1 : c.edge.i;
        const int ja = c.edge.axis == Axis::Y ? c.edge.j - 1 : c.edge.j;
        const double wa = c.delta / g.h;
        auto hess = [&](int i, int j) {
            return centered_hessian(phi, std::clamp(i, 1, g.nx - 2), std::clamp(j, 1, g.ny - 2));
        };
        const Eigen::Matrix2d H = wa * hess(ia, ja) + (1.0 - wa) * hess(c.edge.i, c.edge.j);
        q.stretch_derivative = stretch_derivative(H, q.normal);
        if (f)
            q.Tf = tangential_gradient(interface_gradient(*f, c.edge, c.delta), q.normal);
        out.push_back(q);
    }
    return out;
}

} // namespace lgpr
