#include "lgpr/interface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lgpr {

SubcellInfo::SubcellInfo(const Grid2D& g)
    : grid_(g), offsets_(g.size(), std::array<double, 4>{0, 0, 0, 0}),
      crossing_(g.size(), std::array<int, 4>{-1, -1, -1, -1}) {}

void SubcellInfo::set(int i, int j, Axis a, Side s, double delta, int crossing_id) {
    if (!(delta > 0.0))
        return;  // crossing sits on the node itself; that node is frozen at 0
    const std::size_t p = grid_.index(i, j);
    const int k = slot(a, s);
    // Two crossings can only share a slot through degenerate zero nodes; keep the nearer.
    if (offsets_[p][k] > 0.0 && offsets_[p][k] <= delta)
        return;
    offsets_[p][k] = std::min(delta, grid_.h);
    crossing_[p][k] = crossing_id;
}

double CrossingSet::min_chi() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& c : crossings)
        m = std::min(m, c.chi);
    return m;
}

double CrossingSet::max_chi() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& c : crossings)
        m = std::max(m, c.chi);
    return m;
}

bool edge_crosses(double phi_a, double phi_b) {
    if (phi_a == 0.0 && phi_b == 0.0)
        return true;
    return phi_a * phi_b <= 0.0;
}

double crossing_offset(double phi_a, double phi_b, double a_second) {
    if (phi_a == 0.0 && phi_b == 0.0)
        return 0.5;
    const double D = (a_second / 2 - phi_b - phi_a) * (a_second / 2 - phi_b - phi_a) - 4 * phi_b * phi_a;
    if (D < 0.0 || !std::isfinite(D))
        throw GeometryError("crossing_offset: negative discriminant");
    const double diff = phi_b - phi_a;
    const double denom = diff + sgn(diff) * std::sqrt(D);
    const double theta = 0.5 + ((phi_b + phi_a) - a_second / 4) / denom;
    return std::clamp(theta, 0.0, 1.0);
}

double edge_curvature(const ScalarField& phi, const EdgeKey& e) {
    const int ia = e.axis == Axis::X ? e.i - 1 : e.i;
    const int ja = e.axis == Axis::Y ? e.j - 1 : e.j;
    const double h = phi.grid().h;
    return h * h * minmod(second_diff_or_zero(phi, e.i, e.j, e.axis), second_diff_or_zero(phi, ia, ja, e.axis));
}

Eigen::Vector2d interface_gradient(const ScalarField& phi, const EdgeKey& e, double delta) {
    const Grid2D& g = phi.grid();
    const int ia = e.axis == Axis::X ? e.i - 1 : e.i;
    const int ja = e.axis == Axis::Y ? e.j - 1 : e.j;
    if (!g.contains(ia, ja) || !g.contains(e.i, e.j))
        throw StencilError("interface_gradient: edge outside grid");
    const double wa = delta / g.h;
    return wa * centered_gradient(phi, ia, ja) + (1.0 - wa) * centered_gradient(phi, e.i, e.j);
}

namespace {

void add_crossing(CrossingSet& out, const ScalarField& locate, const ScalarField& grad_src, const EdgeKey& e) {
    const Grid2D& g = locate.grid();
    const auto [pa, pb] = edge_nodes(g, e);
    const double a = locate[pa];
    const double b = locate[pb];
    if (!edge_crosses(a, b))
        return;
    const double theta = crossing_offset(a, b, edge_curvature(locate, e));
    InterfaceCrossing c;
    c.edge = e;
    c.delta = theta * g.h;
    c.position = {g.x(e.i), g.y(e.j)};
    c.position[static_cast<int>(e.axis)] -= c.delta;
    c.grad = interface_gradient(grad_src, e, c.delta);
    c.chi = c.grad.norm();
    const int id = static_cast<int>(out.crossings.size());
    out.crossings.push_back(c);
    const int ia = e.axis == Axis::X ? e.i - 1 : e.i;
    const int ja = e.axis == Axis::Y ? e.j - 1 : e.j;
    out.subcell.set(e.i, e.j, e.axis, Side::Minus, c.delta, id);
    out.subcell.set(ia, ja, e.axis, Side::Plus, g.h - c.delta, id);
}

} // namespace

CrossingSet find_crossings(const ScalarField& locate, const ScalarField* gradient_source) {
    const ScalarField& src = gradient_source ? *gradient_source : locate;
    const Grid2D& g = locate.grid();
    if (!(src.grid() == g))
        throw Error("find_crossings: gradient source lives on another grid");
    CrossingSet out;
    out.subcell = SubcellInfo(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i)
            add_crossing(out, locate, src, {i, j, Axis::X});
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            add_crossing(out, locate, src, {i, j, Axis::Y});
    if (out.crossings.empty())
        throw GeometryError("find_crossings: level set has no sign change");
    return out;
}

void interpolate_chi(CrossingSet& set, const ScalarField& chi_nodes) {
    const Grid2D& g = chi_nodes.grid();
    for (auto& c : set.crossings) {
        const auto [pa, pb] = edge_nodes(g, c.edge);
        const double wa = c.delta / g.h;
        c.chi = wa * chi_nodes[pa] + (1.0 - wa) * chi_nodes[pb];
    }
}

} // namespace lgpr
