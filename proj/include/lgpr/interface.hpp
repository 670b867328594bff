#pragma once

#include <Eigen/Core>

#include <array>
#include <optional>
#include <vector>

#include "lgpr/grid.hpp"

namespace lgpr {

/// A grid edge named by its larger-index endpoint: the edge joins (i,j) to
/// (i-1,j) for Axis::X and to (i,j-1) for Axis::Y.
struct EdgeKey {
    int i = 0;
    int j = 0;
    Axis axis = Axis::X;

    bool operator==(const EdgeKey&) const = default;
    auto operator<=>(const EdgeKey& o) const {
        return std::array{static_cast<int>(axis), j, i} <=> std::array{static_cast<int>(o.axis), o.j, o.i};
    }
};

/// Zero crossing of a level set function on a grid edge.
struct InterfaceCrossing {
    EdgeKey edge;
    double delta = 0.0;               // distance from the larger-index node, in [0,h]
    Eigen::Vector2d position{0, 0};   // world coordinates
    Eigen::Vector2d grad{0, 0};       // interpolated gradient at the crossing
    double chi = 0.0;                 // stretch value carried by the crossing
};

/// Per-node subcell offsets to neighbouring crossings (delta^{x-}, delta^{x+},
/// delta^{y-}, delta^{y+}) and the crossing each offset came from.
class SubcellInfo {
public:
    SubcellInfo() = default;
    explicit SubcellInfo(const Grid2D& g);

    static constexpr int slot(Axis a, Side s) { return 2 * static_cast<int>(a) + (s == Side::Plus ? 1 : 0); }

    const Grid2D& grid() const { return grid_; }

    std::optional<double> offset(int i, int j, Axis a, Side s) const {
        const double d = offsets_[grid_.index(i, j)][slot(a, s)];
        if (d > 0.0)
            return d;
        return std::nullopt;
    }
    // 0 when absent; raw access for the solver kernels.
    double raw_offset(std::size_t p, int slot_id) const { return offsets_[p][slot_id]; }
    int crossing_index(std::size_t p, int slot_id) const { return crossing_[p][slot_id]; }
    const std::array<double, 4>& offsets_at(std::size_t p) const { return offsets_[p]; }

    void set(int i, int j, Axis a, Side s, double delta, int crossing_id);

    bool any_at(std::size_t p) const {
        const auto& o = offsets_[p];
        return o[0] > 0 || o[1] > 0 || o[2] > 0 || o[3] > 0;
    }

private:
    Grid2D grid_;
    std::vector<std::array<double, 4>> offsets_;
    std::vector<std::array<int, 4>> crossing_;
};

struct CrossingSet {
    std::vector<InterfaceCrossing> crossings;
    SubcellInfo subcell;

    double min_chi() const;
    double max_chi() const;
};

/// Offset of the zero of the quadratic through phi_a (node i-1) and phi_b
/// (node i) with second difference a_second/h^2, measured from node b, as a
/// fraction of h. Clamped to [0,1].
double crossing_offset(double phi_a, double phi_b, double a_second);

/// h^2 minmod of the two nodal second differences along the edge.
double edge_curvature(const ScalarField& phi, const EdgeKey& e);

bool edge_crosses(double phi_a, double phi_b);

/// Linear blend of the centred-difference gradients at both edge endpoints.
Eigen::Vector2d interface_gradient(const ScalarField& phi, const EdgeKey& e, double delta);

/// Every sign-changing edge of `locate`, with gradients interpolated from
/// `gradient_source` (defaults to `locate`) and chi = |grad|.
CrossingSet find_crossings(const ScalarField& locate, const ScalarField* gradient_source = nullptr);

/// Same edges and offsets, chi taken by linear interpolation of nodal samples.
void interpolate_chi(CrossingSet& set, const ScalarField& chi_nodes);

/// Points of the edge's two endpoints: (i-1,j)/(i,j) or (i,j-1)/(i,j).
inline std::pair<std::size_t, std::size_t> edge_nodes(const Grid2D& g, const EdgeKey& e) {
    const std::size_t b = g.index(e.i, e.j);
    return {e.axis == Axis::X ? b - 1 : b - g.nx, b};
}

} // namespace lgpr
