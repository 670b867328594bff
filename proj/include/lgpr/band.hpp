#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

#include "lgpr/grid.hpp"
#include "lgpr/interface.hpp"

namespace lgpr {

struct BandSpec {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double c_tol = 0.2;

    void validate() const;
    /// (a h, b h, g h).
    static BandSpec cells(double a, double b, double g, double h, double c_tol = 0.2);
};

/// Nodes with |phi_sd| < width. Throws BandError when none qualify.
NodeMask band_mask(const ScalarField& phi_sd, double width);

/// 1 for |y| <= beta, (|y| - gamma)^2 (2|y| + gamma - 3 beta) / (gamma - beta)^3 up to gamma, 0 beyond.
double cutoff(double y, double beta, double gamma);

/// Snapshot taken when the tube was built.
struct Tube {
    ScalarField phi_sd;
    NodeMask mask;
    std::vector<Eigen::Vector2d> positions;  // recorded crossings
    std::vector<double> chi;                 // their target stretch
};

Tube make_tube(const ScalarField& phi_sd, const CrossingSet& crossings, const BandSpec& band);

struct ReinitDecision {
    bool needed = false;
    std::string reason;  // "tube-encroachment", "gradient-drift" or empty
};

/// Bilinear interpolation of a field at a world point (clamped to the grid).
double bilinear(const ScalarField& f, const Eigen::Vector2d& x);

/// True when a current crossing comes within alpha of the tube edge, or its
/// gradient norm leaves [1 - c, 1 + c] times the nearest recorded chi.
ReinitDecision needs_reinit(const CrossingSet& current, const Tube& tube, const BandSpec& band);

} // namespace lgpr
