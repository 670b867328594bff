#pragma once

#include <Eigen/Core>

#include <functional>
#include <string>
#include <vector>

#include "lgpr/grid.hpp"

namespace lgpr {

/// Closed curve X(xi) with period, and its first two xi-derivatives.
struct ParametricCurve {
    std::function<Eigen::Vector2d(double)> point;
    std::function<Eigen::Vector2d(double)> tangent;
    std::function<Eigen::Vector2d(double)> second;  // may be empty
    double period = 2.0 * 3.14159265358979323846;
    std::string name;

    Eigen::Vector2d d2(double xi) const;
};

namespace curves {
/// Circle of given radius, X = R (cos xi, sin xi).
ParametricCurve circle(double radius = 1.0);
/// Unit circle traversed at unit speed over [0, 2 pi R).
ParametricCurve circle_arclength(double radius = 1.0);
/// r(theta) = 1 + 0.25 cos(3 theta), parameterised by theta.
ParametricCurve trefoil();
/// X = (2 cos xi, sin xi).
ParametricCurve ellipse21();
/// Trigonometric interpolant of uniformly spaced samples over one period.
ParametricCurve from_samples(const std::vector<double>& x, const std::vector<double>& y, double period);
/// `circle`, `trefoil`, `ellipse21`.
ParametricCurve by_name(const std::string& name);
} // namespace curves

/// Read a `xi,x,y` CSV of uniformly spaced samples (last sample excludes the period end).
ParametricCurve read_curve_csv(const std::string& path);

struct Projection {
    double xi = 0.0;
    Eigen::Vector2d point{0, 0};
    double distance = 0.0;
};

/// Nearest-point projection onto a closed curve: dense pre-sampling to
/// bracket, safeguarded Newton on (X(xi) - x) . X_xi(xi) = 0.
class CurveProjector {
public:
    explicit CurveProjector(ParametricCurve curve, int samples = 4096);

    /// Throws GeometryError when the refinement fails to converge.
    Projection project(const Eigen::Vector2d& x, double tol) const;
    const ParametricCurve& curve() const { return curve_; }

private:
    ParametricCurve curve_;
    std::vector<double> xi_;
    std::vector<double> px_, py_;
    double spacing_ = 0.0;
};

/// Positive inside: sign of -(x - z) x X_xi(xi_z) for a counter-clockwise curve.
double side_of(const ParametricCurve& c, const Eigen::Vector2d& x, const Projection& proj);

struct CurveInit {
    ScalarField phi_sd;   // signed distance (exact in the band, fast sweeping outside)
    ScalarField chi;      // |X_xi| at the projection; valid where in_band
    NodeMask in_band;
    ScalarField sign;
};

/// Exact projection in the band |d| < band_half_width, fast-sweeping distance
/// and flood-filled sign outside it.
CurveInit init_from_curve(const ParametricCurve& curve, const Grid2D& grid, double band_half_width);

/// Exact signed distance at every node (projection everywhere).
ScalarField signed_distance(const ParametricCurve& curve, const Grid2D& grid);

} // namespace lgpr
