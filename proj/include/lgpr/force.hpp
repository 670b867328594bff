#pragma once

#include <Eigen/Core>

#include <vector>

#include "lgpr/grid.hpp"
#include "lgpr/interface.hpp"

namespace lgpr {

struct Energy {
    double E = 0.0;
    double dE = 0.0;
    double d2E = 0.0;
};

/// E(chi) = (K/2)(chi - 1)^2.
Energy hooke(double chi, double K);

struct ElasticModel {
    double K = 5.0;
    int delta_width_cells = 3;

    void validate() const;
    Energy energy(double chi) const { return hooke(chi, K); }
};

/// 1{|phi| <= m h} (1 + cos(pi phi / (m h))) / (2 m h).
double smoothed_delta(double phi, double h, int m = 3);

struct ForceField {
    ScalarField Fx;
    ScalarField Fy;
};

/// Nodes on the outer ring get zero force.
/// F = kappa E'(|grad phi|) grad phi delta_h + E''(|grad phi|) (n.Hess.(I - n n)) |grad phi| delta_h.
ForceField elastic_force(const ScalarField& phi, const ElasticModel& model);

/// (I - n n) v.
Eigen::Vector2d tangential_gradient(const Eigen::Vector2d& v, const Eigen::Vector2d& n);

/// n . H . (I - n n), the tangential derivative of |grad phi| along the interface.
Eigen::Vector2d stretch_derivative(const Eigen::Matrix2d& H, const Eigen::Vector2d& n);

struct TangentialQuantities {
    Eigen::Vector2d normal{0, 0};
    Eigen::Vector2d Tf{0, 0};                  // zero when no f was supplied
    Eigen::Vector2d stretch_derivative{0, 0};
};

/// Per crossing (same order as `crossings`): normal from the crossing gradient,
/// Hessian of phi blended from the two edge endpoints, Tf from f when given.
std::vector<TangentialQuantities> interface_tangential_quantities(const ScalarField& phi, const CrossingSet& crossings,
                                                                  const ScalarField* f = nullptr);

} // namespace lgpr
