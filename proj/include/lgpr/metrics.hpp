#pragma once

#include <Eigen/Core>

#include <functional>
#include <utility>
#include <vector>

#include "lgpr/force.hpp"
#include "lgpr/interface.hpp"

namespace lgpr {

using PointFn = std::function<double(double, double)>;
using VectorFn = std::function<Eigen::Vector2d(double, double)>;

/// Index pairs (before, after) matched by grid edge. Throws PairingError
/// unless both sets cross exactly the same edges.
std::vector<std::pair<std::size_t, std::size_t>> pair_crossings(const CrossingSet& before, const CrossingSet& after);

/// max over paired crossings of the larger coordinate displacement.
double location_error(const CrossingSet& before, const CrossingSet& after);

/// max |residual(x_p, y_p)| over the crossings (analytic curve oracle).
double location_residual(const CrossingSet& crossings, const PointFn& residual);

struct GradientErrors {
    double E_G = 0.0;  // max |grad phi0(p0) - grad phi(p)|
    double E_S = 0.0;  // max ||grad phi(p)| - target(p)|
};

GradientErrors gradient_and_stretch_errors(const CrossingSet& before, const CrossingSet& after,
                                           const PointFn& target_chi);

/// max ||grad phi(p)| - target(p)| without a reference field.
double stretch_error(const CrossingSet& crossings, const PointFn& target_chi);

struct TangentialErrors {
    double E_f = 0.0;      // max |Tf(p0) - T chi(p0)|
    double E_Sprime = 0.0; // max |n.Hess phi.(I-nn)(p) - n.Hess phi0.(I-nn)(p0)|
};

/// `tq_before` must carry Tf (computed with the extended cost), both lists in
/// the order of their crossing sets. `grad_chi` is the ambient gradient of
/// the analytic stretch.
TangentialErrors tangential_errors(const CrossingSet& before, const std::vector<TangentialQuantities>& tq_before,
                                   const CrossingSet& after, const std::vector<TangentialQuantities>& tq_after,
                                   const VectorFn& grad_chi);

struct ConvergenceStudy {
    std::vector<std::pair<double, double>> ladder;  // (h, error)
};

/// Least-squares slope of log(error) against log(h).
double fit_order(const ConvergenceStudy& study);

} // namespace lgpr
