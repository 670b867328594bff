#include "lgpr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace lgpr {

std::vector<std::pair<std::size_t, std::size_t>> pair_crossings(const CrossingSet& before, const CrossingSet& after) {
    if (before.crossings.size() != after.crossings.size())
        throw PairingError("pair_crossings: crossing counts differ (" + std::to_string(before.crossings.size()) +
                           " vs " + std::to_string(after.crossings.size()) + ")");
    std::map<EdgeKey, std::size_t> idx;
    for (std::size_t k = 0; k < after.crossings.size(); ++k)
        idx.emplace(after.crossings[k].edge, k);
    std::vector<std::pair<std::size_t, std::size_t>> out;
    out.reserve(before.crossings.size());
    for (std::size_t k = 0; k < before.crossings.size(); ++k) {
        const auto it = idx.find(before.crossings[k].edge);
        if (it == idx.end())
            throw PairingError("pair_crossings: crossing without a partner on the same edge");
        out.emplace_back(k, it->second);
    }
    return out;
}

double location_error(const CrossingSet& before, const CrossingSet& after) {
    double e = 0.0;
    for (const auto& [a, b] : pair_crossings(before, after)) {
        const Eigen::Vector2d d = before.crossings[a].position - after.crossings[b].position;
        e = std::max(e, d.cwiseAbs().maxCoeff());
    }
    return e;
}

double location_residual(const CrossingSet& set, const PointFn& residual) {
    double e = 0.0;
    for (const auto& c : set.crossings)
        e = std::max(e, std::abs(residual(c.position.x(), c.position.y())));
    return e;
}

GradientErrors gradient_and_stretch_errors(const CrossingSet& before, const CrossingSet& after,
                                           const PointFn& target_chi) {
    GradientErrors e;
    for (const auto& [a, b] : pair_crossings(before, after)) {
        const auto& ca = before.crossings[a];
        const auto& cb = after.crossings[b];
        e.E_G = std::max(e.E_G, (ca.grad - cb.grad).norm());
    }
    e.E_S = stretch_error(after, target_chi);
    return e;
}

double stretch_error(const CrossingSet& set, const PointFn& target_chi) {
    double e = 0.0;
    for (const auto& c : set.crossings)
        e = std::max(e, std::abs(c.grad.norm() - target_chi(c.position.x(), c.position.y())));
    return e;
}

TangentialErrors tangential_errors(const CrossingSet& before, const std::vector<TangentialQuantities>& tq_before,
                                   const CrossingSet& after, const std::vector<TangentialQuantities>& tq_after,
                                   const VectorFn& grad_chi) {
    if (tq_before.size() != before.crossings.size() || tq_after.size() != after.crossings.size())
        throw PairingError("tangential_errors: quantity lists do not match their crossing sets");
    TangentialErrors e;
    for (const auto& [a, b] : pair_crossings(before, after)) {
        const auto& p0 = before.crossings[a].position;
        const Eigen::Vector2d Tchi = tangential_gradient(grad_chi(p0.x(), p0.y()), tq_before[a].normal);
        e.E_f = std::max(e.E_f, (tq_before[a].Tf - Tchi).norm());
        e.E_Sprime = std::max(e.E_Sprime, (tq_after[b].stretch_derivative - tq_before[a].stretch_derivative).norm());
    }
    return e;
}

double fit_order(const ConvergenceStudy& study) {
    const auto& L = study.ladder;
    if (L.size() < 2)
        throw FitError("fit_order: need at least two ladder points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [h, err] : L) {
        if (!(h > 0.0) || !(err > 0.0) || !std::isfinite(err))
            throw FitError("fit_order: spacings and errors must be positive");
        const double x = std::log(h), y = std::log(err);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(L.size());
    const double den = n * sxx - sx * sx;
    if (!(std::abs(den) > 1e-300))
        throw FitError("fit_order: all spacings are equal");
    return (n * sxy - sx * sy) / den;
}

} // namespace lgpr
