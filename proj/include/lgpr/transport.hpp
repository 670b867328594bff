#pragma once

#include <Eigen/Core>

#include <optional>
#include <vector>

#include "lgpr/grid.hpp"
#include "lgpr/interface.hpp"
#include "lgpr/reinit.hpp"

namespace lgpr {

enum class Stepper { GaussSeidel, TvdRk2 };

/// f_tau + grad d . grad f = 0 with f = chi on the zero set of phi_sd.
struct TransportProblem {
    ScalarField phi_sd;              // converged signed distance
    CrossingSet crossings;           // crossings of phi_sd carrying chi
    SolverParams params;
    Stepper stepper = Stepper::GaussSeidel;
    std::optional<NodeMask> active;  // banded solve; outside keeps the initial fill
    std::optional<ScalarField> initial;
};

struct DirectionField {
    ScalarField x;
    ScalarField y;
};

/// Normalised upwind characteristic direction of d = sgn(phi) phi at (i,j).
Eigen::Vector2d upwind_direction(const ScalarField& phi_sd, const SubcellInfo& subcell, int i, int j,
                                 double epsilon);

DirectionField upwind_directions(const ScalarField& phi_sd, const SubcellInfo& subcell, double epsilon);

/// One-sided ENO2 derivative of f whose neighbour on `side` is replaced by the
/// interface crossing and its chi. Throws if no crossing sits on that side.
double boundary_modified_eno_f(const ScalarField& f, const CrossingSet& crossings, int i, int j, Axis a, Side side);

/// L_T(f) = -((eta^x)^+ D^-_x f - (eta^x)^- D^+_x f + (eta^y)^+ D^-_y f - (eta^y)^- D^+_y f).
ScalarField transport_operator(const ScalarField& f, const DirectionField& eta, const CrossingSet& crossings);

/// Nearest-crossing chi propagated by one pass of the four sweep orders.
ScalarField initial_cost_fill(const CrossingSet& crossings, const Grid2D& grid);

struct TransportResult {
    ScalarField f;
    std::vector<double> residual_history;  // max |L_T| per sweep (or step)
    int sweeps = 0;
    double residual = 0.0;
    bool converged = false;
};

TransportResult extend_cost(const TransportProblem& problem);

} // namespace lgpr
