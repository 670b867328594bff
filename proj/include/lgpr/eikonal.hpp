#pragma once

#include "lgpr/grid.hpp"
#include "lgpr/interface.hpp"

namespace lgpr {

/// |grad u| = g solved directly by fast sweeping from frozen seed values.
struct EikonalProblem {
    ScalarField g;
    NodeMask frozen;
    ScalarField frozen_values;  // unsigned seed values, read where frozen
    ScalarField sign;           // applied to the unsigned result
    double tol = 1e-13;
    int max_cycles = 500;
};

/// First-order Godunov local solve from the smaller horizontal (a) and
/// vertical (b) neighbour values.
double sweep_update(double a, double b, double g, double h);

struct EikonalResult {
    ScalarField u;  // sign * unsigned solution
    int cycles = 0;
};

EikonalResult solve_eikonal(const EikonalProblem& problem);

/// Seeds every endpoint of a crossing edge with g times its distance to the
/// tangent line through the crossing (minimum over adjacent crossings).
EikonalProblem seeded_problem(const CrossingSet& crossings, const ScalarField& g, const ScalarField& sign_source);

} // namespace lgpr
