#pragma once

#include <optional>
#include <string>

#include "lgpr/band.hpp"
#include "lgpr/curve.hpp"
#include "lgpr/eikonal.hpp"
#include "lgpr/metrics.hpp"
#include "lgpr/reinit.hpp"
#include "lgpr/transport.hpp"

namespace lgpr {

struct LgprOptions {
    SolverParams params;
    Stepper stepper = Stepper::GaussSeidel;
    std::optional<NodeMask> active;  // banded run: every stage frozen outside
};

struct LgprResult {
    RelaxResult distance;     // |grad u| = 1 against the sign pattern of phi0
    CrossingSet crossings;    // crossings of the distance field, chi attached
    TransportResult cost;     // extended cost f
    RelaxResult phi;          // |grad u| = f
};

/// Distance relaxation, crossing extraction with chi = |grad phi0|, cost
/// extension, then |grad phi| = f relaxation.
LgprResult run_lgpr(const ScalarField& phi0, const LgprOptions& opts);

/// Same stages with chi interpolated from nodal samples (curve initialisation).
LgprResult run_lgpr_with_chi(const ScalarField& phi_init, const ScalarField& chi_nodes, const LgprOptions& opts);

/// Direct fast-sweeping solution of |grad u| = f seeded from the crossings.
EikonalResult direct_cost_solution(const LgprResult& r, const ScalarField& sign_source);

/// Analytic test cases.
struct Example {
    std::string name;
    Grid2D grid;
    ScalarField phi0;
    ScalarField phi_sd;             // exact signed distance of the zero set
    PointFn chi_target;             // stretch prescribed on the interface
    VectorFn grad_chi;              // ambient gradient of chi_target
    std::optional<ScalarField> chi_nodes;  // initialisation samples
};

/// Trefoil r = 1 + 0.25 cos 3 theta, phi0 = sd exp(0.5 y); default grid [-1.5,1.5]^2.
Example example1(const Grid2D& grid);
Example example1(int cells);
/// Ellipse (2 cos xi, sin xi) from projection-band initialisation; default grid [-2.5,2.5]^2.
Example example3(const Grid2D& grid);
Example example3(int cells);
/// Unit circle, phi0 = c (1 - r^2) / 2; default grid [-1.5,1.5]^2.
Example circle_const(const Grid2D& grid, double c);
Example circle_const(int cells, double c);

/// Interfacial error metrics of a finished run against phi0.
struct RunMetrics {
    double E_L = 0.0, E_G = 0.0, E_S = 0.0, E_f = 0.0, E_Sprime = 0.0;
};
/// Crossings of phi0 and of the result paired by edge; chi_target and grad_chi
/// of the example supply E_S and T chi.
RunMetrics example1_metrics(const Example& ex, const LgprResult& r);
/// E_L = max |x^2/4 + y^2 - 1|, E_G = max ||grad phi| - sqrt(4 y^2 + x^2/4)|.
RunMetrics example3_metrics(const LgprResult& r);

} // namespace lgpr
