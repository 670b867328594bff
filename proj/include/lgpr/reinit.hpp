#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "lgpr/grid.hpp"
#include "lgpr/interface.hpp"

namespace lgpr {

struct SolverParams {
    double cfl = 0.5;             // C in k_ij = C min(h, delta)
    double tol = 1e-10;           // residual tolerance, scaled by the largest cost in relax_to_steady
    int max_sweeps = 40000;
    double epsilon = 1e-7;        // regularisation of the characteristic direction
    // Residual is measured only where |u| is below this (infinity: everywhere).
    double measure_band = std::numeric_limits<double>::infinity();
    // Anderson mixing over 4-sweep cycles once the cycle residual drops
    // below anderson_start; depth 0 gives the plain Gauss-Seidel iteration.
    int anderson_depth = 8;
    double anderson_start = 1e-3;
    // false: return the last iterate with converged == false instead of throwing.
    bool throw_on_cap = true;

    void validate() const;
};

/// Godunov numerical Hamiltonian for sgn(u0)(|grad u| - g).
/// a,b are D_x^-, D_x^+ and c,d are D_y^-, D_y^+.
double godunov_hamiltonian(double s, double a, double b, double c, double d, double g);

struct OneSidedDifferences {
    double xm = 0.0, xp = 0.0, ym = 0.0, yp = 0.0;
};

/// ENO2 one-sided differences of u at (i,j); sides whose edge crosses the
/// zero set of u0 use the stored subcell offset against an interface value 0.
/// A side with no neighbour (grid edge) comes back as 0.
OneSidedDifferences subcell_modified_differences(const ScalarField& u, const SubcellInfo& u0_subcell, int i, int j);

/// k = C min(h, offsets present at (i,j)).
double local_timestep(const SubcellInfo& subcell, double h, double C, int i, int j);

/// u_tau + sgn(u0)(|grad u| - g) = 0 relaxed to steady state.
class ReinitProblem {
public:
    /// `active` restricts the update (banded solve); nodes outside keep u0.
    ReinitProblem(ScalarField u0, ScalarField g, SolverParams params, std::optional<NodeMask> active = std::nullopt);

    const ScalarField& u0() const { return u0_; }
    const ScalarField& g() const { return g_; }
    const ScalarField& sign() const { return sign_; }
    const SubcellInfo& subcell() const { return subcell_; }
    const SolverParams& params() const { return params_; }
    const std::optional<NodeMask>& active() const { return active_; }
    double c1() const { return c1_; }
    double c2() const { return c2_; }

private:
    ScalarField u0_;
    ScalarField g_;
    ScalarField sign_;
    SubcellInfo subcell_;
    SolverParams params_;
    std::optional<NodeMask> active_;
    double c1_ = 0.0;
    double c2_ = 0.0;
};

struct RelaxResult {
    ScalarField u;
    std::vector<double> residual_history;  // max |H| per sweep
    int sweeps = 0;
    double residual = 0.0;
    bool converged = false;
};

/// Godunov Hamiltonian at every node for the current iterate (0 on frozen nodes).
ScalarField hamiltonian_residual(const ReinitProblem& problem, const ScalarField& u);

/// Gauss-Seidel pseudo-time relaxation, cycling the four sweep orders.
/// Throws DivergenceError after max_sweeps, NumericError on NaN.
RelaxResult relax_to_steady(const ReinitProblem& problem);

/// Same, starting from `initial` instead of u0 (sign and offsets still from u0).
RelaxResult relax_to_steady(const ReinitProblem& problem, const ScalarField& initial);

} // namespace lgpr
