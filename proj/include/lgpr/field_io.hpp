#pragma once

#include <map>
#include <string>
#include <vector>

#include "lgpr/force.hpp"
#include "lgpr/grid.hpp"
#include "lgpr/interface.hpp"

namespace lgpr {

/// `i,j,x,y,value` with 17 significant digits.
void write_field_csv(const std::string& path, const ScalarField& f);
/// Inverse of write_field_csv; the grid is rebuilt from the node coordinates.
ScalarField read_field_csv(const std::string& path);

/// `x,y,gx,gy,chi`.
void write_crossings_csv(const std::string& path, const CrossingSet& set);
/// `i,j,x,y,Fx,Fy`, only nodes with nonzero force.
void write_force_csv(const std::string& path, const ForceField& F);
/// `sweep,residual`.
void write_residuals_csv(const std::string& path, const std::vector<double>& history);

/// Ordered key = value lines.
using Manifest = std::vector<std::pair<std::string, std::string>>;
void write_manifest(const std::string& path, const Manifest& m);

std::string format_double(double v);

} // namespace lgpr
