#pragma once

#include "cavity/kinematics.hpp"
#include "cavity/solver.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace cavity {

/// `x,y,psi` over the n x n lattice clipped to the closed triangle, y outer.
void write_grid_csv(std::ostream& out, const StreamFunction& psi, int n);

/// `trace_id,step,x,y,psi`
void write_streamlines_csv(std::ostream& out, const std::vector<Streamline>& lines, const StreamFunction& psi);

/// `x,y,class,speed`
void write_stagnation_csv(std::ostream& out, const std::vector<StagnationPoint>& points);

/// Header line followed by rows of equal length.
void write_table_csv(std::ostream& out, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

/// Shortest round-trip-safe text for a double (17 significant digits).
std::string format_real(double value);

}  // namespace cavity
