#pragma once

#include <optional>
#include <string>

#include "mesh.hpp"

namespace fplate {

// Published benchmark values the studies compare against.  Lookups return
// nothing when a cell is not tabulated.

// f-FEM column of the manufactured-solution validation table (100*w).
std::optional<double> ref_validation_ffem(double alpha, double lf_frac);

// Convergence tables: nondimensional center deflection wbar for a CCCC plate
// under UDTL at a given dynamic rate.
std::optional<double> ref_convergence(Theory theory, double lf_frac, int rate,
                                      double alpha);

// Static response tables (UDTL, converged rates).
std::optional<double> ref_static(Theory theory, const std::string& bc,
                                 double lf_frac, double alpha);

// Fundamental-frequency tables and the first-eight-mode tables (mode is
// 0-based; modes above 0 are tabulated for Mindlin CCCC only).
std::optional<double> ref_modal(Theory theory, const std::string& bc,
                                double lf_frac, double alpha, int mode);

}  // namespace fplate
