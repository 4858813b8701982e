#pragma once

#include <vector>

#include "radbif/shooting.hpp"
#include "report.hpp"

namespace radbif::cli {

/// Rows k = 0..kmax of (k, y_k, z_k, mu_k, nu_k); y_0, z_0, nu_0 are missing.
Document cmd_eigs(int kmax, double R);

/// T_{lambda,h}(h) for each h, with the four limits as metadata.
Document cmd_timemap(double lambda, const std::vector<double>& h_grid, double tol);

/// Trajectory (rho, w, w') at the integrator's step ends plus nodes,
/// segments, inequality and energy-identity summaries.
Document cmd_shoot(double lambda, double h0, double R, const Tolerances& tol);

/// Branch points over a geometric amplitude schedule plus the summary block.
Document cmd_branch(int k, int sign, double h0_min, double h0_max, int points, double R,
                    const Tolerances& tol);

/// Parse "a,b,c" into reals; an empty string is an empty grid.
std::vector<double> parse_real_list(const std::string& text);

}  // namespace radbif::cli
