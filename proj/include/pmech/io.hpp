#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "pmech/dynamics.hpp"
#include "pmech/fock.hpp"
#include "pmech/kernels.hpp"

namespace pmech {

// "%.17g"
std::string format_double(double v);
// "q^1 p^0 hbar^0" (indexed variables when n > 1)
std::string monomial_label(const Monomial& m);

// Columns q, p, re, im; p varies fastest.
void write_state_csv(std::ostream& os, const StateVector& v);
// Columns t, then one column per monomial seen anywhere on the trajectory; a
// monomial with a non-zero imaginary part anywhere also gets an "<label> im" column.
void write_trajectory_csv(std::ostream& os, const Trajectory<Symbol>& traj);
void write_limit_scan_csv(std::ostream& os, const std::vector<LimitScanRow>& rows);
void write_resonance_csv(std::ostream& os, const std::vector<ResonanceSample>& rows);
// Static line chart with axes, polyline and labels.
void write_resonance_svg(std::ostream& os, const std::vector<ResonanceSample>& rows,
                         const std::string& title);

// Largest coefficient difference between two trajectories sampled at the same times.
double max_coefficient_difference(const Trajectory<Symbol>& a, const Trajectory<Symbol>& b);

}  // namespace pmech
