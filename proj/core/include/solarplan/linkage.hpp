#ifndef SOLARPLAN_LINKAGE_HPP
#define SOLARPLAN_LINKAGE_HPP

#include "solarplan/core_model.hpp"
#include "solarplan/plant_solver.hpp"

namespace solarplan {

// The panel count at which the rooftop model's output formula reproduces a
// plant-model breakeven output.
struct LinkResult {
    double z_breakeven = 0.0;
    double n_star = 0.0;       // real-valued panel count
    long long n_star_ceil = 0; // whole panels to buy
    double residual = 0.0;     // |output_given_panels(n_star) - z_breakeven|
};

// Breakeven output derived from a solved plant instance:
//   z = (-sum_{j,t} H*K^2/2 * (1+i)^{-t} * Y  -  sum_j R*Y) / (sum_{j,t} NPW*Y)
// The surplus integral is taken from 0 to K_jt in closed form per
// plant-period and summed over periods. Throws std::domain_error when the
// denominator is zero.
double breakeven_output(const PlanProblem& problem, const PlanSolution& solution);

// Nonnegative root of (n*q*beta/2)*Z^2 + n*c*q*Z - f_target = 0:
//   Z = (-n*c*q + sqrt((n*c*q)^2 + 2*f_target*n*q*beta)) / (n*q*beta)
// Throws std::domain_error on a negative discriminant or invalid inputs.
double output_given_panels(double n, double panel_price, double op_cost, double f_target,
                           double beta);

// Closed-form solve of output_given_panels(N) = z_target:
//   N = 2*f_target*beta / (q*((beta*z_target + c)^2 - c^2))
// verified by back-substitution. Throws std::domain_error on the degenerate
// case (no finite N) and std::runtime_error on an extraneous root.
LinkResult panel_count_match(double z_target, double panel_price, double op_cost, double f_target,
                             double beta);

}  // namespace solarplan

#endif
