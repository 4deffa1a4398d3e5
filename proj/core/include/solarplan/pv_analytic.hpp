#ifndef SOLARPLAN_PV_ANALYTIC_HPP
#define SOLARPLAN_PV_ANALYTIC_HPP

#include "solarplan/core_model.hpp"

namespace solarplan {

// Closed-form optimum of the rooftop photovoltaic cost model. The cost is a
// convex parabola in per-panel output whose stationary point is negative;
// z_star is its magnitude, which is what published tables report.
struct PvResult {
    double z_stationary = 0.0;  // signed stationary point, < 0
    double z_star = 0.0;        // |z_stationary|
    double f_star = 0.0;        // cost at the stationary point, < 0
    double beta = 0.0;          // annuity factor
    double panels = 0.0;        // consumption / panel_capacity, real-valued
};

struct PanelCount {
    double fractional = 0.0;  // consumption / panel_capacity
    long long purchase = 0;   // ceiling: whole panels to buy
};

// Total lifetime cost at per-panel output z:
//   (A*C*Q*z)/B + (A*Q*z^2 / (2B)) * beta
double pv_cost(const PvParams& params, double z);

// Derivative of pv_cost in z: (A*C*Q)/B + (A*Q*z/B) * beta.
double pv_stationary_residual(const PvParams& params, double z);

// Stationary point z = -C/beta, its magnitude, and the optimal cost
// -(A*C^2*Q*I*(I+1)) / (2B*(1-(1+I)^{-T})).
PvResult pv_optimal_output(const PvParams& params);

// consumption / panel_capacity, real plus ceiling purchase count.
// Throws std::domain_error for panel_capacity <= 0.
PanelCount panels_needed(double consumption, double panel_capacity);

}  // namespace solarplan

#endif
