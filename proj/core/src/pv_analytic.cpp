#include "solarplan/pv_analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace solarplan {

double pv_cost(const PvParams& params, double z) {
    const double beta = annuity_factor(params);
    const double a = params.consumption;
    const double b = params.panel_capacity;
    const double q = params.op_cost;
    const double c = params.panel_price;
    return (a * c * q * z) / b + (a * q * z * z) / (2.0 * b) * beta;
}

double pv_stationary_residual(const PvParams& params, double z) {
    const double beta = annuity_factor(params);
    return (params.consumption * params.panel_price * params.op_cost) / params.panel_capacity +
           (params.consumption * params.op_cost * z / params.panel_capacity) * beta;
}

PvResult pv_optimal_output(const PvParams& params) {
    PvResult r;
    r.beta = annuity_factor(params);
    r.z_stationary = -params.panel_price / r.beta;
    r.z_star = std::fabs(r.z_stationary);
    const double denom = 1.0 - std::pow(1.0 + params.interest, -params.lifetime);
    r.f_star = -(params.consumption * params.panel_price * params.panel_price * params.op_cost *
                 params.interest * (params.interest + 1.0)) /
               (2.0 * params.panel_capacity * denom);
    r.panels = params.consumption / params.panel_capacity;
    return r;
}

PanelCount panels_needed(double consumption, double panel_capacity) {
    if (!(panel_capacity > 0.0))
        throw std::domain_error("panels_needed: panel_capacity must be > 0");
    PanelCount c;
    c.fractional = consumption / panel_capacity;
    c.purchase = static_cast<long long>(std::ceil(c.fractional));
    return c;
}

}  // namespace solarplan
