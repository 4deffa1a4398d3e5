#include "solarplan/linkage.hpp"

#include <cmath>
#include <stdexcept>

namespace solarplan {

double breakeven_output(const PlanProblem& problem, const PlanSolution& solution) {
    const int m = static_cast<int>(problem.plants.size());
    double surplus_term = 0.0;
    double setup_term = 0.0;
    double op_term = 0.0;
    for (int j = 0; j < m; ++j) {
        if (!solution.selected[j]) continue;
        setup_term += problem.plants[j].setup_cost;
        for (int t = 1; t <= problem.horizon; ++t) {
            const PeriodParams& p = problem.plants[j].periods[t - 1];
            const double k = solution.surplus[j][t - 1];
            surplus_term += p.excess_cost * k * k / 2.0 * discount_factor(problem.discount_rate, t);
            op_term += p.op_cost;
        }
    }
    if (op_term == 0.0)
        throw std::domain_error(
            "breakeven_output: selected plants have zero total operational cost rate");
    return (-surplus_term - setup_term) / op_term;
}

double output_given_panels(double n, double panel_price, double op_cost, double f_target,
                           double beta) {
    if (!(n > 0.0)) throw std::domain_error("output_given_panels: panel count must be > 0");
    if (!(op_cost > 0.0)) throw std::domain_error("output_given_panels: op_cost must be > 0");
    if (!(beta > 0.0)) throw std::domain_error("output_given_panels: beta must be > 0");
    const double linear = n * panel_price * op_cost;
    const double discriminant = linear * linear + 2.0 * f_target * n * op_cost * beta;
    if (discriminant < 0.0)
        throw std::domain_error("output_given_panels: negative discriminant, no real solution");
    return (-linear + std::sqrt(discriminant)) / (n * op_cost * beta);
}

LinkResult panel_count_match(double z_target, double panel_price, double op_cost, double f_target,
                             double beta) {
    const double shifted = beta * z_target + panel_price;
    const double denom = op_cost * (shifted * shifted - panel_price * panel_price);
    if (denom == 0.0)
        throw std::domain_error("panel_count_match: degenerate parameters, no finite panel count");

    LinkResult r;
    r.z_breakeven = z_target;
    r.n_star = 2.0 * f_target * beta / denom;
    if (!(r.n_star > 0.0))
        throw std::domain_error("panel_count_match: no positive panel count solves the match");
    r.n_star_ceil = static_cast<long long>(std::ceil(r.n_star));

    // Squaring can introduce an extraneous root; back-substitute to reject it.
    const double z_back = output_given_panels(r.n_star, panel_price, op_cost, f_target, beta);
    r.residual = std::fabs(z_back - z_target);
    if (r.residual > 1e-9 * std::max(1.0, std::fabs(z_target)))
        throw std::runtime_error("panel_count_match: extraneous root, back-substitution residual " +
                                 std::to_string(r.residual));
    return r;
}

}  // namespace solarplan
