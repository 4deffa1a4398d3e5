#ifndef SOLARPLAN_PLANT_SOLVER_HPP
#define SOLARPLAN_PLANT_SOLVER_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "solarplan/core_model.hpp"

namespace solarplan {

// One plant-period at its cost-minimizing production level.
struct DispatchResult {
    double production = 0.0;   // Z, kWh
    double surplus = 0.0;      // K, kWh
    double period_cost = 0.0;  // discounted contribution to the objective
    bool feasible = true;
};

struct PlantCost {
    std::string id;
    double total = 0.0;  // setup cost plus discounted period costs; +inf when infeasible
    bool feasible = true;
    std::vector<DispatchResult> dispatch;
};

class InfeasibleProblem : public std::runtime_error {
public:
    InfeasibleProblem(std::string message, std::vector<int> blocking_plants)
        : std::runtime_error(std::move(message)), blocking(std::move(blocking_plants)) {}
    std::vector<int> blocking;  // 0-based plant indices
};

// Cheapest production level for one selected plant-period. The per-period
// cost is affine in Z with nonnegative slope, so the optimum sits at the
// lowest feasible Z: max(cap_min, demand) when shortage is disallowed,
// cap_min otherwise. Infeasibility is reported in the result, not thrown.
DispatchResult inner_optimal_dispatch(const PlantSpec& plant, int t, double discount_rate,
                                      DispatchMode mode, bool allow_shortage);

// setup_cost plus the sum of optimal discounted period costs, assuming the
// plant is selected. total is +inf iff any period is infeasible.
PlantCost plant_total_cost(const PlantSpec& plant, const PlanProblem& problem);

// Discounted cost contributed by a plant that is NOT selected. Zero in
// rectified mode. In literal mode the surplus balance forces K = -demand,
// and any period with cap_min > 0 makes non-selection infeasible.
DispatchResult unselected_dispatch(const PlantSpec& plant, int t, double discount_rate,
                                   DispatchMode mode);

// Exact solve: the objective separates across plants once the selection is
// fixed, so ranking plants by (selected cost - unselected cost) and taking
// the required_count cheapest is optimal. Ties break toward the lower plant
// index. Throws InfeasibleProblem naming the blocking plants.
PlanSolution solve_plan(const PlanProblem& problem);

// Exhaustive verification oracle: enumerates every selection of size
// required_count and grid-searches each plant-period's production range
// (grid points plus the analytic candidate endpoints). Refuses m > 12.
PlanSolution enumerate_oracle(const PlanProblem& problem, int grid_steps);

// Literal three-term objective evaluation on an arbitrary solution.
double evaluate_objective(const PlanProblem& problem, const PlanSolution& solution);

// Discounted objective contribution of one (plant, period) cell of a solution.
double cell_cost(const PlanProblem& problem, const PlanSolution& solution, int j, int t);

// Reports every violated constraint instance with indices and residual.
std::vector<Violation> check_feasibility(const PlanProblem& problem,
                                         const PlanSolution& solution);

}  // namespace solarplan

#endif
