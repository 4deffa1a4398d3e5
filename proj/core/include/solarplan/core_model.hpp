#ifndef SOLARPLAN_CORE_MODEL_HPP
#define SOLARPLAN_CORE_MODEL_HPP

#include <string>
#include <vector>

namespace solarplan {

using Matrix = std::vector<std::vector<double>>;  // m rows (plants) x T columns (periods)

// Per-period cost and capacity data for one candidate plant.
struct PeriodParams {
    double op_cost = 0.0;        // operational cost, currency per kWh
    double transfer_cost = 0.0;  // transmission cost, currency per kWh
    double excess_cost = 0.0;    // surplus-power penalty, currency per kWh
    double cap_min = 0.0;        // minimum production, kW
    double cap_max = 0.0;        // maximum production, kW
    double demand = 0.0;         // nominal demand, kW
};

struct PlantSpec {
    std::string id;
    double setup_cost = 0.0;  // one-time build cost
    std::vector<PeriodParams> periods;
};

// Literal applies the capacity bounds to Y*Z exactly as written, so an
// unselected plant with cap_min > 0 makes the instance infeasible and its
// surplus is -demand. Rectified gates both bounds and surplus by selection.
enum class DispatchMode { Literal, Rectified };

struct PlanProblem {
    std::vector<PlantSpec> plants;
    int horizon = 0;             // T, number of periods
    int required_count = 0;      // exact number of plants to select
    double discount_rate = 0.0;  // per-period rate, must be > -1; no default is meaningful
    DispatchMode mode = DispatchMode::Rectified;
    bool allow_shortage = false;  // rectified only: permit production below demand

    std::size_t plant_count() const { return plants.size(); }
};

struct PlanSolution {
    std::vector<int> selected;           // 0/1 per plant
    Matrix production;                   // Z, kWh
    Matrix surplus;                      // K, kWh
    double objective = 0.0;              // total discounted cost
    std::vector<double> per_plant_cost;  // each plant's contribution to objective
};

// Rooftop photovoltaic model inputs. interest and lifetime share one period
// unit; the formulas combine them directly.
struct PvParams {
    double interest = 0.0;        // per-period rate I > 0
    int lifetime = 0;             // T, periods
    double op_cost = 0.0;         // Q, currency per period
    double panel_price = 0.0;     // C, currency per panel
    double consumption = 0.0;     // A, W per year
    double panel_capacity = 0.0;  // B, W per panel
};

// A broken data invariant, reported as a value rather than thrown.
struct Violation {
    std::string rule;   // e.g. "capacity-bounds", "plant-count"
    int plant = -1;     // 0-based plant index, -1 for problem-level
    int period = -1;    // 0-based period index, -1 when not period-specific
    std::string detail;

    std::string format() const;
};

// (1+rate)^{-t}. Throws std::domain_error for rate <= -1.
double discount_factor(double rate, int t);

// beta = (1 - (1+I)^{-T}) / (I*(I+1)), the present-value multiplier shared
// by the photovoltaic cost model and the model linkage.
// Throws std::domain_error for interest <= 0.
double annuity_factor(const PvParams& params);
double annuity_factor(double interest, int lifetime);

// Every broken invariant in the problem, one entry each. Total: never throws
// on a structurally well-formed PlanProblem.
std::vector<Violation> validate_problem(const PlanProblem& problem);

std::vector<Violation> validate_pv_params(const PvParams& params);

}  // namespace solarplan

#endif
