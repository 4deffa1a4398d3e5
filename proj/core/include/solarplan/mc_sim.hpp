#ifndef SOLARPLAN_MC_SIM_HPP
#define SOLARPLAN_MC_SIM_HPP

#include <cstdint>

#include "solarplan/core_model.hpp"
#include "solarplan/plant_solver.hpp"
#include "solarplan/pv_analytic.hpp"

namespace solarplan {

// Independent-replication demand-uncertainty study: each replication draws a
// full demand matrix and re-solves the plant problem from scratch.
struct McConfig {
    PlanProblem base;
    Matrix demand_low;   // m x T, elementwise <= demand_high
    Matrix demand_high;  // m x T
    int replications = 1;
    std::uint64_t seed = 0;
};

struct ReplicationRecord {
    bool feasible = false;
    double objective = 0.0;
    double waste = 0.0;
    std::vector<int> selected;
};

struct McReport {
    double cost_mean = 0.0;
    double cost_stddev = 0.0;
    double cost_p5 = 0.0;
    double cost_p50 = 0.0;
    double cost_p95 = 0.0;
    double waste_rate_mean = 0.0;
    std::vector<double> selection_frequency;  // per plant, over feasible replications
    int infeasible_count = 0;
    int replications_run = 0;
    bool all_infeasible = false;  // statistics fields are meaningless when set
};

struct ComparisonReport {
    enum class Cheaper { Plant, Rooftop, Tie };
    double plan_cost = 0.0;
    double pv_cost_magnitude = 0.0;  // |f_star|
    Cheaper cheaper = Cheaper::Tie;
    double waste_rate = 0.0;
};

// Symmetric interval bounds nominal*(1 +/- spread), floored at zero.
McConfig make_mc_config(const PlanProblem& base, double spread, int replications,
                        std::uint64_t seed);

std::vector<Violation> validate_mc_config(const McConfig& config);

// One demand matrix for a replication. Each cell uses its own counter-based
// stream keyed by (seed, replication, plant, period), so the draw is
// independent of evaluation order and worker count. Zero-width intervals
// return the bound exactly.
Matrix sample_demand(const McConfig& config, int replication_index);

ReplicationRecord run_replication(const McConfig& config, int replication_index);

// Aggregates all replications. Statistics cover feasible replications only;
// infeasible ones are counted. Bit-identical output for identical
// (config, seed) at any worker count.
McReport run_simulation(const McConfig& config, int workers = 1);

// Total positive surplus over total production across selected plants;
// zero when nothing is produced.
double waste_rate(const PlanSolution& solution);

ComparisonReport compare_models(const PlanProblem& problem, const PlanSolution& plan,
                                const PvResult& pv);

}  // namespace solarplan

#endif
