#include "solarplan/mc_sim.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace solarplan {

namespace {

// splitmix64 finalizer; full-avalanche mix of a 64-bit counter.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Counter-based cell stream: hash of (seed, replication, plant, period).
double unit_uniform(std::uint64_t seed, std::uint64_t rep, std::uint64_t j, std::uint64_t t) {
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ rep);
    h = mix64(h ^ j);
    h = mix64(h ^ t);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Midpoint-ordered percentile on a sorted sample (linear interpolation).
double percentile(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) return 0.0;
    if (sorted.size() == 1) return sorted[0];
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace

McConfig make_mc_config(const PlanProblem& base, double spread, int replications,
                        std::uint64_t seed) {
    McConfig cfg;
    cfg.base = base;
    cfg.replications = replications;
    cfg.seed = seed;
    const std::size_t m = base.plants.size();
    const std::size_t T = static_cast<std::size_t>(base.horizon);
    cfg.demand_low.assign(m, std::vector<double>(T, 0.0));
    cfg.demand_high.assign(m, std::vector<double>(T, 0.0));
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t t = 0; t < T; ++t) {
            const double nominal = base.plants[j].periods[t].demand;
            cfg.demand_low[j][t] = std::max(0.0, nominal * (1.0 - spread));
            cfg.demand_high[j][t] = nominal * (1.0 + spread);
        }
    }
    return cfg;
}

std::vector<Violation> validate_mc_config(const McConfig& config) {
    std::vector<Violation> out = validate_problem(config.base);
    if (config.replications < 1)
        out.push_back({"mc-replications", -1, -1,
                       "replications must be >= 1, got " + std::to_string(config.replications)});
    const std::size_t m = config.base.plants.size();
    const std::size_t T = static_cast<std::size_t>(std::max(config.base.horizon, 0));
    if (config.demand_low.size() != m || config.demand_high.size() != m) {
        out.push_back({"mc-demand-shape", -1, -1, "demand bound matrices must be m x T"});
        return out;
    }
    for (std::size_t j = 0; j < m; ++j) {
        if (config.demand_low[j].size() != T || config.demand_high[j].size() != T) {
            out.push_back({"mc-demand-shape", static_cast<int>(j), -1,
                           "demand bound rows must have horizon entries"});
            continue;
        }
        for (std::size_t t = 0; t < T; ++t)
            if (config.demand_low[j][t] > config.demand_high[j][t])
                out.push_back({"mc-demand-order", static_cast<int>(j), static_cast<int>(t),
                               "demand_low exceeds demand_high"});
    }
    return out;
}

Matrix sample_demand(const McConfig& config, int replication_index) {
    const std::size_t m = config.base.plants.size();
    const std::size_t T = static_cast<std::size_t>(config.base.horizon);
    Matrix demand(m, std::vector<double>(T, 0.0));
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t t = 0; t < T; ++t) {
            const double lo = config.demand_low[j][t];
            const double hi = config.demand_high[j][t];
            if (lo == hi) {
                demand[j][t] = lo;
            } else {
                const double u = unit_uniform(config.seed,
                                              static_cast<std::uint64_t>(replication_index), j, t);
                demand[j][t] = lo + u * (hi - lo);
            }
        }
    }
    return demand;
}

ReplicationRecord run_replication(const McConfig& config, int replication_index) {
    ReplicationRecord rec;
    PlanProblem problem = config.base;
    const Matrix demand = sample_demand(config, replication_index);
    for (std::size_t j = 0; j < problem.plants.size(); ++j)
        for (std::size_t t = 0; t < static_cast<std::size_t>(problem.horizon); ++t)
            problem.plants[j].periods[t].demand = demand[j][t];
    try {
        PlanSolution sol = solve_plan(problem);
        rec.feasible = true;
        rec.objective = sol.objective;
        rec.waste = waste_rate(sol);
        rec.selected = sol.selected;
    } catch (const InfeasibleProblem&) {
        rec.feasible = false;
        rec.selected.assign(problem.plants.size(), 0);
    }
    return rec;
}

McReport run_simulation(const McConfig& config, int workers) {
    const int R = config.replications;
    std::vector<ReplicationRecord> records(R);

    workers = std::max(1, workers);
    if (workers == 1 || R < 2) {
        for (int r = 0; r < R; ++r) records[r] = run_replication(config, r);
    } else {
        // Replications land in pre-allocated index slots, so the merged
        // result does not depend on thread scheduling.
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (int r = w; r < R; r += workers) records[r] = run_replication(config, r);
            });
        }
        for (std::thread& th : pool) th.join();
    }

    McReport report;
    report.replications_run = R;
    report.selection_frequency.assign(config.base.plants.size(), 0.0);

    std::vector<double> costs;
    double waste_sum = 0.0;
    for (const ReplicationRecord& rec : records) {
        if (!rec.feasible) {
            ++report.infeasible_count;
            continue;
        }
        costs.push_back(rec.objective);
        waste_sum += rec.waste;
        for (std::size_t j = 0; j < rec.selected.size(); ++j)
            report.selection_frequency[j] += rec.selected[j];
    }

    const std::size_t n = costs.size();
    if (n == 0) {
        report.all_infeasible = true;
        return report;
    }
    for (double& f : report.selection_frequency) f /= static_cast<double>(n);
    report.waste_rate_mean = waste_sum / static_cast<double>(n);

    double mean = 0.0;
    for (double c : costs) mean += c;
    mean /= static_cast<double>(n);
    report.cost_mean = mean;
    if (n > 1) {
        double ss = 0.0;
        for (double c : costs) ss += (c - mean) * (c - mean);
        report.cost_stddev = std::sqrt(ss / static_cast<double>(n - 1));
    }

    std::sort(costs.begin(), costs.end());
    report.cost_p5 = percentile(costs, 0.05);
    report.cost_p50 = percentile(costs, 0.50);
    report.cost_p95 = percentile(costs, 0.95);
    return report;
}

double waste_rate(const PlanSolution& solution) {
    double wasted = 0.0;
    double produced = 0.0;
    for (std::size_t j = 0; j < solution.selected.size(); ++j) {
        if (!solution.selected[j]) continue;
        for (std::size_t t = 0; t < solution.production[j].size(); ++t) {
            produced += solution.production[j][t];
            wasted += std::max(solution.surplus[j][t], 0.0);
        }
    }
    return produced > 0.0 ? wasted / produced : 0.0;
}

ComparisonReport compare_models(const PlanProblem& problem, const PlanSolution& plan,
                                const PvResult& pv) {
    (void)problem;
    ComparisonReport r;
    r.plan_cost = plan.objective;
    r.pv_cost_magnitude = std::fabs(pv.f_star);
    if (r.plan_cost < r.pv_cost_magnitude)
        r.cheaper = ComparisonReport::Cheaper::Plant;
    else if (r.plan_cost > r.pv_cost_magnitude)
        r.cheaper = ComparisonReport::Cheaper::Rooftop;
    else
        r.cheaper = ComparisonReport::Cheaper::Tie;
    r.waste_rate = waste_rate(plan);
    return r;
}

}  // namespace solarplan
