#include "solarplan/plant_solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>

namespace solarplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double period_cost_at(const PeriodParams& p, double z, double k, double df) {
    return ((p.op_cost + p.transfer_cost) * z + p.excess_cost * k) * df;
}

std::string join_ids(const PlanProblem& problem, const std::vector<int>& plants) {
    std::ostringstream os;
    for (std::size_t i = 0; i < plants.size(); ++i) {
        if (i) os << ", ";
        os << problem.plants[plants[i]].id;
    }
    return os.str();
}

}  // namespace

DispatchResult inner_optimal_dispatch(const PlantSpec& plant, int t, double discount_rate,
                                      DispatchMode mode, bool allow_shortage) {
    const PeriodParams& p = plant.periods.at(static_cast<std::size_t>(t - 1));
    const double df = discount_factor(discount_rate, t);

    double lo = p.cap_min;
    const double hi = p.cap_max;
    if (mode == DispatchMode::Rectified && !allow_shortage) lo = std::max(p.cap_min, p.demand);

    DispatchResult r;
    if (lo > hi) {
        r.feasible = false;
        r.period_cost = kInf;
        return r;
    }
    r.production = lo;
    r.surplus = lo - p.demand;
    r.period_cost = period_cost_at(p, r.production, r.surplus, df);
    return r;
}

PlantCost plant_total_cost(const PlantSpec& plant, const PlanProblem& problem) {
    PlantCost c;
    c.id = plant.id;
    c.total = plant.setup_cost;
    for (int t = 1; t <= problem.horizon; ++t) {
        DispatchResult d = inner_optimal_dispatch(plant, t, problem.discount_rate, problem.mode,
                                                  problem.allow_shortage);
        c.dispatch.push_back(d);
        if (!d.feasible) {
            c.feasible = false;
            c.total = kInf;
        }
        if (c.feasible) c.total += d.period_cost;
    }
    return c;
}

DispatchResult unselected_dispatch(const PlantSpec& plant, int t, double discount_rate,
                                   DispatchMode mode) {
    const PeriodParams& p = plant.periods.at(static_cast<std::size_t>(t - 1));
    DispatchResult r;
    if (mode == DispatchMode::Rectified) return r;  // Z = K = 0, no cost
    // Literal: bounds read cap_min <= Y*Z = 0, surplus balance gives K = -D.
    if (p.cap_min > 0.0) {
        r.feasible = false;
        r.period_cost = kInf;
        return r;
    }
    r.surplus = -p.demand;
    r.period_cost = p.excess_cost * r.surplus * discount_factor(discount_rate, t);
    return r;
}

namespace {

struct PlantAssessment {
    PlantCost selected;
    double unselected_cost = 0.0;
    bool unselected_feasible = true;
};

PlantAssessment assess(const PlantSpec& plant, const PlanProblem& problem) {
    PlantAssessment a;
    a.selected = plant_total_cost(plant, problem);
    for (int t = 1; t <= problem.horizon; ++t) {
        DispatchResult d = unselected_dispatch(plant, t, problem.discount_rate, problem.mode);
        if (!d.feasible) a.unselected_feasible = false;
        a.unselected_cost += d.period_cost;
    }
    if (!a.unselected_feasible) a.unselected_cost = kInf;
    return a;
}

PlanSolution assemble(const PlanProblem& problem, const std::vector<int>& selected,
                      const std::vector<PlantAssessment>& assessments) {
    const int m = static_cast<int>(problem.plants.size());
    const int T = problem.horizon;
    PlanSolution s;
    s.selected = selected;
    s.production.assign(m, std::vector<double>(T, 0.0));
    s.surplus.assign(m, std::vector<double>(T, 0.0));
    s.per_plant_cost.assign(m, 0.0);
    for (int j = 0; j < m; ++j) {
        if (selected[j]) {
            s.per_plant_cost[j] = assessments[j].selected.total;
            for (int t = 0; t < T; ++t) {
                const DispatchResult& d = assessments[j].selected.dispatch[t];
                s.production[j][t] = d.production;
                s.surplus[j][t] = d.surplus;
            }
        } else {
            s.per_plant_cost[j] = assessments[j].unselected_cost;
            if (problem.mode == DispatchMode::Literal) {
                for (int t = 0; t < T; ++t) s.surplus[j][t] = -problem.plants[j].periods[t].demand;
            }
        }
    }
    s.objective = evaluate_objective(problem, s);
    return s;
}

}  // namespace

PlanSolution solve_plan(const PlanProblem& problem) {
    std::vector<Violation> violations = validate_problem(problem);
    if (!violations.empty()) {
        std::ostringstream os;
        os << "solve_plan: invalid problem:";
        for (const Violation& v : violations) os << "\n  " << v.format();
        throw std::invalid_argument(os.str());
    }

    const int m = static_cast<int>(problem.plants.size());
    const int F = problem.required_count;

    std::vector<PlantAssessment> assessments;
    assessments.reserve(m);
    for (const PlantSpec& plant : problem.plants) assessments.push_back(assess(plant, problem));

    std::vector<int> selected(m, 0);
    std::vector<int> forced, blocked, candidates;
    for (int j = 0; j < m; ++j) {
        if (!assessments[j].unselected_feasible) {
            if (!assessments[j].selected.feasible) {
                blocked.push_back(j);
            } else {
                forced.push_back(j);
            }
        } else if (assessments[j].selected.feasible) {
            candidates.push_back(j);
        }
    }
    if (!blocked.empty())
        throw InfeasibleProblem(
            "plants infeasible both selected and unselected: " + join_ids(problem, blocked),
            blocked);
    if (static_cast<int>(forced.size()) > F)
        throw InfeasibleProblem("more plants require selection than required_count allows: " +
                                    join_ids(problem, forced),
                                forced);

    for (int j : forced) selected[j] = 1;
    int remaining = F - static_cast<int>(forced.size());
    if (static_cast<int>(candidates.size()) < remaining) {
        std::vector<int> infeasible;
        for (int j = 0; j < m; ++j)
            if (!assessments[j].selected.feasible) infeasible.push_back(j);
        throw InfeasibleProblem("fewer than required_count selectable plants; infeasible plants: " +
                                    join_ids(problem, infeasible),
                                infeasible);
    }
    // Selecting plant j trades its unselected cost for its selected cost, so
    // rank by that delta. Stable sort keeps the lowest-index tie winner.
    std::stable_sort(candidates.begin(), candidates.end(), [&](int a, int b) {
        return assessments[a].selected.total - assessments[a].unselected_cost <
               assessments[b].selected.total - assessments[b].unselected_cost;
    });
    for (int i = 0; i < remaining; ++i) selected[candidates[i]] = 1;

    return assemble(problem, selected, assessments);
}

double evaluate_objective(const PlanProblem& problem, const PlanSolution& solution) {
    const int m = static_cast<int>(problem.plants.size());
    double total = 0.0;
    for (int j = 0; j < m; ++j) {
        total += problem.plants[j].setup_cost * solution.selected[j];
        for (int t = 1; t <= problem.horizon; ++t) {
            const PeriodParams& p = problem.plants[j].periods[t - 1];
            const double df = discount_factor(problem.discount_rate, t);
            total += (p.op_cost + p.transfer_cost) * solution.selected[j] *
                     solution.production[j][t - 1] * df;
            total += p.excess_cost * solution.surplus[j][t - 1] * df;
        }
    }
    return total;
}

double cell_cost(const PlanProblem& problem, const PlanSolution& solution, int j, int t) {
    const PeriodParams& p = problem.plants[j].periods[t - 1];
    const double df = discount_factor(problem.discount_rate, t);
    return (p.op_cost + p.transfer_cost) * solution.selected[j] * solution.production[j][t - 1] *
               df +
           p.excess_cost * solution.surplus[j][t - 1] * df;
}

PlanSolution enumerate_oracle(const PlanProblem& problem, int grid_steps) {
    const int m = static_cast<int>(problem.plants.size());
    if (m > 12) throw std::invalid_argument("enumerate_oracle: refusing m > 12 plants");
    if (grid_steps < 100) throw std::invalid_argument("enumerate_oracle: grid_steps must be >= 100");
    {
        std::vector<Violation> violations = validate_problem(problem);
        if (!violations.empty())
            throw std::invalid_argument("enumerate_oracle: invalid problem: " +
                                        violations.front().format());
    }

    const int T = problem.horizon;
    const int F = problem.required_count;

    double best = kInf;
    std::uint32_t best_mask = 0;
    Matrix best_z, best_k;

    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        if (std::popcount(mask) != F) continue;
        double total = 0.0;
        bool feasible = true;
        Matrix z(m, std::vector<double>(T, 0.0));
        Matrix k(m, std::vector<double>(T, 0.0));

        for (int j = 0; j < m && feasible; ++j) {
            const PlantSpec& plant = problem.plants[j];
            if (!(mask & (1u << j))) {
                for (int t = 1; t <= T; ++t) {
                    DispatchResult d =
                        unselected_dispatch(plant, t, problem.discount_rate, problem.mode);
                    if (!d.feasible) {
                        feasible = false;
                        break;
                    }
                    k[j][t - 1] = d.surplus;
                    total += d.period_cost;
                }
                continue;
            }
            total += plant.setup_cost;
            for (int t = 1; t <= T && feasible; ++t) {
                const PeriodParams& p = plant.periods[t - 1];
                double lo = p.cap_min;
                const double hi = p.cap_max;
                if (problem.mode == DispatchMode::Rectified && !problem.allow_shortage)
                    lo = std::max(p.cap_min, p.demand);
                if (lo > hi) {
                    feasible = false;
                    break;
                }
                const double df = discount_factor(problem.discount_rate, t);
                std::vector<double> candidates;
                for (int g = 0; g <= grid_steps; ++g)
                    candidates.push_back(lo + (hi - lo) * g / grid_steps);
                for (double c : {p.cap_min, p.demand, std::max(p.cap_min, p.demand)})
                    if (c >= lo && c <= hi) candidates.push_back(c);
                double best_cost = kInf, best_zv = lo;
                for (double zc : candidates) {
                    double cost = period_cost_at(p, zc, zc - p.demand, df);
                    if (cost < best_cost) {
                        best_cost = cost;
                        best_zv = zc;
                    }
                }
                z[j][t - 1] = best_zv;
                k[j][t - 1] = best_zv - p.demand;
                total += best_cost;
            }
        }
        if (feasible && total < best) {
            best = total;
            best_mask = mask;
            best_z = z;
            best_k = k;
        }
    }

    if (!std::isfinite(best))
        throw InfeasibleProblem("enumerate_oracle: no feasible selection of size " +
                                    std::to_string(F),
                                {});

    PlanSolution s;
    s.selected.assign(m, 0);
    for (int j = 0; j < m; ++j) s.selected[j] = (best_mask >> j) & 1u;
    s.production = best_z;
    s.surplus = best_k;
    s.per_plant_cost.assign(m, 0.0);
    for (int j = 0; j < m; ++j) {
        s.per_plant_cost[j] = problem.plants[j].setup_cost * s.selected[j];
        for (int t = 1; t <= T; ++t) s.per_plant_cost[j] += cell_cost(problem, s, j, t);
    }
    s.objective = evaluate_objective(problem, s);
    return s;
}

std::vector<Violation> check_feasibility(const PlanProblem& problem,
                                         const PlanSolution& solution) {
    std::vector<Violation> out;
    const int m = static_cast<int>(problem.plants.size());
    const int T = problem.horizon;
    auto tol = [](double scale) { return 1e-9 * std::max(1.0, std::fabs(scale)); };

    int count = std::accumulate(solution.selected.begin(), solution.selected.end(), 0);
    if (count != problem.required_count)
        out.push_back({"plant-count", -1, -1,
                       "selected " + std::to_string(count) + " plants, required " +
                           std::to_string(problem.required_count)});

    for (int j = 0; j < m; ++j) {
        if (solution.selected[j] != 0 && solution.selected[j] != 1)
            out.push_back({"binary-selection", j, -1,
                           "Y must be 0 or 1, got " + std::to_string(solution.selected[j])});
        for (int t = 0; t < T; ++t) {
            const PeriodParams& p = problem.plants[j].periods[t];
            const double y = solution.selected[j];
            const double z = solution.production[j][t];
            const double k = solution.surplus[j][t];

            if (z < -tol(z))
                out.push_back({"nonnegative-production", j, t, "Z = " + std::to_string(z)});

            // Capacity bounds on Y*Z (literal) or gated by Y (rectified).
            const double gated = (problem.mode == DispatchMode::Literal) ? y * z : z;
            const double lo = (problem.mode == DispatchMode::Literal) ? p.cap_min : p.cap_min * y;
            const double hi = (problem.mode == DispatchMode::Literal) ? p.cap_max : p.cap_max * y;
            if (gated < lo - tol(lo) || gated > hi + tol(hi))
                out.push_back({"capacity-bounds", j, t,
                               "production " + std::to_string(gated) + " outside [" +
                                   std::to_string(lo) + ", " + std::to_string(hi) + "]"});

            const double expected_k = (problem.mode == DispatchMode::Literal)
                                          ? y * z - p.demand
                                          : y * (z - p.demand);
            if (std::fabs(k - expected_k) > tol(expected_k))
                out.push_back({"surplus-balance", j, t,
                               "residual " + std::to_string(k - expected_k)});

            if (problem.mode == DispatchMode::Rectified && !problem.allow_shortage && y > 0 &&
                k < -tol(k))
                out.push_back({"no-shortage", j, t, "K = " + std::to_string(k)});
        }
    }
    return out;
}

}  // namespace solarplan
