#include <cmath>

#include "doctest.h"
#include "solarplan/mc_sim.hpp"
#include "solarplan/scenario_io.hpp"
#include "test_instances.hpp"

using namespace solarplan;
using solarplan::testing::approx_rel;
using solarplan::testing::make_plant;
using solarplan::testing::make_table1_problem;

TEST_CASE("sample_demand returns the bound exactly for zero-width intervals") {
    McConfig cfg = make_mc_config(make_table1_problem(), 0.0, 3, 99);
    const Matrix d = sample_demand(cfg, 0);
    for (std::size_t j = 0; j < cfg.base.plants.size(); ++j)
        for (std::size_t t = 0; t < 2; ++t)
            CHECK(d[j][t] == cfg.base.plants[j].periods[t].demand);
}

TEST_CASE("sample_demand is deterministic per (seed, replication)") {
    McConfig cfg = make_mc_config(make_table1_problem(), 0.25, 10, 4242);
    CHECK(sample_demand(cfg, 3) == sample_demand(cfg, 3));
    CHECK(sample_demand(cfg, 3) != sample_demand(cfg, 4));
    McConfig other = cfg;
    other.seed = 4243;
    CHECK(sample_demand(cfg, 3) != sample_demand(other, 3));
}

TEST_CASE("sample_demand cell draws have uniform moments") {
    PlanProblem base;
    base.horizon = 1;
    base.required_count = 1;
    base.plants.push_back(make_plant("p", 0.0, {{0.0, 0.0, 0.0, 0.0, 1.0, 0.5}}));
    McConfig cfg = make_mc_config(base, 0.0, 100000, 7);
    cfg.demand_low[0][0] = 0.0;
    cfg.demand_high[0][0] = 1.0;

    double sum = 0.0, sumsq = 0.0;
    const int n = 100000;
    for (int r = 0; r < n; ++r) {
        const double x = sample_demand(cfg, r)[0][0];
        REQUIRE(x >= 0.0);
        REQUIRE(x < 1.0);
        sum += x;
        sumsq += x * x;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(std::fabs(mean - 0.5) < 0.01);
    CHECK(std::fabs(var - 1.0 / 12.0) < 0.01);
}

TEST_CASE("run_replication with zero width equals the deterministic solve") {
    PlanProblem problem = make_table1_problem();
    McConfig cfg = make_mc_config(problem, 0.0, 1, 5);
    ReplicationRecord rec = run_replication(cfg, 0);
    PlanSolution s = solve_plan(problem);
    CHECK(rec.feasible);
    CHECK(rec.objective == s.objective);
    CHECK(rec.selected == s.selected);
    CHECK(rec.waste == waste_rate(s));
}

TEST_CASE("run_replication records infeasibility as data") {
    PlanProblem problem = make_table1_problem();
    problem.allow_shortage = false;
    for (PlantSpec& plant : problem.plants)
        for (PeriodParams& p : plant.periods) p.demand = 1e6;  // above every cap_max
    McConfig cfg = make_mc_config(problem, 0.0, 1, 5);
    ReplicationRecord rec = run_replication(cfg, 0);
    CHECK_FALSE(rec.feasible);
}

TEST_CASE("two-point average matches hand averaging") {
    PlanProblem problem = make_table1_problem();
    McConfig lo_cfg = make_mc_config(problem, 0.0, 1, 1);
    PlanProblem hi_problem = problem;
    for (PlantSpec& plant : hi_problem.plants)
        for (PeriodParams& p : plant.periods) p.demand *= 1.1;
    McConfig hi_cfg = make_mc_config(hi_problem, 0.0, 1, 1);

    const double lo = run_replication(lo_cfg, 0).objective;
    const double hi = run_replication(hi_cfg, 0).objective;
    CHECK(approx_rel((lo + hi) / 2.0,
                     (solve_plan(problem).objective + solve_plan(hi_problem).objective) / 2.0,
                     1e-12));
}

TEST_CASE("degenerate simulation collapses onto the deterministic objective") {
    McConfig cfg = make_mc_config(make_table1_problem(), 0.0, 1, 77);
    McReport rep = run_simulation(cfg);
    CHECK(rep.cost_stddev == 0.0);
    CHECK(rep.cost_mean == solve_plan(cfg.base).objective);
    CHECK(rep.infeasible_count == 0);
    CHECK(rep.replications_run == 1);
}

TEST_CASE("identical configs give bit-identical reports at any worker count") {
    McConfig cfg = make_mc_config(make_table1_problem(), 0.15, 500, 31337);
    ReportBundle a, b, c;
    a.mc = run_simulation(cfg, 1);
    b.mc = run_simulation(cfg, 1);
    c.mc = run_simulation(cfg, 4);
    const std::string ja = report_to_string(a, ReportFormat::Json);
    CHECK(ja == report_to_string(b, ReportFormat::Json));
    CHECK(ja == report_to_string(c, ReportFormat::Json));
}

TEST_CASE("vanishing interval width converges to the deterministic objective") {
    McConfig cfg = make_mc_config(make_table1_problem(), 0.0, 200, 9);
    for (auto& row : cfg.demand_high)
        for (double& v : row) v += 1e-9;
    McReport rep = run_simulation(cfg);
    CHECK(approx_rel(rep.cost_mean, solve_plan(cfg.base).objective, 1e-6));
}

TEST_CASE("all-infeasible simulation is flagged, not zero-filled") {
    PlanProblem problem = make_table1_problem();
    problem.allow_shortage = false;
    for (PlantSpec& plant : problem.plants)
        for (PeriodParams& p : plant.periods) p.demand = 1e6;
    McConfig cfg = make_mc_config(problem, 0.0, 10, 5);
    McReport rep = run_simulation(cfg);
    CHECK(rep.all_infeasible);
    CHECK(rep.infeasible_count == 10);
    CHECK(rep.replications_run == 10);
}

TEST_CASE("simulation quantiles are ordered and frequencies are fractions") {
    McConfig cfg = make_mc_config(make_table1_problem(), 0.2, 300, 12);
    McReport rep = run_simulation(cfg);
    CHECK(rep.cost_p5 <= rep.cost_p50);
    CHECK(rep.cost_p50 <= rep.cost_p95);
    for (double f : rep.selection_frequency) {
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
    }
    CHECK(rep.infeasible_count + (300 - rep.infeasible_count) == rep.replications_run);
}

TEST_CASE("waste_rate hand values and naive duplicate") {
    PlanSolution s;
    s.selected = {1};
    s.production = {{100.0}};
    s.surplus = {{20.0}};
    CHECK(waste_rate(s) == doctest::Approx(0.2));

    s.surplus = {{0.0}};
    CHECK(waste_rate(s) == 0.0);

    s.production = {{0.0}};
    CHECK(waste_rate(s) == 0.0);

    PlanProblem problem = make_table1_problem();
    PlanSolution solved = solve_plan(problem);
    double wasted = 0.0, produced = 0.0;
    for (std::size_t j = 0; j < problem.plants.size(); ++j) {
        if (!solved.selected[j]) continue;
        for (int t = 0; t < problem.horizon; ++t) {
            produced += solved.production[j][t];
            if (solved.surplus[j][t] > 0.0) wasted += solved.surplus[j][t];
        }
    }
    CHECK(waste_rate(solved) == wasted / produced);
}

TEST_CASE("waste_rate stays in [0, 1] without shortages") {
    PlanProblem problem = make_table1_problem();
    problem.allow_shortage = false;
    for (PlantSpec& plant : problem.plants)
        for (PeriodParams& p : plant.periods) p.demand = p.cap_min;  // keep it feasible
    PlanSolution s = solve_plan(problem);
    const double w = waste_rate(s);
    CHECK(w >= 0.0);
    CHECK(w <= 1.0);
}

TEST_CASE("compare_models labels the cheaper model") {
    PlanProblem problem = make_table1_problem();
    PlanSolution plan;
    plan.selected = {1, 0, 0, 0};
    plan.production = {{0, 0}, {0, 0}, {0, 0}, {0, 0}};
    plan.surplus = plan.production;

    PvResult pv;
    // The published juxtaposition: plan cost 43,600 vs rooftop 16,346.
    // By these numbers the rooftop model is cheaper, whatever the prose
    // around them concluded.
    plan.objective = 43600.0;
    pv.f_star = -16346.0;
    ComparisonReport r = compare_models(problem, plan, pv);
    CHECK(r.cheaper == ComparisonReport::Cheaper::Rooftop);
    CHECK(r.plan_cost == 43600.0);
    CHECK(r.pv_cost_magnitude == 16346.0);

    plan.objective = 10.0;
    pv.f_star = -20.0;
    CHECK(compare_models(problem, plan, pv).cheaper == ComparisonReport::Cheaper::Plant);

    plan.objective = 20.0;
    CHECK(compare_models(problem, plan, pv).cheaper == ComparisonReport::Cheaper::Tie);
}
