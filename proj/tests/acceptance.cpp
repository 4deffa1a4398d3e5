// Acceptance suite: one line per criterion, nonzero exit when any fails.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "solarplan/core_model.hpp"
#include "solarplan/linkage.hpp"
#include "solarplan/mc_sim.hpp"
#include "solarplan/plant_solver.hpp"
#include "solarplan/pv_analytic.hpp"
#include "solarplan/scenario_io.hpp"
#include "test_instances.hpp"

using namespace solarplan;
using namespace solarplan::testing;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << " " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// 1. Solver-oracle equivalence over random instances.
void criterion_solver_oracle() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2024);
    int feasible_checked = 0;
    bool ok = true;
    std::string detail;
    for (int i = 0; i < 200 && ok; ++i) {
        PlanProblem problem = random_problem(rng);
        bool fast_ok = true, slow_ok = true;
        PlanSolution fast, slow;
        try {
            fast = solve_plan(problem);
        } catch (const InfeasibleProblem&) {
            fast_ok = false;
        }
        try {
            slow = enumerate_oracle(problem, 300);
        } catch (const InfeasibleProblem&) {
            slow_ok = false;
        }
        if (fast_ok != slow_ok) {
            ok = false;
            detail = "feasibility mismatch at instance " + std::to_string(i);
            break;
        }
        if (!fast_ok) continue;
        ++feasible_checked;
        if (!approx_rel(fast.objective, slow.objective, 1e-6)) {
            ok = false;
            detail = "objective mismatch at instance " + std::to_string(i);
        }
    }
    const double elapsed = seconds_since(start);
    if (ok && elapsed >= 60.0) {
        ok = false;
        detail = "runtime " + std::to_string(elapsed) + "s exceeds 60s";
    }
    report("criterion-1 solver-oracle equivalence", ok,
           detail.empty() ? std::to_string(feasible_checked) + " feasible instances of 200, " +
                                std::to_string(elapsed) + "s"
                          : detail);
}

// 2. Published-dataset reproduction attempt: must solve and emit objectives;
//    the published figures are printed beside the computed ones.
void criterion_table_reproduction(const std::string& data_dir) {
    const std::array<std::pair<std::string, double>, 3> datasets = {{
        {"table1_low_demand", 43600.0},
        {"table2_medium_demand", 51300.0},
        {"table3_high_demand", 36000.0},
    }};
    bool ok = true;
    std::ostringstream detail;
    for (const auto& [name, published] : datasets) {
        try {
            ScenarioFile s = load_scenario(data_dir + "/" + name + ".json");
            PlanSolution sol = solve_plan(s.problem);
            detail << name << ": computed " << sol.objective << " vs published " << published
                   << "; ";
        } catch (const std::exception& e) {
            ok = false;
            detail << name << " failed: " << e.what() << "; ";
        }
    }
    report("criterion-2 dataset reproduction attempt (documented, not gating)", ok, detail.str());
}

// 3. Closed-form optimum vs golden-section minimization per alternative.
void criterion_pv_formulas() {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (const PvParams& row : table4_rows()) {
        PvResult r = pv_optimal_output(row);
        const double lo = -10.0 * row.panel_price / r.beta;
        const double z_min = golden_section_min([&](double z) { return pv_cost(row, z); }, lo,
                                                0.0, 1e-12 * std::fabs(lo));
        if (std::fabs(z_min - r.z_stationary) > 1e-8 * std::fabs(r.z_stationary)) {
            ok = false;
            detail = "golden-section disagrees on z_stationary";
        }
        if (!approx_rel(r.f_star, pv_cost(row, r.z_stationary), 1e-9)) {
            ok = false;
            detail = "f_star disagrees with the cost at the stationary point";
        }
    }
    const double elapsed = seconds_since(start);
    if (ok && elapsed >= 1.0) {
        ok = false;
        detail = "runtime exceeds 1s";
    }
    report("criterion-3 closed-form optimum vs golden-section, all five alternatives", ok, detail);
}

// 4. Analytic derivative vs central finite differences.
void criterion_derivative() {
    std::mt19937_64 rng(4001);
    std::uniform_real_distribution<double> z_dist(-400.0, 400.0), rate(0.05, 0.5),
        cost(1.0, 500.0), watts(50.0, 5e5);
    std::uniform_int_distribution<int> life(1, 120);
    bool ok = true;
    for (int i = 0; i < 100; ++i) {
        PvParams p{rate(rng), life(rng), cost(rng), cost(rng), watts(rng), watts(rng)};
        const double z = z_dist(rng);
        const double h = 1e-6 * std::max(1.0, std::fabs(z));
        const double fd = (pv_cost(p, z + h) - pv_cost(p, z - h)) / (2.0 * h);
        if (!approx_rel(pv_stationary_residual(p, z), fd, 1e-6)) ok = false;
    }
    report("criterion-4 derivative vs central finite differences, 100 points", ok);
}

// 5. Linkage round trip and closed form vs bisection.
void criterion_linkage() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(5001);
    std::uniform_real_distribution<double> n_dist(0.01, 1e6), c_dist(1.0, 1e3),
        q_dist(0.1, 100.0), beta_dist(0.1, 10.0), f_dist(1.0, 1e9);
    bool ok = true;
    std::string detail;
    for (int i = 0; i < 100 && ok; ++i) {
        const double n_true = n_dist(rng), c = c_dist(rng), q = q_dist(rng),
                     beta = beta_dist(rng), f = f_dist(rng);
        const double z_target = output_given_panels(n_true, c, q, f, beta);
        LinkResult r = panel_count_match(z_target, c, q, f, beta);
        if (std::fabs(output_given_panels(r.n_star, c, q, f, beta) - z_target) >
            1e-9 * std::max(1.0, std::fabs(z_target))) {
            ok = false;
            detail = "round-trip residual too large";
        }
        double lo = 1e-6, hi = 1e9;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (output_given_panels(mid, c, q, f, beta) > z_target ? lo : hi) = mid;
        }
        if (!approx_rel(r.n_star, 0.5 * (lo + hi), 1e-8)) {
            ok = false;
            detail = "bisection disagrees with the closed form";
        }
    }
    const double elapsed = seconds_since(start);
    if (ok && elapsed >= 5.0) {
        ok = false;
        detail = "runtime exceeds 5s";
    }
    report("criterion-5 linkage round trip and bisection agreement, 100 draws", ok, detail);
}

// 6. Degenerate Monte Carlo collapse.
void criterion_mc_degenerate() {
    McConfig cfg = make_mc_config(make_table1_problem(), 0.0, 50, 6006);
    McReport rep = run_simulation(cfg);
    const double deterministic = solve_plan(cfg.base).objective;
    const bool ok = rep.cost_stddev == 0.0 && approx_rel(rep.cost_mean, deterministic, 1e-12);
    report("criterion-6 zero-width Monte Carlo collapse", ok);
}

// 7. Confidence half-width shrinks as 1/sqrt(R).
void criterion_mc_convergence() {
    const auto start = std::chrono::steady_clock::now();
    auto half_width = [](const McConfig& cfg) {
        McReport rep = run_simulation(cfg);
        const int n = rep.replications_run - rep.infeasible_count;
        return 1.96 * rep.cost_stddev / std::sqrt(static_cast<double>(n));
    };
    McConfig cfg = make_mc_config(make_table1_problem(), 0.2, 100, 7007);
    const double hw100 = half_width(cfg);
    cfg.replications = 1000;
    const double hw1000 = half_width(cfg);
    cfg.replications = 10000;
    const double hw10000 = half_width(cfg);

    const double r1 = hw100 / hw1000;
    const double r2 = hw1000 / hw10000;
    const double lo = std::sqrt(10.0) * 0.8, hi = std::sqrt(10.0) * 1.2;
    bool ok = r1 > lo && r1 < hi && r2 > lo && r2 < hi;
    const double elapsed = seconds_since(start);
    std::ostringstream detail;
    detail << "ratios " << r1 << ", " << r2 << "; " << elapsed << "s";
    if (ok && elapsed >= 120.0) {
        ok = false;
        detail << "; runtime exceeds 120s";
    }
    report("criterion-7 Monte Carlo half-width shrinks by sqrt(10) per decade", ok, detail.str());
}

// 8. Byte-identical simulate output, including across worker counts.
void criterion_determinism(const std::string& cli, const std::string& data_dir) {
    McConfig cfg = make_mc_config(make_table1_problem(), 0.15, 400, 8008);
    ReportBundle a, b;
    a.mc = run_simulation(cfg, 1);
    b.mc = run_simulation(cfg, 4);
    bool ok = report_to_string(a, ReportFormat::Json) == report_to_string(b, ReportFormat::Json);
    std::string detail = ok ? "" : "library reports differ across worker counts";

    auto capture = [&](const std::string& jobs) {
        const std::string cmd = cli + " simulate " + data_dir +
                                "/table1_low_demand.json --replications 200 --seed 11 "
                                "--spread 0.1 --format json --jobs " +
                                jobs + " 2>&1";
        std::string out;
        if (FILE* pipe = popen(cmd.c_str(), "r")) {
            std::array<char, 4096> buf{};
            std::size_t n;
            while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
            pclose(pipe);
        }
        return out;
    };
    const std::string run1 = capture("1"), run2 = capture("1"), run4 = capture("4");
    if (run1.empty() || run1 != run2 || run1 != run4) {
        ok = false;
        detail = "CLI simulate output differs between runs or worker counts";
    }
    report("criterion-8 simulate determinism across runs and worker counts", ok, detail);
}

// 9. Scenario round-trip plus the scaling argmin-invariance property.
void criterion_roundtrip_and_scaling(const std::string& data_dir) {
    bool ok = true;
    std::string detail;
    for (const std::string& name :
         {"table1_low_demand", "table2_medium_demand", "table3_high_demand", "table4_korea",
          "table4_china", "table4_taiwan", "table4_usa", "table4_japan"}) {
        try {
            ScenarioFile first = load_scenario(data_dir + "/" + std::string(name) + ".json");
            ScenarioFile second = parse_scenario(scenario_to_string(first));
            if (scenario_to_string(first) != scenario_to_string(second)) {
                ok = false;
                detail = std::string(name) + " does not round-trip";
            }
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string(name) + ": " + e.what();
        }
    }

    std::mt19937_64 rng(9009);
    const double lambda = 4.25;
    int checked = 0;
    for (int i = 0; i < 200 && checked < 50 && ok; ++i) {
        PlanProblem problem = random_problem(rng);
        problem.mode = DispatchMode::Rectified;
        PlanSolution before;
        try {
            before = solve_plan(problem);
        } catch (const InfeasibleProblem&) {
            continue;
        }
        std::vector<double> totals;
        for (const PlantSpec& plant : problem.plants)
            totals.push_back(plant_total_cost(plant, problem).total);
        std::vector<double> sorted = totals;
        std::sort(sorted.begin(), sorted.end());
        const int F = problem.required_count;
        if (F == 0 || F == static_cast<int>(totals.size()) || !std::isfinite(sorted[F])) continue;
        if (sorted[F] - sorted[F - 1] <= 1e-6 * std::max(1.0, std::fabs(sorted[F]))) continue;
        ++checked;

        PlanProblem scaled = problem;
        for (PlantSpec& plant : scaled.plants) {
            plant.setup_cost *= lambda;
            for (PeriodParams& p : plant.periods) {
                p.op_cost *= lambda;
                p.transfer_cost *= lambda;
                p.excess_cost *= lambda;
            }
        }
        PlanSolution after = solve_plan(scaled);
        if (after.selected != before.selected ||
            !approx_rel(after.objective, lambda * before.objective, 1e-9)) {
            ok = false;
            detail = "scaling changed the selection or broke homogeneity";
        }
    }
    if (ok && checked < 20) {
        ok = false;
        detail = "too few unique-selection instances to test scaling";
    }
    report("criterion-9 scenario round-trip and scaling argmin-invariance", ok, detail);
}

}  // namespace

int main() {
    const std::string data_dir = SOLARPLAN_DATA_DIR;
    const std::string cli = SOLARPLAN_CLI_PATH;

    criterion_solver_oracle();
    criterion_table_reproduction(data_dir);
    criterion_pv_formulas();
    criterion_derivative();
    criterion_linkage();
    criterion_mc_degenerate();
    criterion_mc_convergence();
    criterion_determinism(cli, data_dir);
    criterion_roundtrip_and_scaling(data_dir);

    if (failures) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
