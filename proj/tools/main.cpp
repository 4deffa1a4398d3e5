// solarplan: capacity-planning CLI. Solves the plant-selection model,
// evaluates the rooftop photovoltaic optimum, links the two models, and runs
// seeded Monte Carlo demand studies over scenario files.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "solarplan/core_model.hpp"
#include "solarplan/linkage.hpp"
#include "solarplan/mc_sim.hpp"
#include "solarplan/plant_solver.hpp"
#include "solarplan/pv_analytic.hpp"
#include "solarplan/scenario_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;

std::string resolve_out_path(const std::string& path) {
    if (path.empty() || path.front() == '/') return path;
    if (const char* dir = std::getenv("SOLARPLAN_OUTPUT_DIR"))
        return std::string(dir) + "/" + path;
    return path;
}

void emit(const solarplan::ReportBundle& bundle, const std::string& format,
          const std::string& out_path) {
    const solarplan::ReportFormat fmt = solarplan::parse_report_format(format);
    if (out_path.empty()) {
        solarplan::export_report(bundle, fmt, std::cout);
    } else {
        solarplan::export_report(bundle, fmt, resolve_out_path(out_path));
    }
}

solarplan::ScenarioFile load_checked(const std::string& path) {
    solarplan::ScenarioFile scenario = solarplan::load_scenario(path);
    if (!scenario.violations.empty()) {
        std::ostringstream os;
        os << "scenario has invariant violations:";
        for (const solarplan::Violation& v : scenario.violations) os << "\n  " << v.format();
        throw std::runtime_error(os.str());
    }
    return scenario;
}

solarplan::PvParams require_pv(const solarplan::ScenarioFile& scenario) {
    if (!scenario.pv)
        throw std::runtime_error("scenario has no \"pv\" section; this command needs one");
    return *scenario.pv;
}

int run(int argc, char** argv) {
    CLI::App app{"solar capacity-planning toolkit"};
    app.require_subcommand(1);

    std::string scenario_path, format = "human", out_path;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("scenario", scenario_path, "scenario file")->required();
        cmd->add_option("--format", format, "output format: human, csv, json")
            ->check(CLI::IsMember({"human", "csv", "json"}));
        cmd->add_option("--out", out_path, "write the report to this path instead of stdout");
    };

    auto* solve = app.add_subcommand("solve", "solve the plant-selection model");
    add_common(solve);

    int grid_steps = 1000;
    auto* oracle =
        app.add_subcommand("oracle", "cross-check the solver against exhaustive enumeration");
    add_common(oracle);
    oracle->add_option("--grid-steps", grid_steps, "grid points per plant-period")
        ->check(CLI::Range(100, 1000000));

    auto* pv = app.add_subcommand("pv", "rooftop photovoltaic closed-form optimum");
    add_common(pv);

    auto* link = app.add_subcommand("link", "breakeven output and matching panel count");
    add_common(link);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo demand-uncertainty study");
    add_common(simulate);
    int replications = -1;
    std::uint64_t seed = 0;
    bool seed_set = false, spread_set = false;
    double spread = 0.0;
    int jobs = 1;
    simulate->add_option("--replications", replications, "number of replications");
    simulate->add_option("--seed", seed, "random seed")->each([&](const std::string&) {
        seed_set = true;
    });
    simulate->add_option("--spread", spread, "demand interval half-width as a fraction of nominal")
        ->each([&](const std::string&) { spread_set = true; });
    simulate->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 256));

    auto* compare = app.add_subcommand("compare", "plant model vs rooftop model cost");
    add_common(compare);

    auto* validate = app.add_subcommand("validate", "check scenario schema and invariants");
    validate->add_option("scenario", scenario_path, "scenario file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (validate->parsed()) {
        solarplan::ScenarioFile scenario = solarplan::load_scenario(scenario_path);
        if (scenario.violations.empty()) {
            std::cout << "ok: scenario is valid\n";
            return kExitOk;
        }
        for (const solarplan::Violation& v : scenario.violations)
            std::cout << "violation: " << v.format() << "\n";
        return kExitError;
    }

    if (solve->parsed()) {
        solarplan::ScenarioFile scenario = load_checked(scenario_path);
        solarplan::PlanSolution solution = solarplan::solve_plan(scenario.problem);
        emit(solarplan::bundle_from_solution(scenario.problem, solution), format, out_path);
        return kExitOk;
    }

    if (oracle->parsed()) {
        solarplan::ScenarioFile scenario = load_checked(scenario_path);
        const solarplan::PlanProblem& problem = scenario.problem;
        solarplan::PlanSolution fast = solarplan::solve_plan(problem);
        solarplan::PlanSolution slow = solarplan::enumerate_oracle(problem, grid_steps);

        // The enumeration can overshoot by at most one grid step of cost
        // slope per selected plant-period.
        double grid_bound = 0.0;
        for (std::size_t j = 0; j < problem.plants.size(); ++j) {
            if (!slow.selected[j]) continue;
            for (int t = 1; t <= problem.horizon; ++t) {
                const solarplan::PeriodParams& p = problem.plants[j].periods[t - 1];
                grid_bound += (p.op_cost + p.transfer_cost + p.excess_cost) *
                              ((p.cap_max - p.cap_min) / grid_steps) *
                              solarplan::discount_factor(problem.discount_rate, t);
            }
        }
        const double scale = std::max(1.0, std::fabs(fast.objective));
        const double diff = slow.objective - fast.objective;
        const bool agree = diff >= -1e-6 * scale && diff <= grid_bound + 1e-6 * scale;
        std::cout << (agree ? "AGREE" : "DISAGREE") << " solver=" << fast.objective
                  << " oracle=" << slow.objective << "\n";
        return agree ? kExitOk : kExitError;
    }

    if (pv->parsed()) {
        solarplan::ScenarioFile scenario = load_checked(scenario_path);
        solarplan::ReportBundle bundle;
        bundle.pv = solarplan::pv_optimal_output(require_pv(scenario));
        emit(bundle, format, out_path);
        return kExitOk;
    }

    if (link->parsed()) {
        solarplan::ScenarioFile scenario = load_checked(scenario_path);
        const solarplan::PvParams pv_params = require_pv(scenario);
        solarplan::PlanSolution solution = solarplan::solve_plan(scenario.problem);
        const double z_breakeven = solarplan::breakeven_output(scenario.problem, solution);
        const solarplan::PvResult pv_result = solarplan::pv_optimal_output(pv_params);
        solarplan::ReportBundle bundle = solarplan::bundle_from_solution(scenario.problem, solution);
        bundle.pv = pv_result;
        bundle.link = solarplan::panel_count_match(z_breakeven, pv_params.panel_price,
                                                   pv_params.op_cost, std::fabs(pv_result.f_star),
                                                   pv_result.beta);
        emit(bundle, format, out_path);
        return kExitOk;
    }

    if (simulate->parsed()) {
        solarplan::ScenarioFile scenario = load_checked(scenario_path);
        if (!scenario.mc) scenario.mc = solarplan::McOverlay{};
        if (replications >= 1) scenario.mc->replications = replications;
        if (seed_set) scenario.mc->seed = seed;
        if (spread_set) {
            scenario.mc->spread = spread;
            scenario.mc->demand_low.reset();
            scenario.mc->demand_high.reset();
        }
        solarplan::McConfig config = solarplan::mc_config_from_scenario(scenario);
        {
            std::vector<solarplan::Violation> violations = solarplan::validate_mc_config(config);
            if (!violations.empty()) {
                std::ostringstream os;
                os << "invalid Monte Carlo config:";
                for (const solarplan::Violation& v : violations) os << "\n  " << v.format();
                throw std::runtime_error(os.str());
            }
        }
        solarplan::ReportBundle bundle;
        bundle.mc = solarplan::run_simulation(config, jobs);
        emit(bundle, format, out_path);
        return kExitOk;
    }

    if (compare->parsed()) {
        solarplan::ScenarioFile scenario = load_checked(scenario_path);
        solarplan::PlanSolution solution = solarplan::solve_plan(scenario.problem);
        solarplan::PvResult pv_result = solarplan::pv_optimal_output(require_pv(scenario));
        solarplan::ReportBundle bundle;
        bundle.comparison = solarplan::compare_models(scenario.problem, solution, pv_result);
        emit(bundle, format, out_path);
        return kExitOk;
    }

    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const solarplan::InfeasibleProblem& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const solarplan::ScenarioError& e) {
        std::cerr << "error (" << e.category_name() << "): " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
