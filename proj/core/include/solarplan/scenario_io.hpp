#ifndef SOLARPLAN_SCENARIO_IO_HPP
#define SOLARPLAN_SCENARIO_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "solarplan/core_model.hpp"
#include "solarplan/linkage.hpp"
#include "solarplan/mc_sim.hpp"
#include "solarplan/pv_analytic.hpp"

namespace solarplan {

class ScenarioError : public std::runtime_error {
public:
    enum class Category { MissingFile, Syntax, Schema };

    ScenarioError(Category cat, std::string message)
        : std::runtime_error(std::move(message)), category_(cat) {}
    Category category() const { return category_; }
    const char* category_name() const;

private:
    Category category_;
};

struct McOverlay {
    int replications = 1;
    std::uint64_t seed = 0;
    std::optional<double> spread;  // builds bounds as nominal*(1 +/- spread)
    std::optional<Matrix> demand_low;
    std::optional<Matrix> demand_high;
};

struct ScenarioMetadata {
    std::string name;
    std::string notes;
};

struct ScenarioFile {
    std::string schema_version;
    ScenarioMetadata metadata;
    PlanProblem problem;
    std::optional<PvParams> pv;
    std::optional<McOverlay> mc;
    std::vector<Violation> violations;  // invariant failures found at load, all of them
};

// Parse and validate a scenario document. Missing files, malformed JSON and
// schema violations throw ScenarioError with the matching category;
// invariant violations are collected into the returned value.
ScenarioFile load_scenario(const std::string& path);
ScenarioFile parse_scenario(const std::string& text);

std::string scenario_to_string(const ScenarioFile& scenario);
void save_scenario(const ScenarioFile& scenario, const std::string& path);

// Monte Carlo config from a scenario: explicit bounds win over spread;
// no overlay at all means a degenerate zero-spread study.
McConfig mc_config_from_scenario(const ScenarioFile& scenario);

struct SolutionRow {
    std::string id;
    int t = 0;  // 1-based period
    int y = 0;
    double z = 0.0;
    double k = 0.0;
    double period_cost = 0.0;
};

enum class ReportFormat { Human, Csv, Json };

// Everything a command can report. Sections are optional; the formatters
// only print what an operation already computed.
struct ReportBundle {
    std::optional<std::vector<SolutionRow>> solution_rows;
    std::optional<double> objective;
    std::optional<PvResult> pv;
    std::optional<LinkResult> link;
    std::optional<McReport> mc;
    std::optional<ComparisonReport> comparison;
};

ReportBundle bundle_from_solution(const PlanProblem& problem, const PlanSolution& solution);

void export_report(const ReportBundle& bundle, ReportFormat format, std::ostream& out);
void export_report(const ReportBundle& bundle, ReportFormat format, const std::string& path);

// Re-reads a Json-format report; round-trips with export_report.
ReportBundle load_report(const std::string& path);
std::string report_to_string(const ReportBundle& bundle, ReportFormat format);

ReportFormat parse_report_format(const std::string& name);

}  // namespace solarplan

#endif
