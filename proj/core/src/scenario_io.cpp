#include "solarplan/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace solarplan {

using nlohmann::json;

const char* ScenarioError::category_name() const {
    switch (category_) {
        case Category::MissingFile: return "missing-file";
        case Category::Syntax: return "syntax";
        case Category::Schema: return "schema";
    }
    return "unknown";
}

namespace {

constexpr const char* kSchemaVersion = "1";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ScenarioError(ScenarioError::Category::MissingFile,
                            "cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioError(ScenarioError::Category::Syntax,
                            std::string("malformed scenario document: ") + e.what());
    }
}

[[noreturn]] void schema_fail(const std::string& message) {
    throw ScenarioError(ScenarioError::Category::Schema, "schema violation: " + message);
}

const json& field(const json& obj, const char* key, const std::string& context) {
    if (!obj.is_object()) schema_fail(context + " must be an object");
    auto it = obj.find(key);
    if (it == obj.end()) schema_fail(context + " is missing \"" + key + "\"");
    return *it;
}

double number_field(const json& obj, const char* key, const std::string& context) {
    const json& v = field(obj, key, context);
    if (!v.is_number()) schema_fail(context + "." + key + " must be a number");
    return v.get<double>();
}

Matrix matrix_field(const json& v, const std::string& context) {
    if (!v.is_array()) schema_fail(context + " must be an array of arrays");
    Matrix out;
    for (const json& row : v) {
        if (!row.is_array()) schema_fail(context + " must be an array of arrays");
        std::vector<double> r;
        for (const json& cell : row) {
            if (!cell.is_number()) schema_fail(context + " entries must be numbers");
            r.push_back(cell.get<double>());
        }
        out.push_back(std::move(r));
    }
    return out;
}

json matrix_to_json(const Matrix& m) {
    json out = json::array();
    for (const auto& row : m) out.push_back(row);
    return out;
}

PlanProblem problem_from_json(const json& jp) {
    PlanProblem problem;
    problem.horizon = static_cast<int>(number_field(jp, "horizon", "problem"));
    problem.required_count = static_cast<int>(number_field(jp, "required_count", "problem"));
    problem.discount_rate = number_field(jp, "discount_rate", "problem");

    const json& jmode = field(jp, "mode", "problem");
    if (!jmode.is_string()) schema_fail("problem.mode must be a string");
    const std::string mode = jmode.get<std::string>();
    if (mode == "literal")
        problem.mode = DispatchMode::Literal;
    else if (mode == "rectified")
        problem.mode = DispatchMode::Rectified;
    else
        schema_fail("problem.mode must be \"literal\" or \"rectified\", got \"" + mode + "\"");

    const json& jshort = field(jp, "allow_shortage", "problem");
    if (!jshort.is_boolean()) schema_fail("problem.allow_shortage must be a boolean");
    problem.allow_shortage = jshort.get<bool>();

    const json& jplants = field(jp, "plants", "problem");
    if (!jplants.is_array()) schema_fail("problem.plants must be an array");
    for (std::size_t i = 0; i < jplants.size(); ++i) {
        const json& jplant = jplants[i];
        const std::string ctx = "plants[" + std::to_string(i) + "]";
        PlantSpec plant;
        const json& jid = field(jplant, "id", ctx);
        if (!jid.is_string()) schema_fail(ctx + ".id must be a string");
        plant.id = jid.get<std::string>();
        plant.setup_cost = number_field(jplant, "setup_cost", ctx);
        const json& jperiods = field(jplant, "periods", ctx);
        if (!jperiods.is_array()) schema_fail(ctx + ".periods must be an array");
        for (std::size_t t = 0; t < jperiods.size(); ++t) {
            const std::string pctx = ctx + ".periods[" + std::to_string(t) + "]";
            const json& jp2 = jperiods[t];
            PeriodParams p;
            p.op_cost = number_field(jp2, "op_cost_per_kwh", pctx);
            p.transfer_cost = number_field(jp2, "transfer_cost_per_kwh", pctx);
            p.excess_cost = number_field(jp2, "excess_cost_per_kwh", pctx);
            p.cap_min = number_field(jp2, "cap_min_kw", pctx);
            p.cap_max = number_field(jp2, "cap_max_kw", pctx);
            p.demand = number_field(jp2, "demand_kw", pctx);
            plant.periods.push_back(p);
        }
        problem.plants.push_back(std::move(plant));
    }
    return problem;
}

json problem_to_json(const PlanProblem& problem) {
    json jp;
    jp["horizon"] = problem.horizon;
    jp["required_count"] = problem.required_count;
    jp["discount_rate"] = problem.discount_rate;
    jp["mode"] = problem.mode == DispatchMode::Literal ? "literal" : "rectified";
    jp["allow_shortage"] = problem.allow_shortage;
    json jplants = json::array();
    for (const PlantSpec& plant : problem.plants) {
        json jplant;
        jplant["id"] = plant.id;
        jplant["setup_cost"] = plant.setup_cost;
        json jperiods = json::array();
        for (const PeriodParams& p : plant.periods) {
            jperiods.push_back({{"op_cost_per_kwh", p.op_cost},
                                {"transfer_cost_per_kwh", p.transfer_cost},
                                {"excess_cost_per_kwh", p.excess_cost},
                                {"cap_min_kw", p.cap_min},
                                {"cap_max_kw", p.cap_max},
                                {"demand_kw", p.demand}});
        }
        jplant["periods"] = std::move(jperiods);
        jplants.push_back(std::move(jplant));
    }
    jp["plants"] = std::move(jplants);
    return jp;
}

PvParams pv_from_json(const json& jpv) {
    PvParams pv;
    pv.interest = number_field(jpv, "interest_rate", "pv");
    pv.lifetime = static_cast<int>(number_field(jpv, "lifetime_periods", "pv"));
    pv.op_cost = number_field(jpv, "op_cost_per_period", "pv");
    pv.panel_price = number_field(jpv, "panel_price", "pv");
    pv.consumption = number_field(jpv, "consumption_w_per_year", "pv");
    pv.panel_capacity = number_field(jpv, "panel_capacity_w", "pv");
    return pv;
}

json pv_to_json(const PvParams& pv) {
    return {{"interest_rate", pv.interest},
            {"lifetime_periods", pv.lifetime},
            {"op_cost_per_period", pv.op_cost},
            {"panel_price", pv.panel_price},
            {"consumption_w_per_year", pv.consumption},
            {"panel_capacity_w", pv.panel_capacity}};
}

std::string format_number(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

// Human display: fixed two decimals with thousands separators,
// locale-independent.
std::string human_currency(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << std::fabs(v);
    std::string digits = os.str();
    const std::size_t dot = digits.find('.');
    std::string grouped;
    for (std::size_t i = 0; i < dot; ++i) {
        if (i > 0 && (dot - i) % 3 == 0) grouped += ',';
        grouped += digits[i];
    }
    grouped += digits.substr(dot);
    return (v < 0 ? "-" : "") + grouped;
}

}  // namespace

ScenarioFile parse_scenario(const std::string& text) {
    const json doc = parse_json(text);
    if (!doc.is_object()) schema_fail("top level must be an object");

    ScenarioFile scenario;
    const json& jver = field(doc, "schema_version", "scenario");
    if (!jver.is_string()) schema_fail("schema_version must be a string");
    scenario.schema_version = jver.get<std::string>();
    if (scenario.schema_version != kSchemaVersion)
        schema_fail("unrecognized schema_version \"" + scenario.schema_version + "\"");

    if (doc.contains("metadata")) {
        const json& jm = doc["metadata"];
        if (!jm.is_object()) schema_fail("metadata must be an object");
        if (jm.contains("name")) scenario.metadata.name = jm["name"].get<std::string>();
        if (jm.contains("notes")) scenario.metadata.notes = jm["notes"].get<std::string>();
    }

    scenario.problem = problem_from_json(field(doc, "problem", "scenario"));

    if (doc.contains("pv") && !doc["pv"].is_null()) scenario.pv = pv_from_json(doc["pv"]);

    if (doc.contains("mc") && !doc["mc"].is_null()) {
        const json& jmc = doc["mc"];
        McOverlay mc;
        mc.replications = static_cast<int>(number_field(jmc, "replications", "mc"));
        mc.seed = static_cast<std::uint64_t>(number_field(jmc, "seed", "mc"));
        if (jmc.contains("demand_spread")) mc.spread = jmc["demand_spread"].get<double>();
        if (jmc.contains("demand_low"))
            mc.demand_low = matrix_field(jmc["demand_low"], "mc.demand_low");
        if (jmc.contains("demand_high"))
            mc.demand_high = matrix_field(jmc["demand_high"], "mc.demand_high");
        if (mc.demand_low.has_value() != mc.demand_high.has_value())
            schema_fail("mc.demand_low and mc.demand_high must be given together");
        scenario.mc = mc;
    }

    scenario.violations = validate_problem(scenario.problem);
    if (scenario.pv) {
        std::vector<Violation> pv_violations = validate_pv_params(*scenario.pv);
        scenario.violations.insert(scenario.violations.end(), pv_violations.begin(),
                                   pv_violations.end());
    }
    return scenario;
}

ScenarioFile load_scenario(const std::string& path) { return parse_scenario(read_file(path)); }

std::string scenario_to_string(const ScenarioFile& scenario) {
    json doc;
    doc["schema_version"] = scenario.schema_version;
    doc["metadata"] = {{"name", scenario.metadata.name}, {"notes", scenario.metadata.notes}};
    doc["problem"] = problem_to_json(scenario.problem);
    if (scenario.pv) doc["pv"] = pv_to_json(*scenario.pv);
    if (scenario.mc) {
        json jmc;
        jmc["replications"] = scenario.mc->replications;
        jmc["seed"] = scenario.mc->seed;
        if (scenario.mc->spread) jmc["demand_spread"] = *scenario.mc->spread;
        if (scenario.mc->demand_low) jmc["demand_low"] = matrix_to_json(*scenario.mc->demand_low);
        if (scenario.mc->demand_high)
            jmc["demand_high"] = matrix_to_json(*scenario.mc->demand_high);
        doc["mc"] = std::move(jmc);
    }
    return doc.dump(2) + "\n";
}

void save_scenario(const ScenarioFile& scenario, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ScenarioError(ScenarioError::Category::MissingFile,
                            "cannot write scenario file: " + path);
    out << scenario_to_string(scenario);
}

McConfig mc_config_from_scenario(const ScenarioFile& scenario) {
    const McOverlay overlay = scenario.mc.value_or(McOverlay{});
    if (overlay.demand_low && overlay.demand_high) {
        McConfig cfg = make_mc_config(scenario.problem, 0.0, overlay.replications, overlay.seed);
        cfg.demand_low = *overlay.demand_low;
        cfg.demand_high = *overlay.demand_high;
        return cfg;
    }
    return make_mc_config(scenario.problem, overlay.spread.value_or(0.0), overlay.replications,
                          overlay.seed);
}

ReportBundle bundle_from_solution(const PlanProblem& problem, const PlanSolution& solution) {
    ReportBundle bundle;
    std::vector<SolutionRow> rows;
    for (std::size_t j = 0; j < problem.plants.size(); ++j) {
        for (int t = 1; t <= problem.horizon; ++t) {
            SolutionRow row;
            row.id = problem.plants[j].id;
            row.t = t;
            row.y = solution.selected[j];
            row.z = solution.production[j][t - 1];
            row.k = solution.surplus[j][t - 1];
            row.period_cost = cell_cost(problem, solution, static_cast<int>(j), t);
            rows.push_back(std::move(row));
        }
    }
    bundle.solution_rows = std::move(rows);
    bundle.objective = solution.objective;
    return bundle;
}

namespace {

json mc_to_json(const McReport& mc) {
    json j;
    j["replications_run"] = mc.replications_run;
    j["infeasible_count"] = mc.infeasible_count;
    if (mc.all_infeasible) {
        // Absent statistics stay absent rather than reading as zero cost.
        j["statistics"] = nullptr;
    } else {
        j["statistics"] = {{"cost_mean", mc.cost_mean},
                           {"cost_stddev", mc.cost_stddev},
                           {"cost_p5", mc.cost_p5},
                           {"cost_p50", mc.cost_p50},
                           {"cost_p95", mc.cost_p95},
                           {"waste_rate_mean", mc.waste_rate_mean},
                           {"selection_frequency", mc.selection_frequency}};
    }
    return j;
}

McReport mc_from_json(const json& j) {
    McReport mc;
    mc.replications_run = j.at("replications_run").get<int>();
    mc.infeasible_count = j.at("infeasible_count").get<int>();
    if (j.at("statistics").is_null()) {
        mc.all_infeasible = true;
        return mc;
    }
    const json& s = j.at("statistics");
    mc.cost_mean = s.at("cost_mean").get<double>();
    mc.cost_stddev = s.at("cost_stddev").get<double>();
    mc.cost_p5 = s.at("cost_p5").get<double>();
    mc.cost_p50 = s.at("cost_p50").get<double>();
    mc.cost_p95 = s.at("cost_p95").get<double>();
    mc.waste_rate_mean = s.at("waste_rate_mean").get<double>();
    mc.selection_frequency = s.at("selection_frequency").get<std::vector<double>>();
    return mc;
}

const char* cheaper_name(ComparisonReport::Cheaper c) {
    switch (c) {
        case ComparisonReport::Cheaper::Plant: return "plant";
        case ComparisonReport::Cheaper::Rooftop: return "rooftop";
        case ComparisonReport::Cheaper::Tie: return "tie";
    }
    return "tie";
}

json report_to_json(const ReportBundle& bundle) {
    json doc;
    if (bundle.solution_rows) {
        json rows = json::array();
        for (const SolutionRow& r : *bundle.solution_rows)
            rows.push_back({{"id", r.id},
                            {"t", r.t},
                            {"y", r.y},
                            {"z", r.z},
                            {"k", r.k},
                            {"period_cost", r.period_cost}});
        doc["solution"] = {{"rows", std::move(rows)}};
    } else {
        doc["solution"] = nullptr;
    }
    doc["objective"] = bundle.objective ? json(*bundle.objective) : json(nullptr);
    if (bundle.pv) {
        doc["pv"] = {{"z_stationary", bundle.pv->z_stationary},
                     {"z_star", bundle.pv->z_star},
                     {"f_star", bundle.pv->f_star},
                     {"f_star_magnitude", std::fabs(bundle.pv->f_star)},
                     {"beta", bundle.pv->beta},
                     {"panels", bundle.pv->panels}};
    } else {
        doc["pv"] = nullptr;
    }
    if (bundle.link) {
        doc["link"] = {{"z_breakeven", bundle.link->z_breakeven},
                       {"n_star", bundle.link->n_star},
                       {"n_star_ceil", bundle.link->n_star_ceil},
                       {"residual", bundle.link->residual}};
    } else {
        doc["link"] = nullptr;
    }
    doc["mc"] = bundle.mc ? mc_to_json(*bundle.mc) : json(nullptr);
    if (bundle.comparison) {
        doc["comparison"] = {{"plan_cost", bundle.comparison->plan_cost},
                             {"pv_cost_magnitude", bundle.comparison->pv_cost_magnitude},
                             {"cheaper", cheaper_name(bundle.comparison->cheaper)},
                             {"waste_rate", bundle.comparison->waste_rate}};
    } else {
        doc["comparison"] = nullptr;
    }
    return doc;
}

void write_human(const ReportBundle& bundle, std::ostream& out) {
    if (bundle.solution_rows) {
        out << "plant dispatch\n";
        out << "  id            t  Y  Z (kWh)        K (kWh)        period cost\n";
        for (const SolutionRow& r : *bundle.solution_rows) {
            out << "  " << std::left << std::setw(12) << r.id << std::right << "  " << r.t << "  "
                << r.y << "  " << std::setw(12) << human_currency(r.z) << "  " << std::setw(12)
                << human_currency(r.k) << "  " << human_currency(r.period_cost) << "\n";
        }
    }
    if (bundle.objective) out << "objective: " << human_currency(*bundle.objective) << "\n";
    if (bundle.pv) {
        out << "pv optimum\n";
        out << "  beta:          " << format_number(bundle.pv->beta) << "\n";
        out << "  z_stationary:  " << format_number(bundle.pv->z_stationary) << "\n";
        out << "  z_star:        " << format_number(bundle.pv->z_star) << "\n";
        out << "  f_star:        " << human_currency(bundle.pv->f_star) << " (magnitude "
            << human_currency(std::fabs(bundle.pv->f_star)) << ")\n";
        out << "  panels (A/B):  " << format_number(bundle.pv->panels) << "\n";
    }
    if (bundle.link) {
        out << "model linkage\n";
        out << "  z_breakeven:  " << format_number(bundle.link->z_breakeven) << "\n";
        out << "  n_star:       " << format_number(bundle.link->n_star) << " (ceil "
            << bundle.link->n_star_ceil << ")\n";
        out << "  residual:     " << format_number(bundle.link->residual) << "\n";
    }
    if (bundle.mc) {
        const McReport& mc = *bundle.mc;
        out << "monte carlo (" << mc.replications_run << " replications, " << mc.infeasible_count
            << " infeasible)\n";
        if (mc.all_infeasible) {
            out << "  statistics: absent (every replication infeasible)\n";
        } else {
            out << "  cost mean:    " << human_currency(mc.cost_mean) << "\n";
            out << "  cost stddev:  " << human_currency(mc.cost_stddev) << "\n";
            out << "  cost p5/p50/p95: " << human_currency(mc.cost_p5) << " / "
                << human_currency(mc.cost_p50) << " / " << human_currency(mc.cost_p95) << "\n";
            out << "  waste rate mean: " << format_number(mc.waste_rate_mean) << "\n";
            out << "  selection frequency:";
            for (double f : mc.selection_frequency) out << " " << format_number(f);
            out << "\n";
        }
    }
    if (bundle.comparison) {
        out << "model comparison\n";
        out << "  plant model cost:    " << human_currency(bundle.comparison->plan_cost) << "\n";
        out << "  rooftop |f_star|:    " << human_currency(bundle.comparison->pv_cost_magnitude)
            << "\n";
        out << "  cheaper:             " << cheaper_name(bundle.comparison->cheaper) << "\n";
        out << "  plant waste rate:    " << format_number(bundle.comparison->waste_rate) << "\n";
    }
}

void write_csv(const ReportBundle& bundle, std::ostream& out) {
    out << "id,t,Y,Z,K,period_cost\n";
    if (!bundle.solution_rows) return;
    for (const SolutionRow& r : *bundle.solution_rows) {
        out << r.id << "," << r.t << "," << r.y << "," << format_number(r.z) << ","
            << format_number(r.k) << "," << format_number(r.period_cost) << "\n";
    }
}

}  // namespace

void export_report(const ReportBundle& bundle, ReportFormat format, std::ostream& out) {
    switch (format) {
        case ReportFormat::Human: write_human(bundle, out); break;
        case ReportFormat::Csv: write_csv(bundle, out); break;
        case ReportFormat::Json: out << report_to_json(bundle).dump(2) << "\n"; break;
    }
}

void export_report(const ReportBundle& bundle, ReportFormat format, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ScenarioError(ScenarioError::Category::MissingFile,
                            "cannot write report file: " + path);
    export_report(bundle, format, out);
}

std::string report_to_string(const ReportBundle& bundle, ReportFormat format) {
    std::ostringstream os;
    export_report(bundle, format, os);
    return os.str();
}

ReportBundle load_report(const std::string& path) {
    const json doc = parse_json(read_file(path));
    ReportBundle bundle;
    if (!doc.at("solution").is_null()) {
        std::vector<SolutionRow> rows;
        for (const json& jr : doc.at("solution").at("rows")) {
            SolutionRow r;
            r.id = jr.at("id").get<std::string>();
            r.t = jr.at("t").get<int>();
            r.y = jr.at("y").get<int>();
            r.z = jr.at("z").get<double>();
            r.k = jr.at("k").get<double>();
            r.period_cost = jr.at("period_cost").get<double>();
            rows.push_back(std::move(r));
        }
        bundle.solution_rows = std::move(rows);
    }
    if (!doc.at("objective").is_null()) bundle.objective = doc.at("objective").get<double>();
    if (!doc.at("pv").is_null()) {
        PvResult pv;
        pv.z_stationary = doc.at("pv").at("z_stationary").get<double>();
        pv.z_star = doc.at("pv").at("z_star").get<double>();
        pv.f_star = doc.at("pv").at("f_star").get<double>();
        pv.beta = doc.at("pv").at("beta").get<double>();
        pv.panels = doc.at("pv").at("panels").get<double>();
        bundle.pv = pv;
    }
    if (!doc.at("link").is_null()) {
        LinkResult link;
        link.z_breakeven = doc.at("link").at("z_breakeven").get<double>();
        link.n_star = doc.at("link").at("n_star").get<double>();
        link.n_star_ceil = doc.at("link").at("n_star_ceil").get<long long>();
        link.residual = doc.at("link").at("residual").get<double>();
        bundle.link = link;
    }
    if (!doc.at("mc").is_null()) bundle.mc = mc_from_json(doc.at("mc"));
    if (!doc.at("comparison").is_null()) {
        ComparisonReport cmp;
        const json& jc = doc.at("comparison");
        cmp.plan_cost = jc.at("plan_cost").get<double>();
        cmp.pv_cost_magnitude = jc.at("pv_cost_magnitude").get<double>();
        const std::string c = jc.at("cheaper").get<std::string>();
        cmp.cheaper = c == "plant" ? ComparisonReport::Cheaper::Plant
                     : c == "rooftop" ? ComparisonReport::Cheaper::Rooftop
                                      : ComparisonReport::Cheaper::Tie;
        cmp.waste_rate = jc.at("waste_rate").get<double>();
        bundle.comparison = cmp;
    }
    return bundle;
}

ReportFormat parse_report_format(const std::string& name) {
    if (name == "human") return ReportFormat::Human;
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    throw std::invalid_argument("unknown report format: " + name);
}

}  // namespace solarplan
