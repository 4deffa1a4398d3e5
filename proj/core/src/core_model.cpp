#include "solarplan/core_model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace solarplan {

std::string Violation::format() const {
    std::ostringstream os;
    os << rule;
    if (plant >= 0) os << " [plant " << plant << "]";
    if (period >= 0) os << " [period " << period << "]";
    if (!detail.empty()) os << ": " << detail;
    return os.str();
}

double discount_factor(double rate, int t) {
    if (!(rate > -1.0)) throw std::domain_error("discount_factor: rate must be > -1");
    if (t < 1) throw std::domain_error("discount_factor: period index must be >= 1");
    return std::pow(1.0 + rate, -t);
}

double annuity_factor(double interest, int lifetime) {
    if (!(interest > 0.0)) throw std::domain_error("annuity_factor: interest must be > 0");
    if (lifetime < 1) throw std::domain_error("annuity_factor: lifetime must be >= 1");
    return (1.0 - std::pow(1.0 + interest, -lifetime)) / (interest * (interest + 1.0));
}

double annuity_factor(const PvParams& params) {
    return annuity_factor(params.interest, params.lifetime);
}

namespace {

void require(bool ok, std::vector<Violation>& out, std::string rule, int plant, int period,
             std::string detail) {
    if (!ok) out.push_back({std::move(rule), plant, period, std::move(detail)});
}

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

std::vector<Violation> validate_problem(const PlanProblem& problem) {
    std::vector<Violation> out;
    const int m = static_cast<int>(problem.plants.size());

    require(problem.horizon >= 1, out, "horizon", -1, -1,
            "horizon must be >= 1, got " + std::to_string(problem.horizon));
    require(problem.required_count >= 0 && problem.required_count <= m, out, "plant-count", -1, -1,
            "required_count " + std::to_string(problem.required_count) +
                " outside [0, " + std::to_string(m) + "]");
    require(problem.discount_rate > -1.0, out, "discount-rate", -1, -1,
            "discount_rate must be > -1, got " + num(problem.discount_rate));

    for (int j = 0; j < m; ++j) {
        const PlantSpec& plant = problem.plants[j];
        require(plant.setup_cost >= 0.0, out, "setup-cost", j, -1,
                "setup_cost must be >= 0, got " + num(plant.setup_cost));
        require(static_cast<int>(plant.periods.size()) == problem.horizon, out, "period-count", j,
                -1,
                "plant has " + std::to_string(plant.periods.size()) + " periods, horizon is " +
                    std::to_string(problem.horizon));
        for (int t = 0; t < static_cast<int>(plant.periods.size()); ++t) {
            const PeriodParams& p = plant.periods[t];
            require(p.cap_min >= 0.0, out, "capacity-bounds", j, t,
                    "cap_min must be >= 0, got " + num(p.cap_min));
            require(p.cap_min <= p.cap_max, out, "capacity-bounds", j, t,
                    "cap_min " + num(p.cap_min) + " exceeds cap_max " + num(p.cap_max));
            require(p.op_cost >= 0.0, out, "nonnegative-cost", j, t, "op_cost < 0");
            require(p.transfer_cost >= 0.0, out, "nonnegative-cost", j, t, "transfer_cost < 0");
            require(p.excess_cost >= 0.0, out, "nonnegative-cost", j, t, "excess_cost < 0");
            require(p.demand >= 0.0, out, "nonnegative-demand", j, t,
                    "demand must be >= 0, got " + num(p.demand));
        }
    }
    return out;
}

std::vector<Violation> validate_pv_params(const PvParams& params) {
    std::vector<Violation> out;
    require(params.interest > 0.0, out, "pv-interest", -1, -1, "interest must be > 0");
    require(params.lifetime >= 1, out, "pv-lifetime", -1, -1, "lifetime must be >= 1");
    require(params.op_cost > 0.0, out, "pv-op-cost", -1, -1, "op_cost must be > 0");
    require(params.panel_price > 0.0, out, "pv-panel-price", -1, -1, "panel_price must be > 0");
    require(params.consumption > 0.0, out, "pv-consumption", -1, -1, "consumption must be > 0");
    require(params.panel_capacity > 0.0, out, "pv-panel-capacity", -1, -1,
            "panel_capacity must be > 0");
    return out;
}

}  // namespace solarplan
