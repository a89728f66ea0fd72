#include "pir/policies.hpp"

#include <algorithm>
#include <sstream>
#include <type_traits>

#include "pir/error.hpp"

namespace pir {

bool WeeklySSPolicy::constraint_satisfied() const {
    for (int d = 0; d < kDaysPerWeek; ++d) {
        auto i = static_cast<std::size_t>(d);
        if (!(reorder_point[i] < order_up_to[i])) return false;
    }
    return true;
}

std::array<int, 2 * kDaysPerWeek> WeeklySSPolicy::to_genome() const {
    std::array<int, 2 * kDaysPerWeek> g{};
    for (std::size_t d = 0; d < kDaysPerWeek; ++d) {
        g[2 * d] = reorder_point[d];
        g[2 * d + 1] = order_up_to[d];
    }
    return g;
}

WeeklySSPolicy WeeklySSPolicy::from_genome(const std::array<int, 2 * kDaysPerWeek>& genome) {
    WeeklySSPolicy p;
    for (std::size_t d = 0; d < kDaysPerWeek; ++d) {
        p.reorder_point[d] = genome[2 * d];
        p.order_up_to[d] = genome[2 * d + 1];
    }
    return p;
}

int standing_order_action(const Observation&, const StandingOrderPolicy& policy) { return policy.quantity; }

int ss_action(const Observation& obs, const WeeklySSPolicy& policy) {
    if (!policy.constraint_satisfied()) return 0;
    auto d = static_cast<std::size_t>(obs.weekday);
    if (obs.total_stock > policy.reorder_point[d]) return 0;
    return static_cast<int>(std::max<long>(policy.order_up_to[d] - obs.total_stock, 0));
}

int order_quantity(const Observation& obs, const ReplenishmentPolicy& policy) {
    return std::visit(
        [&](const auto& p) {
            if constexpr (std::is_same_v<std::decay_t<decltype(p)>, StandingOrderPolicy>) {
                return standing_order_action(obs, p);
            } else {
                return ss_action(obs, p);
            }
        },
        policy);
}

void validate_policy(const ReplenishmentPolicy& policy, int max_order) {
    auto in_range = [&](int v) { return v >= 0 && v <= max_order; };
    if (const auto* so = std::get_if<StandingOrderPolicy>(&policy)) {
        if (!in_range(so->quantity)) throw InputError("standing order quantity outside [0, max_order]");
        return;
    }
    const auto& ss = std::get<WeeklySSPolicy>(policy);
    for (int d = 0; d < kDaysPerWeek; ++d) {
        auto i = static_cast<std::size_t>(d);
        if (!in_range(ss.reorder_point[i]) || !in_range(ss.order_up_to[i])) {
            throw InputError("(s,S) parameter for weekday " + std::to_string(d) + " outside [0, max_order]");
        }
    }
}

bool predict(bool true_label, const PredictorSpec& spec, double u, std::size_t request_ordinal) {
    if (const auto* sim = std::get_if<SimulatedPredictor>(&spec)) {
        return true_label ? (u < sim->sensitivity) : (u > sim->specificity);
    }
    const auto& trace = std::get<TracePredictor>(spec);
    if (request_ordinal >= trace.labels.size()) {
        throw InputError("trace predictor has no label for request " + std::to_string(request_ordinal) + " (only " +
                         std::to_string(trace.labels.size()) + " recorded)");
    }
    return trace.labels[request_ordinal] != 0;
}

void validate_issuing(const IssuingPolicy& issuing) {
    if (const auto* sim = std::get_if<SimulatedPredictor>(&issuing.predictor)) {
        auto ok = [](double p) { return p >= 0.0 && p <= 1.0; };
        if (!ok(sim->sensitivity) || !ok(sim->specificity)) {
            throw InputError("sensitivity and specificity must lie in [0, 1]");
        }
    }
}

std::string describe(const IssuingPolicy& issuing) {
    switch (issuing.mode) {
        case IssuingMode::Oufo: return "oufo";
        case IssuingMode::Yufo: return "yufo";
        case IssuingMode::Yupr: break;
    }
    if (const auto* sim = std::get_if<SimulatedPredictor>(&issuing.predictor)) {
        std::ostringstream os;
        os << "yupr(" << sim->sensitivity << "," << sim->specificity << ")";
        return os.str();
    }
    return "yupr(trace)";
}

int choose_issue_index(const StockVector& stock, bool freshest) {
    const int n = stock.size();
    if (freshest) {
        for (int i = 0; i < n; ++i) {
            if (stock[i] > 0) return i;
        }
    } else {
        for (int i = n - 1; i >= 0; --i) {
            if (stock[i] > 0) return i;
        }
    }
    throw InvariantError("cannot issue from an empty stock vector");
}

}  // namespace pir
