#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pir/core.hpp"

namespace pir::fixtures {

/// Hand-chosen draws for one day. Every accessor fails loudly when asked for
/// a draw the fixture did not script.
struct ScriptedDraws {
    StockVector arrival_counts;
    int am_demand = 0;
    int pm_demand = 0;
    std::vector<double> am_label, pm_label;
    std::vector<double> am_pred, pm_pred;
    std::vector<double> am_emergency, pm_emergency;
    std::map<int, int> slipped;  // life index -> slipped units

    StockVector arrivals(int n, const AgeProfile&) const {
        if (arrival_counts.total() != n) throw std::logic_error("scripted arrivals do not match order");
        return arrival_counts;
    }
    int demand(Half h, double) const { return h == Half::Am ? am_demand : pm_demand; }
    double label_uniform(Half h, int k) const { return pick(h == Half::Am ? am_label : pm_label, k); }
    double prediction_uniform(Half h, int k) const { return pick(h == Half::Am ? am_pred : pm_pred, k); }
    double emergency_uniform(Half h, int k, int) const {
        const auto& v = h == Half::Am ? am_emergency : pm_emergency;
        return k < static_cast<int>(v.size()) ? v[static_cast<std::size_t>(k)] : 0.5;
    }
    int slippage(int index, int trials, double) const {
        auto it = slipped.find(index);
        int s = it == slipped.end() ? 0 : it->second;
        if (s > trials) throw std::logic_error("scripted slippage exceeds trials");
        return s;
    }

private:
    static double pick(const std::vector<double>& v, int k) {
        if (k >= static_cast<int>(v.size())) throw std::logic_error("unscripted request draw");
        return v[static_cast<std::size_t>(k)];
    }
};

/// Five-day life, flat arrival profile, default costs.
inline ScenarioConfig flat_scenario(double mean = 0.0, double return_rate = 0.0, double slippage = 0.0) {
    ScenarioConfig cfg;
    cfg.max_life = 5;
    cfg.demand_means.fill(mean);
    cfg.return_rate = return_rate;
    cfg.slippage_rate = slippage;
    for (auto& p : cfg.age_profiles) p.probabilities = {0.2, 0.2, 0.2, 0.2, 0.2};
    return cfg;
}

/// Every arriving unit is fresh.
inline ScenarioConfig fresh_scenario(int max_life, double mean = 0.0) {
    ScenarioConfig cfg;
    cfg.max_life = max_life;
    cfg.demand_means.fill(mean);
    for (auto& p : cfg.age_profiles) {
        p.probabilities.assign(static_cast<std::size_t>(max_life), 0.0);
        p.probabilities[0] = 1.0;
    }
    return cfg;
}

}  // namespace pir::fixtures
