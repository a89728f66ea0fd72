#include "pir/engine.hpp"

namespace pir {

long age_stock_in_place(StockVector& stock) {
    const int m = stock.size();
    if (m == 0) return 0;
    long expired = stock[m - 1];
    for (int i = m - 1; i > 0; --i) stock[i] = stock[i - 1];
    stock[0] = 0;
    return expired;
}

std::pair<StockVector, long> age_stock(StockVector stock) {
    long expired = age_stock_in_place(stock);
    return {std::move(stock), expired};
}

double compute_reward(long order, long end_stock, long emergency, long wasted, long expired_after_issue,
                      const CostParams& costs) {
    double cost = 0.0;
    if (order > 0) cost += costs.fixed_order_cost;
    cost += costs.variable_order_cost * static_cast<double>(order);
    cost += costs.holding_cost * static_cast<double>(end_stock);
    cost += costs.shortage_cost * static_cast<double>(emergency);
    cost += costs.wastage_cost *
            (static_cast<double>(wasted) + static_cast<double>(expired_after_issue) / costs.discount);
    return -cost;
}

RolloutResult rollout(const ScenarioConfig& cfg, const PolicySpec& policy, int horizon, int warmup,
                      std::uint64_t rollout_index, std::uint64_t master_seed, const DayObserver* observer) {
    RngStreams streams(master_seed, rollout_index);
    return run_rollout(cfg, policy, horizon, warmup, [&](int day) { return streams.day(day); }, observer);
}

}  // namespace pir
