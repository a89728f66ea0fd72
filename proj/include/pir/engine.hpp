#pragma once

// One simulated day runs six stages:
//   1. routine order placed and received (lead time zero)
//   2. morning demand met
//   3. yesterday's unused issues come back; expired and slipped units are discarded
//   4. afternoon demand met
//   5. stock ages one day; units on their last day expire
//   6. reward computed, returns-in-transit recorded, weekday advanced
//
// The day is generic over its source of randomness so tests can inject
// hand-chosen draws. Production code uses DayStreams.

#include <concepts>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "pir/core.hpp"
#include "pir/policies.hpp"
#include "pir/rng.hpp"

namespace pir {

template <class D>
concept DayDrawSource = requires(const D& d, int n, const AgeProfile& p, Half h, int k, double x) {
    { d.arrivals(n, p) } -> std::same_as<StockVector>;
    { d.demand(h, x) } -> std::convertible_to<int>;
    { d.label_uniform(h, k) } -> std::convertible_to<double>;
    { d.prediction_uniform(h, k) } -> std::convertible_to<double>;
    { d.emergency_uniform(h, k, k) } -> std::convertible_to<double>;
    { d.slippage(k, n, x) } -> std::convertible_to<int>;
};

static_assert(DayDrawSource<DayStreams>);

struct RequestLog {
    bool true_label = false;
    bool predicted = false;
    /// Stock index the unit came from, or the sampled age index for an emergency unit.
    int index = 0;
    bool emergency = false;

    friend bool operator==(const RequestLog&, const RequestLog&) = default;
};

/// Running tallies while meeting demand.
struct IssueCounters {
    long emergency = 0;
    long transfused = 0;
};

struct IssueOutcome {
    StockVector stock;
    StockVector issued_today;
    long emergency_count = 0;
    long transfused = 0;
    std::vector<RequestLog> requests;
};

/// Issues a single unit for a request and books it as transfused or as a
/// future return. Falls back to an emergency unit when stock is empty.
inline RequestLog issue_unit(StockVector& stock, StockVector& issued_today, IssueCounters& counters,
                             bool true_label, bool freshest, double emergency_u, const AgeProfile& profile) {
    RequestLog log{true_label, freshest, 0, false};
    if (!stock.empty()) {
        int idx = choose_issue_index(stock, freshest);
        --stock[idx];
        log.index = idx;
    } else {
        ++counters.emergency;
        log.index = sample_category(profile, emergency_u);
        log.emergency = true;
    }
    if (true_label) {
        ++issued_today[log.index];
    } else {
        ++counters.transfused;
    }
    return log;
}

/// Meets `demand` single-unit requests one at a time, updating stock and the
/// issued-today vector in place.
template <DayDrawSource D>
void meet_demand_in_place(StockVector& stock, StockVector& issued_today, IssueCounters& counters, int demand,
                          const IssuingPolicy& issuing, double return_rate, const AgeProfile& profile,
                          const D& draws, Half half, std::vector<RequestLog>* log = nullptr) {
    for (int k = 0; k < demand; ++k) {
        bool label = draws.label_uniform(half, k) < return_rate;
        bool freshest = issuing.issue_freshest(label, draws.prediction_uniform(half, k));
        RequestLog entry =
            issue_unit(stock, issued_today, counters, label, freshest, draws.emergency_uniform(half, k, 0), profile);
        if (log) log->push_back(entry);
    }
}

template <DayDrawSource D>
IssueOutcome meet_demand(StockVector stock, StockVector issued_today, long emergency_count, int demand,
                         const IssuingPolicy& issuing, double return_rate, const AgeProfile& profile,
                         const D& draws, Half half) {
    IssueCounters counters{emergency_count, 0};
    IssueOutcome out;
    out.requests.reserve(static_cast<std::size_t>(std::max(demand, 0)));
    meet_demand_in_place(stock, issued_today, counters, demand, issuing, return_rate, profile, draws, half,
                         &out.requests);
    out.stock = std::move(stock);
    out.issued_today = std::move(issued_today);
    out.emergency_count = counters.emergency;
    out.transfused = counters.transfused;
    return out;
}

struct ReturnsOutcome {
    long slippage = 0;
    long expired_after_issue = 0;
};

/// Moves yesterday's returns into stock, discarding slipped and expired units.
template <DayDrawSource D>
ReturnsOutcome process_returns_in_place(StockVector& stock, const PendingReturns& pending, double slippage_rate,
                                        const D& draws) {
    ReturnsOutcome out;
    const int m = stock.size();
    for (int i = 0; i + 1 < m; ++i) {
        int returned = pending[i];
        if (returned == 0) continue;
        int slipped = draws.slippage(i, returned, slippage_rate);
        stock[i + 1] += returned - slipped;
        out.slippage += slipped;
    }
    out.expired_after_issue = pending[m - 1];
    return out;
}

struct ReturnsResult {
    StockVector stock;
    long slippage = 0;
    long expired_after_issue = 0;
};

template <DayDrawSource D>
ReturnsResult process_returns(StockVector stock, const PendingReturns& pending, double slippage_rate,
                              const D& draws) {
    ReturnsOutcome o = process_returns_in_place(stock, pending, slippage_rate, draws);
    return {std::move(stock), o.slippage, o.expired_after_issue};
}

/// Ages stock by one day in place; returns the number of units that expired.
long age_stock_in_place(StockVector& stock);

/// Value form of age_stock_in_place.
std::pair<StockVector, long> age_stock(StockVector stock);

/// Reward for one day. Units that expired after issue are charged at C_w / gamma
/// because they are booked a day late.
double compute_reward(long order, long end_stock, long emergency, long wasted, long expired_after_issue,
                      const CostParams& costs);

/// Runs one day, mutating `state`. `order` must already respect max_order.
template <DayDrawSource D>
DayRecord simulate_day(SimState& state, int order, const ScenarioConfig& cfg, const IssuingPolicy& issuing,
                       const D& draws) {
    const auto tau = static_cast<std::size_t>(state.weekday);
    const AgeProfile& profile = cfg.age_profiles[tau];
    const double half_mean = cfg.demand_means[tau] / 2.0;
    const int m = cfg.max_life;
    DayRecord rec;
    StockVector& stock = state.stock;

    // 1. order arrives
    rec.order_placed = order;
    rec.received_routine = order;
    if (order > 0) {
        StockVector arrivals = draws.arrivals(order, profile);
        for (int i = 0; i < m; ++i) stock[i] += arrivals[i];
    }

    StockVector issued_today(m);
    IssueCounters counters;

    // 2. morning demand
    int am = draws.demand(Half::Am, half_mean);
    meet_demand_in_place(stock, issued_today, counters, am, issuing, cfg.return_rate, profile, draws, Half::Am);

    // 3. returns from yesterday
    ReturnsOutcome ret = process_returns_in_place(stock, state.pending, cfg.slippage_rate, draws);

    // 4. afternoon demand
    int pm = draws.demand(Half::Pm, half_mean);
    meet_demand_in_place(stock, issued_today, counters, pm, issuing, cfg.return_rate, profile, draws, Half::Pm);

    // 5. ageing
    long expired = age_stock_in_place(stock);

    // 6. bookkeeping
    rec.demand_am = am;
    rec.demand_pm = pm;
    rec.demand_total = am + pm;
    rec.emergency_units = counters.emergency;
    rec.received_emergency = counters.emergency;
    rec.transfused = counters.transfused;
    rec.wasted_expiry_in_stock = expired;
    rec.wasted_slippage = ret.slippage;
    rec.wasted_expired_after_issue = ret.expired_after_issue;
    rec.end_stock = stock.total();
    rec.reward = compute_reward(order, rec.end_stock, rec.emergency_units, expired + ret.slippage,
                                ret.expired_after_issue, cfg.costs);
    state.pending.counts = std::move(issued_today.counts);
    state.weekday = (state.weekday + 1) % kDaysPerWeek;
    return rec;
}

struct StepResult {
    SimState state;
    double reward = 0.0;
    DayRecord record;
};

/// Value-semantics single step with an explicit action.
template <DayDrawSource D>
StepResult step(SimState state, int action, const ScenarioConfig& cfg, const IssuingPolicy& issuing,
                const D& draws) {
    DayRecord rec = simulate_day(state, action, cfg, issuing, draws);
    return {std::move(state), rec.reward, rec};
}

/// Called once per simulated day with (day, weekday at start of day, record).
using DayObserver = std::function<void(int, int, const DayRecord&)>;

/// Runs `horizon` days from an empty state on Monday. Days before `warmup` are
/// simulated but not scored. `day_draws(day)` must return a DayDrawSource.
template <class DrawFactory>
RolloutResult run_rollout(const ScenarioConfig& cfg, const PolicySpec& policy, int horizon, int warmup,
                          DrawFactory&& day_draws, const DayObserver* observer = nullptr) {
    RolloutResult result;
    SimState state = SimState::empty(cfg.max_life);
    double weight = 1.0;
    for (int day = 0; day < horizon; ++day) {
        const int weekday = state.weekday;
        int order = order_quantity(Observation{weekday, state.stock.total()}, policy.replenishment);
        DayRecord rec = simulate_day(state, order, cfg, policy.issuing, day_draws(day));
        result.lifetime.add(rec);
        if (day >= warmup) {
            result.scored.add(rec, weight);
            weight *= cfg.costs.discount;
            ++result.days_counted;
        }
        if (observer && *observer) (*observer)(day, weekday, rec);
    }
    result.final_stock = state.stock.total();
    result.final_pending = state.pending.total();
    return result;
}

/// Rollout `rollout_index` of `master_seed`, driven by keyed substreams.
RolloutResult rollout(const ScenarioConfig& cfg, const PolicySpec& policy, int horizon, int warmup,
                      std::uint64_t rollout_index, std::uint64_t master_seed, const DayObserver* observer = nullptr);

}  // namespace pir
