#include <gtest/gtest.h>

#include <random>

#include "oracle_fixtures.hpp"
#include "pir/engine.hpp"
#include "pir/error.hpp"
#include "support.hpp"

using namespace pir;
using pir::fixtures::ScriptedDraws;

namespace {

ScriptedDraws single_request(double label_u, double pred_u) {
    ScriptedDraws d;
    d.am_label = {label_u};
    d.am_pred = {pred_u};
    return d;
}

WeeklySSPolicy uniform_ss(int s, int S) {
    WeeklySSPolicy p;
    p.reorder_point.fill(s);
    p.order_up_to.fill(S);
    return p;
}

}  // namespace

// --- stage oracles ----------------------------------------------------------

TEST(MeetDemand, ReturnedRequestPositivePrediction) {
    auto profile = AgeProfile{{0.2, 0.2, 0.2, 0.2, 0.2}};
    // true label forced to 1 (u < rho = 1), alpha = 1
    auto out = meet_demand(StockVector(std::vector<int>{2, 0, 0, 0, 1}), StockVector(5), 0, 1,
                           IssuingPolicy::yupr(1.0, 1.0), 1.0, profile, single_request(0.5, 0.5), Half::Am);
    EXPECT_EQ(out.stock, StockVector(std::vector<int>{1, 0, 0, 0, 1}));
    EXPECT_EQ(out.issued_today, StockVector(std::vector<int>{1, 0, 0, 0, 0}));
    EXPECT_EQ(out.emergency_count, 0);
    ASSERT_EQ(out.requests.size(), 1u);
    EXPECT_EQ(out.requests[0].index, 0);
}

TEST(MeetDemand, TransfusedRequestNegativePrediction) {
    auto profile = AgeProfile{{0.2, 0.2, 0.2, 0.2, 0.2}};
    // true label forced to 0 (rho = 0), beta = 1
    auto out = meet_demand(StockVector(std::vector<int>{2, 0, 0, 0, 1}), StockVector(5), 0, 1,
                           IssuingPolicy::yupr(1.0, 1.0), 0.0, profile, single_request(0.5, 0.5), Half::Am);
    EXPECT_EQ(out.stock, StockVector(std::vector<int>{2, 0, 0, 0, 0}));
    EXPECT_EQ(out.issued_today, StockVector(5));
    EXPECT_EQ(out.transfused, 1);
}

TEST(MeetDemand, EmptyStockTriggersEmergency) {
    auto profile = AgeProfile{{0.0, 1.0, 0.0}};
    ScriptedDraws d;
    d.am_label = {0.1, 0.9};
    d.am_pred = {0.5, 0.5};
    auto out = meet_demand(StockVector(3), StockVector(3), 4, 2, IssuingPolicy::oufo(), 0.5, profile, d, Half::Am);
    EXPECT_EQ(out.emergency_count, 6);
    EXPECT_EQ(out.stock, StockVector(3));
    // the returned emergency unit is booked at its sampled age
    EXPECT_EQ(out.issued_today, StockVector(std::vector<int>{0, 1, 0}));
    EXPECT_EQ(out.transfused, 1);
}

TEST(MeetDemand, ZeroDemandIsIdentity) {
    auto profile = AgeProfile{{1.0}};
    ScriptedDraws d;
    auto out = meet_demand(StockVector(std::vector<int>{3}), StockVector(1), 0, 0, IssuingPolicy::yufo(), 0.5,
                           profile, d, Half::Pm);
    EXPECT_EQ(out.stock, StockVector(std::vector<int>{3}));
    EXPECT_TRUE(out.requests.empty());
}

TEST(Returns, ShiftByOneLifeAndCountExpired) {
    ScriptedDraws d;
    auto r = process_returns(StockVector(5), PendingReturns(std::vector<int>{0, 0, 1, 2, 1}), 0.0, d);
    EXPECT_EQ(r.stock, StockVector(std::vector<int>{0, 0, 0, 1, 2}));
    EXPECT_EQ(r.slippage, 0);
    EXPECT_EQ(r.expired_after_issue, 1);
}

TEST(Returns, SlippageRemovesUnits) {
    ScriptedDraws d;
    d.slipped = {{0, 2}, {3, 1}};
    auto r = process_returns(StockVector(std::vector<int>{1, 1, 1, 1, 1}),
                             PendingReturns(std::vector<int>{3, 0, 0, 2, 0}), 0.5, d);
    EXPECT_EQ(r.stock, StockVector(std::vector<int>{1, 2, 1, 1, 2}));
    EXPECT_EQ(r.slippage, 3);
    EXPECT_EQ(r.expired_after_issue, 0);
}

TEST(Ageing, ShiftsAndExpires) {
    auto [aged, expired] = age_stock(StockVector(std::vector<int>{3, 0, 1, 0, 2}));
    EXPECT_EQ(aged, StockVector(std::vector<int>{0, 3, 0, 1, 0}));
    EXPECT_EQ(expired, 2);
}

TEST(Reward, DirectSubstitution) {
    CostParams c;
    EXPECT_DOUBLE_EQ(compute_reward(10, 5, 2, 1, 0, c), -14525.0);
    EXPECT_DOUBLE_EQ(compute_reward(0, 0, 0, 0, 3, c), -1950.0);
    c.discount = 0.5;
    EXPECT_DOUBLE_EQ(compute_reward(0, 0, 0, 0, 3, c), -3900.0);
    EXPECT_DOUBLE_EQ(compute_reward(0, 4, 1, 0, 0, CostParams{}), -(4 * 130.0 + 3250.0));
}

// --- full-day oracle --------------------------------------------------------

TEST(Day, HandTracedFixture) {
    using namespace pir::fixtures;
    SimState state = fixture_day_start();
    DayRecord rec =
        simulate_day(state, kFixtureDayOrder, fixture_day_scenario(), fixture_day_issuing(), fixture_day_draws());
    EXPECT_EQ(rec, fixture_day_expected());
    EXPECT_EQ(state, fixture_day_end());
}

TEST(Day, StepValueForm) {
    using namespace pir::fixtures;
    StepResult r = step(fixture_day_start(), kFixtureDayOrder, fixture_day_scenario(), fixture_day_issuing(),
                        fixture_day_draws());
    EXPECT_DOUBLE_EQ(r.reward, -6855.0);
    EXPECT_EQ(r.state, fixture_day_end());
}

TEST(Day, DeadDayAdvancesWeekday) {
    auto cfg = pir::fixtures::flat_scenario(0.0);
    for (int d = 0; d < kDaysPerWeek; ++d) {
        SimState s = SimState::empty(5);
        s.weekday = d;
        auto r = step(s, 0, cfg, IssuingPolicy::oufo(), RngStreams(1, 0).day(0));
        EXPECT_DOUBLE_EQ(r.reward, 0.0);
        EXPECT_EQ(r.state.weekday, (d + 1) % 7);
    }
}

// --- rollouts -----------------------------------------------------------------

TEST(Rollout, DeadSystemIsAllZero) {
    auto cfg = pir::fixtures::flat_scenario(0.0);
    auto r = rollout(cfg, PolicySpec{StandingOrderPolicy{0}, IssuingPolicy::oufo()}, 50, 10, 0, 1);
    EXPECT_EQ(r.scored, DayTotals{});
    EXPECT_EQ(r.days_counted, 40);
}

TEST(Rollout, DeterministicForSeed) {
    auto cfg = builtin_scenario("uclh-returns");
    PolicySpec p{uniform_ss(30, 60), IssuingPolicy::yupr(0.6, 0.8)};
    auto a = rollout(cfg, p, 200, 50, 3, 99);
    auto b = rollout(cfg, p, 200, 50, 3, 99);
    EXPECT_EQ(a, b);
    auto c = rollout(cfg, p, 200, 50, 4, 99);
    EXPECT_NE(a, c);
}

TEST(Rollout, DegeneratePredictorsMatchNamedPolicies) {
    auto cfg = builtin_scenario("uclh-returns");
    for (std::uint64_t i = 0; i < 20; ++i) {
        ReplenishmentPolicy rep = uniform_ss(25, 55);
        EXPECT_EQ(rollout(cfg, {rep, IssuingPolicy::yupr(0.0, 1.0)}, 150, 20, i, 5),
                  rollout(cfg, {rep, IssuingPolicy::oufo()}, 150, 20, i, 5));
        EXPECT_EQ(rollout(cfg, {rep, IssuingPolicy::yupr(1.0, 0.0)}, 150, 20, i, 5),
                  rollout(cfg, {rep, IssuingPolicy::yufo()}, 150, 20, i, 5));
    }
}

TEST(Rollout, NoReturnsMakesSpecificityOneEqualOufo) {
    auto cfg = builtin_scenario("uclh-no-returns");
    ReplenishmentPolicy rep = uniform_ss(25, 50);
    for (std::uint64_t i = 0; i < 5; ++i) {
        auto base = rollout(cfg, {rep, IssuingPolicy::oufo()}, 150, 20, i, 8);
        EXPECT_EQ(rollout(cfg, {rep, IssuingPolicy::yupr(0.3, 1.0)}, 150, 20, i, 8), base);
        auto loose = rollout(cfg, {rep, IssuingPolicy::yupr(0.3, 0.4)}, 150, 20, i, 8);
        EXPECT_EQ(loose.lifetime.wasted_expired_after_issue, 0);
        EXPECT_EQ(loose.final_pending, 0);
    }
}

TEST(Rollout, WarmupExcludedFromScore) {
    auto cfg = builtin_scenario("uclh-returns");
    PolicySpec p{StandingOrderPolicy{28}, IssuingPolicy::oufo()};
    std::vector<DayRecord> days;
    DayObserver obs = [&](int, int, const DayRecord& r) { days.push_back(r); };
    auto r = rollout(cfg, p, 60, 25, 0, 2, &obs);
    ASSERT_EQ(days.size(), 60u);
    DayTotals expect;
    for (std::size_t d = 25; d < days.size(); ++d) expect.add(days[d]);
    EXPECT_EQ(r.scored, expect);
    EXPECT_EQ(r.days_counted, 35);
}

TEST(Rollout, ObserverSeesCalendarFromMonday) {
    auto cfg = builtin_scenario("uclh-returns");
    std::vector<int> weekdays;
    DayObserver obs = [&](int, int wd, const DayRecord&) { weekdays.push_back(wd); };
    rollout(cfg, PolicySpec{}, 9, 0, 0, 1, &obs);
    EXPECT_EQ(weekdays, (std::vector<int>{0, 1, 2, 3, 4, 5, 6, 0, 1}));
}

// Random scenarios, policies and seeds: every unit received is accounted for,
// and the freshest bin is always empty after ageing.
TEST(Rollout, ConservationProperty) {
    std::mt19937_64 gen(20240611);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> life(1, 6);
    for (int trial = 0; trial < 60; ++trial) {
        ScenarioConfig cfg;
        cfg.max_life = life(gen);
        for (auto& mu : cfg.demand_means) mu = 40.0 * u(gen);
        cfg.return_rate = u(gen);
        cfg.slippage_rate = u(gen);
        for (auto& p : cfg.age_profiles) {
            p.probabilities.clear();
            for (int i = 0; i < cfg.max_life; ++i) p.probabilities.push_back(u(gen) + 1e-3);
            p = normalized(p);
        }
        PolicySpec spec;
        if (trial % 2 == 0) {
            spec.replenishment = StandingOrderPolicy{static_cast<int>(60 * u(gen))};
        } else {
            spec.replenishment = uniform_ss(static_cast<int>(40 * u(gen)), 40 + static_cast<int>(60 * u(gen)));
        }
        spec.issuing = IssuingPolicy::yupr(u(gen), u(gen));
        bool fresh_bin_empty = true;
        DayObserver obs = [&](int, int, const DayRecord&) {};
        auto r = rollout(cfg, spec, 120, 30, static_cast<std::uint64_t>(trial), 77, &obs);
        EXPECT_TRUE(r.conserves_units()) << "trial " << trial;

        SimState s = SimState::empty(cfg.max_life);
        RngStreams streams(77, static_cast<std::uint64_t>(trial));
        for (int d = 0; d < 30; ++d) {
            int a = order_quantity({s.weekday, s.stock.total()}, spec.replenishment);
            simulate_day(s, a, cfg, spec.issuing, streams.day(d));
            if (s.stock[0] != 0) fresh_bin_empty = false;
        }
        EXPECT_TRUE(fresh_bin_empty) << "trial " << trial;
    }
}

TEST(Rollout, PairedStreamsShareDemand) {
    auto cfg = builtin_scenario("uclh-returns");
    std::vector<long> a, b;
    DayObserver oa = [&](int, int, const DayRecord& r) { a.push_back(r.demand_total); };
    DayObserver ob = [&](int, int, const DayRecord& r) { b.push_back(r.demand_total); };
    rollout(cfg, {uniform_ss(20, 40), IssuingPolicy::oufo()}, 80, 0, 2, 11, &oa);
    rollout(cfg, {StandingOrderPolicy{35}, IssuingPolicy::perfect()}, 80, 0, 2, 11, &ob);
    EXPECT_EQ(a, b);
}
