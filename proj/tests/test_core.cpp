#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "pir/core.hpp"
#include "pir/error.hpp"
#include "pir/rng.hpp"
#include "support.hpp"

using namespace pir;

TEST(Scenario, BuiltinsValidate) {
    for (const auto& name : builtin_scenario_names()) {
        SCOPED_TRACE(name);
        ScenarioConfig cfg = builtin_scenario(name);
        EXPECT_NO_THROW(validate_scenario(cfg));
        for (const auto& p : cfg.age_profiles) {
            EXPECT_EQ(p.max_life(), cfg.max_life);
            EXPECT_NEAR(std::accumulate(p.probabilities.begin(), p.probabilities.end(), 0.0), 1.0, 1e-9);
        }
    }
}

TEST(Scenario, UnknownNameIsInputError) {
    EXPECT_THROW(builtin_scenario("nope"), InputError);
}

TEST(Scenario, ReturnsScenariosUseDemandWithReturns) {
    auto cfg = builtin_scenario("uclh-returns");
    EXPECT_EQ(cfg.demand_means, kUclhDemandWithReturns);
    EXPECT_DOUBLE_EQ(cfg.return_rate, 0.08);
    EXPECT_DOUBLE_EQ(cfg.slippage_rate, 0.07);
    EXPECT_EQ(cfg.max_order, 100);
    auto none = builtin_scenario("uclh-no-returns");
    EXPECT_EQ(none.demand_means, kUclhDemandTransfused);
    EXPECT_DOUBLE_EQ(none.return_rate, 0.0);
}

// The reference tables round both series independently, so the transfused
// means only approximately equal 92% of the with-returns means.
TEST(Scenario, TransfusedDemandTracksReturnRate) {
    for (int d = 0; d < kDaysPerWeek; ++d) {
        auto i = static_cast<std::size_t>(d);
        EXPECT_NEAR(kUclhDemandTransfused[i], kUclhDemandWithReturns[i] * 0.92, 0.13) << "weekday " << d;
    }
}

TEST(Scenario, ReplenishmentLowerBound) {
    double weekly = std::accumulate(kUclhDemandTransfused.begin(), kUclhDemandTransfused.end(), 0.0);
    EXPECT_NEAR(weekly / 7.0 * 650.0 + 225.0, 16066.0, 1.0);
}

TEST(Scenario, RejectsBadProbability) {
    auto cfg = fixtures::flat_scenario();
    cfg.return_rate = 1.5;
    try {
        validate_scenario(cfg);
        FAIL() << "expected InputError";
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("probability out of range"), std::string::npos);
    }
}

TEST(Scenario, RejectsProfileLengthMismatch) {
    auto cfg = fixtures::flat_scenario();
    cfg.age_profiles[3].probabilities = {0.5, 0.5, 0.0};
    try {
        validate_scenario(cfg);
        FAIL() << "expected InputError";
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("profile length 3 != max_life 5"), std::string::npos);
    }
}

TEST(Scenario, RejectsUnnormalizedProfile) {
    auto cfg = fixtures::flat_scenario();
    cfg.age_profiles[0].probabilities = {0.5, 0.5, 0.5, 0.0, 0.0};
    EXPECT_THROW(validate_scenario(cfg), InputError);
}

TEST(Scenario, RejectsNegativeDemandAndLeadTime) {
    auto cfg = fixtures::flat_scenario();
    cfg.demand_means[2] = -1.0;
    EXPECT_THROW(validate_scenario(cfg), InputError);
    cfg = fixtures::flat_scenario();
    cfg.lead_time = 1;
    EXPECT_THROW(validate_scenario(cfg), InputError);
}

TEST(Scenario, NormalizedRescales) {
    AgeProfile p = normalized(AgeProfile{{0.2, 0.2, 0.2, 0.2, 0.19}});
    EXPECT_NEAR(std::accumulate(p.probabilities.begin(), p.probabilities.end(), 0.0), 1.0, 1e-12);
    EXPECT_NEAR(p.probabilities[4] / p.probabilities[0], 0.95, 1e-12);
}

TEST(Totals, AddAccumulatesAndDiscounts) {
    DayRecord r;
    r.reward = -10.0;
    r.demand_total = 3;
    r.order_placed = 2;
    r.received_routine = 2;
    r.wasted_slippage = 1;
    DayTotals t;
    t.add(r, 1.0);
    t.add(r, 0.5);
    EXPECT_DOUBLE_EQ(t.reward, -20.0);
    EXPECT_DOUBLE_EQ(t.discounted_return, -15.0);
    EXPECT_EQ(t.demand, 6);
    EXPECT_EQ(t.order_days, 2);
    EXPECT_EQ(t.wasted(), 2);
    EXPECT_EQ(t.received(), 4);
}

TEST(Stock, TotalsAndEquality) {
    StockVector s(std::vector<int>{1, 2, 3});
    EXPECT_EQ(s.total(), 6);
    EXPECT_FALSE(s.empty());
    EXPECT_TRUE(StockVector(4).empty());
    EXPECT_EQ(SimState::empty(3), SimState::empty(3));
}

// ---------------------------------------------------------------------------
// Random substreams

TEST(Rng, UniformsStayInsideOpenInterval) {
    EXPECT_GT(to_open_unit(0), 0.0);
    EXPECT_LT(to_open_unit(~0ULL), 1.0);
    DayStreams d(RngStreams(3, 4).day(5));
    for (int k = 0; k < 1000; ++k) {
        double u = d.label_uniform(Half::Am, k);
        EXPECT_GT(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
}

TEST(Rng, KeyedDrawsAreReproducibleAndDistinct) {
    auto a = RngStreams(7, 1).day(10);
    auto b = RngStreams(7, 1).day(10);
    EXPECT_EQ(a.label_uniform(Half::Pm, 3), b.label_uniform(Half::Pm, 3));
    EXPECT_EQ(a.demand(Half::Am, 14.4), b.demand(Half::Am, 14.4));
    EXPECT_NE(a.label_uniform(Half::Pm, 3), a.label_uniform(Half::Am, 3));
    EXPECT_NE(a.label_uniform(Half::Pm, 3), a.prediction_uniform(Half::Pm, 3));
    EXPECT_NE(a.label_uniform(Half::Pm, 3), RngStreams(7, 2).day(10).label_uniform(Half::Pm, 3));
    EXPECT_NE(a.label_uniform(Half::Pm, 3), RngStreams(8, 1).day(10).label_uniform(Half::Pm, 3));
    EXPECT_NE(a.emergency_uniform(Half::Pm, 3, 0), a.emergency_uniform(Half::Pm, 3, 1));
}

TEST(Rng, PoissonMeanMatches) {
    double sum = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) sum += RngStreams(1, static_cast<std::uint64_t>(i)).day(0).demand(Half::Am, 14.4);
    // sd of the sample mean is sqrt(14.4 / n) ~ 0.027
    EXPECT_NEAR(sum / n, 14.4, 0.11);
}

TEST(Rng, BinomialEdgeCases) {
    KeyedEngine e(9);
    EXPECT_EQ(sample_binomial(e, 0, 0.5), 0);
    EXPECT_EQ(sample_binomial(e, 10, 0.0), 0);
    EXPECT_EQ(sample_binomial(e, 10, 1.0), 10);
    EXPECT_EQ(sample_poisson(e, 0.0), 0);
}

TEST(Rng, MultinomialConservesTrials) {
    AgeProfile p{{0.1, 0.2, 0.3, 0.25, 0.15}};
    for (int n : {0, 1, 7, 100}) {
        KeyedEngine e(static_cast<std::uint64_t>(n) + 11);
        StockVector s = sample_multinomial(e, n, p);
        EXPECT_EQ(s.size(), 5);
        EXPECT_EQ(s.total(), n);
    }
    KeyedEngine e(5);
    StockVector point = sample_multinomial(e, 9, AgeProfile{{0.0, 1.0, 0.0}});
    EXPECT_EQ(point, StockVector(std::vector<int>{0, 9, 0}));
}

TEST(Rng, CategoryInverseCdf) {
    AgeProfile p{{0.2, 0.2, 0.2, 0.2, 0.2}};
    EXPECT_EQ(sample_category(p, 0.1), 0);
    EXPECT_EQ(sample_category(p, 0.5), 2);
    EXPECT_EQ(sample_category(p, 0.999999), 4);
    AgeProfile skip{{0.0, 0.5, 0.0, 0.5}};
    EXPECT_EQ(sample_category(skip, 0.01), 1);
    EXPECT_EQ(sample_category(skip, 0.99), 3);
}
