#include "pir/core.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "pir/error.hpp"

namespace pir {

long StockVector::total() const { return std::accumulate(counts.begin(), counts.end(), 0L); }

long PendingReturns::total() const { return std::accumulate(counts.begin(), counts.end(), 0L); }

void DayTotals::add(const DayRecord& rec, double discount_weight) {
    reward += rec.reward;
    discounted_return += discount_weight * rec.reward;
    demand += rec.demand_total;
    emergency_units += rec.emergency_units;
    received_routine += rec.received_routine;
    received_emergency += rec.received_emergency;
    transfused += rec.transfused;
    wasted_expiry_in_stock += rec.wasted_expiry_in_stock;
    wasted_slippage += rec.wasted_slippage;
    wasted_expired_after_issue += rec.wasted_expired_after_issue;
    ordered += rec.order_placed;
    order_days += rec.order_placed > 0 ? 1 : 0;
    end_stock += rec.end_stock;
}

bool RolloutResult::conserves_units() const {
    return lifetime.received() == lifetime.transfused + lifetime.wasted() + final_stock + final_pending;
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw InputError(msg); }

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

}  // namespace

const ScenarioConfig& validate_scenario(const ScenarioConfig& cfg) {
    if (cfg.max_life < 1) fail("max_life must be at least 1");
    if (cfg.lead_time != 0) fail("lead_time must be 0");
    if (cfg.max_order < 1) fail("max_order must be at least 1");
    for (int d = 0; d < kDaysPerWeek; ++d) {
        double mu = cfg.demand_means[static_cast<std::size_t>(d)];
        if (!std::isfinite(mu) || mu < 0.0) {
            fail("demand_means[" + std::to_string(d) + "] must be a non-negative number");
        }
    }
    if (!is_probability(cfg.return_rate)) fail("return_rate: probability out of range");
    if (!is_probability(cfg.slippage_rate)) fail("slippage_rate: probability out of range");
    for (int d = 0; d < kDaysPerWeek; ++d) {
        const auto& p = cfg.age_profiles[static_cast<std::size_t>(d)].probabilities;
        std::string where = "age_profiles[" + std::to_string(d) + "]";
        if (static_cast<int>(p.size()) != cfg.max_life) {
            std::ostringstream os;
            os << where << ": profile length " << p.size() << " != max_life " << cfg.max_life;
            fail(os.str());
        }
        double sum = 0.0;
        for (double x : p) {
            if (!std::isfinite(x) || x < 0.0) fail(where + ": negative probability");
            sum += x;
        }
        if (std::abs(sum - 1.0) > 1e-9) fail(where + ": probabilities do not sum to 1");
    }
    const auto& c = cfg.costs;
    for (double v : {c.fixed_order_cost, c.variable_order_cost, c.holding_cost, c.shortage_cost, c.wastage_cost}) {
        if (!std::isfinite(v) || v < 0.0) fail("costs must be non-negative");
    }
    if (!(c.discount > 0.0 && c.discount <= 1.0)) fail("costs.discount must lie in (0, 1]");
    return cfg;
}

AgeProfile normalized(AgeProfile profile) {
    double sum = std::accumulate(profile.probabilities.begin(), profile.probabilities.end(), 0.0);
    if (!(sum > 0.0)) throw InputError("age profile has zero mass");
    for (double& p : profile.probabilities) p /= sum;
    return profile;
}

namespace {

using ProfileTable = std::array<std::array<double, 5>, kDaysPerWeek>;

// Remaining life 5,4,3,2,1 days; Monday first.
constexpr ProfileTable kUclhProfiles2015{{
    {0.25, 0.33, 0.28, 0.11, 0.03},
    {0.20, 0.35, 0.27, 0.13, 0.05},
    {0.26, 0.18, 0.38, 0.14, 0.04},
    {0.76, 0.07, 0.05, 0.09, 0.03},
    {0.62, 0.29, 0.02, 0.03, 0.04},
    {0.61, 0.28, 0.11, 0.00, 0.00},
    {0.48, 0.27, 0.19, 0.05, 0.01},
}};

constexpr ProfileTable kUclhProfiles2017{{
    {0.31, 0.32, 0.23, 0.12, 0.02},
    {0.18, 0.48, 0.21, 0.10, 0.03},
    {0.25, 0.19, 0.38, 0.15, 0.03},
    {0.87, 0.02, 0.03, 0.07, 0.01},
    {0.71, 0.24, 0.02, 0.01, 0.01},
    {0.62, 0.28, 0.10, 0.00, 0.00},
    {0.48, 0.28, 0.18, 0.06, 0.00},
}};

// Remaining life 3,2,1 days, every weekday.
constexpr std::array<double, 3> kRajendranRavindranProfile{0.50, 0.20, 0.30};

void set_profiles(ScenarioConfig& cfg, const ProfileTable& table) {
    cfg.max_life = 5;
    for (int d = 0; d < kDaysPerWeek; ++d) {
        const auto& row = table[static_cast<std::size_t>(d)];
        cfg.age_profiles[static_cast<std::size_t>(d)] = normalized(AgeProfile{{row.begin(), row.end()}});
    }
}

void set_rr_profiles(ScenarioConfig& cfg) {
    cfg.max_life = 3;
    AgeProfile p = normalized(AgeProfile{{kRajendranRavindranProfile.begin(), kRajendranRavindranProfile.end()}});
    cfg.age_profiles.fill(p);
}

}  // namespace

std::vector<std::string> builtin_scenario_names() {
    return {"uclh-returns", "uclh-rr-returns", "uclh-no-returns", "rr-no-returns", "uclh-2017"};
}

ScenarioConfig builtin_scenario(std::string_view name) {
    ScenarioConfig cfg;
    cfg.max_order = 100;
    if (name == "uclh-returns" || name == "uclh-rr-returns" || name == "uclh-2017") {
        cfg.demand_means = kUclhDemandWithReturns;
        cfg.return_rate = 0.08;
        cfg.slippage_rate = 0.07;
        if (name == "uclh-returns") {
            set_profiles(cfg, kUclhProfiles2015);
        } else if (name == "uclh-2017") {
            set_profiles(cfg, kUclhProfiles2017);
        } else {
            set_rr_profiles(cfg);
        }
    } else if (name == "uclh-no-returns" || name == "rr-no-returns") {
        cfg.demand_means = kUclhDemandTransfused;
        cfg.return_rate = 0.0;
        cfg.slippage_rate = 0.0;
        if (name == "uclh-no-returns") {
            set_profiles(cfg, kUclhProfiles2015);
        } else {
            set_rr_profiles(cfg);
        }
    } else {
        throw InputError("unknown scenario '" + std::string(name) + "'");
    }
    validate_scenario(cfg);
    return cfg;
}

}  // namespace pir
