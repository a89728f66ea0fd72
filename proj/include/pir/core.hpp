#pragma once

// Domain types shared by the simulator, the policies and the experiment drivers.
//
// Vectors indexed by remaining useful life use the "freshest first" layout:
// with maximum life m, index 0 holds units with m days left and index m-1
// holds units that expire at the end of today.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pir {

inline constexpr int kDaysPerWeek = 7;

enum class Half { Am = 0, Pm = 1 };

struct CostParams {
    double fixed_order_cost = 225.0;
    double variable_order_cost = 650.0;
    double holding_cost = 130.0;
    double shortage_cost = 3250.0;
    double wastage_cost = 650.0;
    double discount = 1.0;
};

/// Multinomial parameters of remaining useful life on arrival.
struct AgeProfile {
    std::vector<double> probabilities;

    int max_life() const { return static_cast<int>(probabilities.size()); }
};

struct ScenarioConfig {
    int max_life = 5;
    int lead_time = 0;
    int max_order = 100;
    std::array<double, kDaysPerWeek> demand_means{};
    double return_rate = 0.0;
    double slippage_rate = 0.0;
    std::array<AgeProfile, kDaysPerWeek> age_profiles{};
    CostParams costs{};
};

/// Stock on hand; counts[i] is the number of units with (m - i) days of life left.
struct StockVector {
    std::vector<int> counts;

    StockVector() = default;
    explicit StockVector(int max_life) : counts(static_cast<std::size_t>(max_life), 0) {}
    explicit StockVector(std::vector<int> c) : counts(std::move(c)) {}

    int size() const { return static_cast<int>(counts.size()); }
    int& operator[](int i) { return counts[static_cast<std::size_t>(i)]; }
    int operator[](int i) const { return counts[static_cast<std::size_t>(i)]; }
    long total() const;
    bool empty() const { return total() == 0; }

    friend bool operator==(const StockVector&, const StockVector&) = default;
};

/// Units issued yesterday and not transfused. counts[i] has (m - 1 - i) days left;
/// the last entry holds units that expired while away from the blood bank.
struct PendingReturns {
    std::vector<int> counts;

    PendingReturns() = default;
    explicit PendingReturns(int max_life) : counts(static_cast<std::size_t>(max_life), 0) {}
    explicit PendingReturns(std::vector<int> c) : counts(std::move(c)) {}

    int size() const { return static_cast<int>(counts.size()); }
    int& operator[](int i) { return counts[static_cast<std::size_t>(i)]; }
    int operator[](int i) const { return counts[static_cast<std::size_t>(i)]; }
    long total() const;

    friend bool operator==(const PendingReturns&, const PendingReturns&) = default;
};

struct SimState {
    int weekday = 0;
    StockVector stock;
    PendingReturns pending;

    static SimState empty(int max_life) { return {0, StockVector(max_life), PendingReturns(max_life)}; }

    friend bool operator==(const SimState&, const SimState&) = default;
};

/// Everything that happened on one simulated day.
struct DayRecord {
    double reward = 0.0;
    long demand_am = 0;
    long demand_pm = 0;
    long demand_total = 0;
    long emergency_units = 0;
    long received_routine = 0;
    long received_emergency = 0;
    long transfused = 0;
    long wasted_expiry_in_stock = 0;
    long wasted_slippage = 0;
    long wasted_expired_after_issue = 0;
    long order_placed = 0;
    long end_stock = 0;

    friend bool operator==(const DayRecord&, const DayRecord&) = default;
};

/// Field-wise sums of DayRecord.
struct DayTotals {
    double reward = 0.0;
    double discounted_return = 0.0;
    long demand = 0;
    long emergency_units = 0;
    long received_routine = 0;
    long received_emergency = 0;
    long transfused = 0;
    long wasted_expiry_in_stock = 0;
    long wasted_slippage = 0;
    long wasted_expired_after_issue = 0;
    long ordered = 0;
    long order_days = 0;
    long end_stock = 0;

    void add(const DayRecord& rec, double discount_weight = 1.0);
    long wasted() const { return wasted_expiry_in_stock + wasted_slippage + wasted_expired_after_issue; }
    long received() const { return received_routine + received_emergency; }

    friend bool operator==(const DayTotals&, const DayTotals&) = default;
};

struct RolloutResult {
    /// Sums over the scored (post warm-up) days.
    DayTotals scored;
    int days_counted = 0;
    /// Sums over every simulated day, including warm-up.
    DayTotals lifetime;
    long final_stock = 0;
    long final_pending = 0;

    /// Every unit received is transfused, wasted, or still held at the end.
    bool conserves_units() const;

    friend bool operator==(const RolloutResult&, const RolloutResult&) = default;
};

/// Throws InputError naming the first violated invariant.
const ScenarioConfig& validate_scenario(const ScenarioConfig& cfg);

/// Names accepted by builtin_scenario.
std::vector<std::string> builtin_scenario_names();

/// Reference experiment inputs. Throws InputError for unknown names.
ScenarioConfig builtin_scenario(std::string_view name);

/// Rescales a profile to sum to one.
AgeProfile normalized(AgeProfile profile);

/// Daily demand tables (Monday first).
inline constexpr std::array<double, kDaysPerWeek> kUclhDemandWithReturns{28.8, 33.4, 26.2, 28.4, 30.8, 18.6, 19.6};
inline constexpr std::array<double, kDaysPerWeek> kUclhDemandTransfused{26.4, 30.6, 24.2, 26.0, 28.4, 17.0, 18.0};

}  // namespace pir
