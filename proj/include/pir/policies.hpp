#pragma once

// Replenishment rules (how many units to order each morning) and issuing
// rules (which unit to hand out for a request).

#include <array>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "pir/core.hpp"

namespace pir {

/// What a replenishment policy may look at: weekday and total stock on hand.
struct Observation {
    int weekday = 0;
    long total_stock = 0;
};

struct StandingOrderPolicy {
    int quantity = 0;

    friend bool operator==(const StandingOrderPolicy&, const StandingOrderPolicy&) = default;
};

/// Per-weekday (s, S) with a one-day review period.
struct WeeklySSPolicy {
    std::array<int, kDaysPerWeek> reorder_point{};
    std::array<int, kDaysPerWeek> order_up_to{};

    /// s < S on every weekday. When false the policy never orders.
    bool constraint_satisfied() const;

    /// Genome layout used by the optimizer: s0, S0, s1, S1, ..., s6, S6.
    std::array<int, 2 * kDaysPerWeek> to_genome() const;
    static WeeklySSPolicy from_genome(const std::array<int, 2 * kDaysPerWeek>& genome);

    friend bool operator==(const WeeklySSPolicy&, const WeeklySSPolicy&) = default;
};

using ReplenishmentPolicy = std::variant<StandingOrderPolicy, WeeklySSPolicy>;

int standing_order_action(const Observation& obs, const StandingOrderPolicy& policy);
int ss_action(const Observation& obs, const WeeklySSPolicy& policy);
int order_quantity(const Observation& obs, const ReplenishmentPolicy& policy);

/// Checks parameter bounds against max_order. Throws InputError.
void validate_policy(const ReplenishmentPolicy& policy, int max_order);

/// A model with the given sensitivity (alpha) and specificity (beta).
struct SimulatedPredictor {
    double sensitivity = 0.0;
    double specificity = 1.0;
};

/// Predictions recorded ahead of time, consumed in request order.
struct TracePredictor {
    std::vector<int> labels;
};

using PredictorSpec = std::variant<SimulatedPredictor, TracePredictor>;

/// Returns the predicted label (true = "will be returned").
/// `u` is the request's prediction uniform; `request_ordinal` addresses trace predictions.
bool predict(bool true_label, const PredictorSpec& spec, double u, std::size_t request_ordinal = 0);

enum class IssuingMode { Oufo, Yufo, Yupr };

struct IssuingPolicy {
    IssuingMode mode = IssuingMode::Oufo;
    PredictorSpec predictor = SimulatedPredictor{};

    static IssuingPolicy oufo() { return {IssuingMode::Oufo, SimulatedPredictor{0.0, 1.0}}; }
    static IssuingPolicy yufo() { return {IssuingMode::Yufo, SimulatedPredictor{1.0, 0.0}}; }
    static IssuingPolicy yupr(double sensitivity, double specificity) {
        return {IssuingMode::Yupr, SimulatedPredictor{sensitivity, specificity}};
    }
    static IssuingPolicy perfect() { return yupr(1.0, 1.0); }

    /// Whether to issue the freshest unit for this request.
    bool issue_freshest(bool true_label, double u, std::size_t request_ordinal = 0) const {
        switch (mode) {
            case IssuingMode::Oufo: return false;
            case IssuingMode::Yufo: return true;
            case IssuingMode::Yupr: return predict(true_label, predictor, u, request_ordinal);
        }
        return false;
    }
};

/// Throws InputError when sensitivity/specificity fall outside [0, 1].
void validate_issuing(const IssuingPolicy& issuing);

std::string describe(const IssuingPolicy& issuing);

struct PolicySpec {
    ReplenishmentPolicy replenishment = StandingOrderPolicy{};
    IssuingPolicy issuing = IssuingPolicy::oufo();
};

/// Lowest index with stock (freshest) when `freshest`, otherwise highest (oldest).
/// Throws InputError on an empty stock vector.
int choose_issue_index(const StockVector& stock, bool freshest);

}  // namespace pir
