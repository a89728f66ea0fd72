#pragma once

// Experiment drivers: sensitivity/specificity grid sweeps, one-at-a-time
// input sweeps comparing OUFO with a perfect predictor, and replay of
// recorded request traces.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pir/core.hpp"
#include "pir/engine.hpp"
#include "pir/metrics.hpp"
#include "pir/optimize.hpp"
#include "pir/policies.hpp"

namespace pir {

/// Binomial(m - 1, p) over remaining life: life r gets the mass at r - 1 successes.
AgeProfile binomial_age_profile(double p, int max_life = 5);

enum class ReplenishmentFamily { Standing, SS };

std::string to_string(ReplenishmentFamily f);
ReplenishmentFamily parse_family(const std::string& s);

struct SweepPlan {
    std::string scenario_name;  // empty when the scenario was given inline
    ScenarioConfig scenario;
    ReplenishmentFamily family = ReplenishmentFamily::SS;
    std::vector<double> sensitivities = MetricGrid::unit_axis(0.1);
    std::vector<double> specificities = MetricGrid::unit_axis(0.1);
    GAConfig ga;
    EvalConfig eval;
    std::optional<WeeklySSPolicy> warm_start;
    std::string output_dir = ".";

    void validate() const;
};

/// Fits the family's parameters for one issuing policy. Standing orders use
/// the exhaustive grid and ignore the warm start.
FitReport fit_replenishment(const ScenarioConfig& cfg, ReplenishmentFamily family, const IssuingPolicy& issuing,
                            const GAConfig& ga, const std::optional<WeeklySSPolicy>& warm_start = std::nullopt);

struct CellResult {
    double sensitivity = 0.0;
    double specificity = 0.0;
    FitReport fit;
    KPIReport kpis;
};

struct GridSweepResult {
    MetricGrid cost;
    MetricGrid service_level;
    MetricGrid wastage;
    std::vector<CellResult> cells;
};

using ProgressFn = std::function<void(const std::string&)>;

/// Fits the OUFO-equivalent cell (0, 1) first, then every other cell warm
/// started from it, and evaluates each fitted policy on the plan's budget.
GridSweepResult run_grid_sweep(const SweepPlan& plan, const ProgressFn& progress = {});

enum class SensitivityAxis { ReturnRate, SlippageRate, ArrivalProfile };

std::string to_string(SensitivityAxis a);
SensitivityAxis parse_axis(const std::string& s);

/// Preset values: return rate 0..0.5 step 0.05; slippage 0..1 step 0.1; profile p 0..1 step 0.1.
std::vector<double> preset_values(SensitivityAxis axis);

/// Scenario for one axis value. Return-rate values rescale demand so expected
/// transfusions stay at the UCLH Tx level; throws InputError for rate 1.
ScenarioConfig scenario_for(SensitivityAxis axis, double value, const ScenarioConfig& base);

struct SensitivityRow {
    double value = 0.0;
    FitReport oufo_fit;
    FitReport ppm_fit;
    KPIReport oufo;
    KPIReport ppm;
    /// Paired difference PPM minus OUFO over the same evaluation rollouts.
    PairedComparison ppm_minus_oufo;
    /// Per-rollout results, kept for further analysis.
    std::vector<RolloutResult> oufo_results;
    std::vector<RolloutResult> ppm_results;
};

/// For each value in order: fit under OUFO warm started from the previous
/// value's OUFO fit, fit under YUPR-PPM warm started from this value's OUFO
/// fit, then evaluate both on common seeds.
std::vector<SensitivityRow> run_sensitivity_sweep(SensitivityAxis axis, const std::vector<double>& values,
                                                  const SweepPlan& base, const ProgressFn& progress = {});

struct TraceRecord {
    int day = 0;
    Half half = Half::Am;
    int quantity = 1;
    int true_label = 0;
    /// Predicted label (0/1) or raw model score.
    double predicted = 0.0;
};

/// Throws InputError on a malformed record or a decreasing day index.
void validate_trace(const std::vector<TraceRecord>& trace);

/// Records in processing order: by day, morning before afternoon, file order within a half.
std::vector<TraceRecord> canonical_order(std::vector<TraceRecord> trace);

/// Trace predictions in processing order; positive iff predicted >= threshold.
TracePredictor trace_predictor(const std::vector<TraceRecord>& trace, double threshold = 0.5);

struct ReplayOptions {
    std::uint64_t seed = 0;
    int start_weekday = 0;
    /// Simulate at least this many days even when the trace is shorter.
    int min_days = 0;
    int warmup = 0;
};

struct ReplayResult {
    RolloutResult rollout;
    KPIReport kpis;
};

/// Replays recorded demand through the workflow. Arrival ages and slippage are
/// still drawn from the keyed streams of `options.seed`. A request for several
/// units is met with that many freshest (positive prediction) or oldest units.
ReplayResult replay_trace(const std::vector<TraceRecord>& trace, const ScenarioConfig& cfg,
                          const ReplenishmentPolicy& replenishment, const IssuingPolicy& issuing,
                          const ReplayOptions& options = {}, const DayObserver* observer = nullptr);

}  // namespace pir
