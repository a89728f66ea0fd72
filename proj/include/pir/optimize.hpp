#pragma once

// Batch evaluation of policies over many rollouts, and simulation-optimization
// fits of replenishment parameters.
//
// evaluate_policy runs rollouts with OpenMP; evaluate_policy_serial is the
// single-threaded reference it must match exactly.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pir/core.hpp"
#include "pir/policies.hpp"

namespace pir {

struct EvalConfig {
    int n_rollouts = 10000;
    /// Scored days per rollout, after warm-up.
    int scored_days = 365;
    int warmup = 100;
    std::uint64_t seed = 0;
    /// Upper bound on OpenMP threads; 0 means the runtime default.
    int workers = 0;

    int horizon() const { return scored_days + warmup; }
};

/// Rollout i uses substream family i of `eval.seed`.
std::vector<RolloutResult> evaluate_policy(const ScenarioConfig& cfg, const PolicySpec& policy, const EvalConfig& eval);

/// Serial reference for evaluate_policy.
std::vector<RolloutResult> evaluate_policy_serial(const ScenarioConfig& cfg, const PolicySpec& policy,
                                                  const EvalConfig& eval);

/// Mean discounted return over rollouts 0..n-1 of `eval.seed`, computed serially.
double mean_return(const ScenarioConfig& cfg, const PolicySpec& policy, const EvalConfig& eval);

struct GAConfig {
    int population_size = 50;
    int max_generations = 200;
    int patience = 10;
    double crossover_prob = 0.9;
    double mutation_prob = 1.0 / 14.0;
    int tournament_size = 2;
    /// Coordinate-search sweeps over the GA's best (s, S); 0 disables.
    int refine_rounds = 0;
    int fit_rollouts = 1000;
    int scored_days = 365;
    int warmup = 100;
    std::uint64_t seed = 0;
    int workers = 0;

    void validate() const;
    EvalConfig fitness_eval() const { return {fit_rollouts, scored_days, warmup, seed, workers}; }
};

enum class StopReason { Patience, MaxGenerations, GridExhausted };

std::string to_string(StopReason r);

struct GenerationBest {
    int generation = 0;
    ReplenishmentPolicy params;
    double mean_return = 0.0;
};

struct FitReport {
    ReplenishmentPolicy best;
    double best_mean_return = 0.0;
    int generations = 0;
    long evaluations = 0;
    /// Distinct parameter vectors actually simulated (repeats are cached).
    long distinct_evaluations = 0;
    StopReason stop_reason = StopReason::MaxGenerations;
    /// Accepted coordinate moves after the GA, and the GA's own best before them.
    int refine_moves = 0;
    ReplenishmentPolicy ga_best;
    double ga_best_mean_return = 0.0;
    std::vector<GenerationBest> history;
};

/// Fitness of a replenishment parameterization; must be pure and thread-safe.
using FitnessFn = std::function<double(const ReplenishmentPolicy&)>;

/// Fitness = mean return on the GA config's fixed rollout set.
FitnessFn rollout_fitness(const ScenarioConfig& cfg, const IssuingPolicy& issuing, const GAConfig& ga);

/// Exhaustive search over Q in 0..max_order; ties go to the smaller Q.
FitReport fit_standing_order(const FitnessFn& fitness, int max_order, int workers = 0);
FitReport fit_standing_order(const ScenarioConfig& cfg, const IssuingPolicy& issuing, const GAConfig& ga);

using SSGenome = std::array<int, 2 * kDaysPerWeek>;

/// Generational GA over the 14 (s, S) parameters in 0..max_order.
/// Tournament selection, uniform crossover, per-gene resampling mutation and
/// one elite. The warm start, when given, seeds generation 0. With
/// `refine_rounds > 0` the result is then improved by coordinate search over
/// single-gene steps of 1, 2 and 4 and same-day (s, S) shifts of 1 and 2.
FitReport fit_ss_policy(const FitnessFn& fitness, int max_order, const GAConfig& ga,
                        const std::optional<WeeklySSPolicy>& warm_start = std::nullopt);
FitReport fit_ss_policy(const ScenarioConfig& cfg, const IssuingPolicy& issuing, const GAConfig& ga,
                        const std::optional<WeeklySSPolicy>& warm_start = std::nullopt);

}  // namespace pir
