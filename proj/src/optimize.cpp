#include "pir/optimize.hpp"

#include <algorithm>
#include <map>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pir/engine.hpp"
#include "pir/error.hpp"
#include "pir/rng.hpp"

namespace pir {

namespace {

int thread_count(int workers) {
#ifdef _OPENMP
    return workers > 0 ? workers : omp_get_max_threads();
#else
    (void)workers;
    return 1;
#endif
}

void check_eval(const EvalConfig& eval) {
    if (eval.n_rollouts < 1) throw InputError("n_rollouts must be at least 1");
    if (eval.scored_days < 1) throw InputError("scored_days must be at least 1");
    if (eval.warmup < 0) throw InputError("warmup must be non-negative");
}

}  // namespace

std::vector<RolloutResult> evaluate_policy_serial(const ScenarioConfig& cfg, const PolicySpec& policy,
                                                  const EvalConfig& eval) {
    check_eval(eval);
    std::vector<RolloutResult> out(static_cast<std::size_t>(eval.n_rollouts));
    for (int i = 0; i < eval.n_rollouts; ++i) {
        out[static_cast<std::size_t>(i)] =
            rollout(cfg, policy, eval.horizon(), eval.warmup, static_cast<std::uint64_t>(i), eval.seed);
    }
    return out;
}

std::vector<RolloutResult> evaluate_policy(const ScenarioConfig& cfg, const PolicySpec& policy,
                                           const EvalConfig& eval) {
    check_eval(eval);
    std::vector<RolloutResult> out(static_cast<std::size_t>(eval.n_rollouts));
    const int n = eval.n_rollouts;
    const int threads = thread_count(eval.workers);
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] =
            rollout(cfg, policy, eval.horizon(), eval.warmup, static_cast<std::uint64_t>(i), eval.seed);
    }
    return out;
}

double mean_return(const ScenarioConfig& cfg, const PolicySpec& policy, const EvalConfig& eval) {
    check_eval(eval);
    double sum = 0.0;
    for (int i = 0; i < eval.n_rollouts; ++i) {
        sum += rollout(cfg, policy, eval.horizon(), eval.warmup, static_cast<std::uint64_t>(i), eval.seed)
                   .scored.discounted_return;
    }
    return sum / static_cast<double>(eval.n_rollouts);
}

void GAConfig::validate() const {
    if (population_size < 2) throw InputError("population_size must be at least 2");
    if (max_generations < 1) throw InputError("max_generations must be at least 1");
    if (patience < 1) throw InputError("patience must be at least 1");
    if (tournament_size < 1) throw InputError("tournament_size must be at least 1");
    if (refine_rounds < 0) throw InputError("refine_rounds must be non-negative");
    auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!prob(crossover_prob) || !prob(mutation_prob)) throw InputError("GA probabilities must lie in [0, 1]");
    check_eval(fitness_eval());
}

std::string to_string(StopReason r) {
    switch (r) {
        case StopReason::Patience: return "patience";
        case StopReason::MaxGenerations: return "max-generations";
        case StopReason::GridExhausted: return "grid-exhausted";
    }
    return "unknown";
}

FitnessFn rollout_fitness(const ScenarioConfig& cfg, const IssuingPolicy& issuing, const GAConfig& ga) {
    validate_scenario(cfg);
    validate_issuing(issuing);
    EvalConfig eval = ga.fitness_eval();
    return [cfg, issuing, eval](const ReplenishmentPolicy& params) {
        return mean_return(cfg, PolicySpec{params, issuing}, eval);
    };
}

FitReport fit_standing_order(const FitnessFn& fitness, int max_order, int workers) {
    if (max_order < 0) throw InputError("max_order must be non-negative");
    const int n = max_order + 1;
    std::vector<double> scores(static_cast<std::size_t>(n));
    const int threads = thread_count(workers);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (int q = 0; q < n; ++q) {
        scores[static_cast<std::size_t>(q)] = fitness(StandingOrderPolicy{q});
    }
    int best = 0;
    for (int q = 1; q < n; ++q) {
        if (scores[static_cast<std::size_t>(q)] > scores[static_cast<std::size_t>(best)]) best = q;
    }
    FitReport rep;
    rep.best = StandingOrderPolicy{best};
    rep.best_mean_return = scores[static_cast<std::size_t>(best)];
    rep.generations = 1;
    rep.evaluations = n;
    rep.distinct_evaluations = n;
    rep.stop_reason = StopReason::GridExhausted;
    rep.ga_best = rep.best;
    rep.ga_best_mean_return = rep.best_mean_return;
    rep.history.push_back({0, rep.best, rep.best_mean_return});
    return rep;
}

FitReport fit_standing_order(const ScenarioConfig& cfg, const IssuingPolicy& issuing, const GAConfig& ga) {
    ga.validate();
    return fit_standing_order(rollout_fitness(cfg, issuing, ga), cfg.max_order, ga.workers);
}

namespace {

struct Scored {
    SSGenome genome;
    double fitness;
};

/// Strictly better: higher fitness, ties to the lexicographically smaller genome.
bool better(const Scored& a, const Scored& b) {
    if (a.fitness != b.fitness) return a.fitness > b.fitness;
    return a.genome < b.genome;
}

}  // namespace

FitReport fit_ss_policy(const FitnessFn& fitness, int max_order, const GAConfig& ga,
                        const std::optional<WeeklySSPolicy>& warm_start) {
    ga.validate();
    if (warm_start) validate_policy(*warm_start, max_order);

    std::mt19937_64 rng(mix64(ga.seed ^ 0x5eed0fa11c0ffeeULL));
    std::uniform_int_distribution<int> gene(0, max_order);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, ga.population_size - 1);

    std::vector<SSGenome> population;
    population.reserve(static_cast<std::size_t>(ga.population_size));
    if (warm_start) population.push_back(warm_start->to_genome());
    // Generation 0 is drawn from the feasible region; a uniform draw over all
    // 14 genes satisfies s < S on every weekday less than 1% of the time.
    while (static_cast<int>(population.size()) < ga.population_size) {
        SSGenome g;
        for (std::size_t d = 0; d < g.size(); d += 2) {
            int a = gene(rng);
            int b = gene(rng);
            while (max_order > 0 && a == b) b = gene(rng);
            g[d] = std::min(a, b);
            g[d + 1] = std::max(a, b);
        }
        population.push_back(g);
    }

    std::map<SSGenome, double> cache;
    const int threads = thread_count(ga.workers);
    FitReport rep;
    std::optional<Scored> best;
    int since_improvement = 0;

    for (int generation = 0;; ++generation) {
        std::vector<SSGenome> todo;
        for (const auto& g : population) {
            if (!cache.contains(g) && std::find(todo.begin(), todo.end(), g) == todo.end()) todo.push_back(g);
        }
        std::vector<double> fresh(todo.size());
        const int n_todo = static_cast<int>(todo.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
        for (int k = 0; k < n_todo; ++k) {
            auto idx = static_cast<std::size_t>(k);
            fresh[idx] = fitness(WeeklySSPolicy::from_genome(todo[idx]));
        }
        for (std::size_t k = 0; k < todo.size(); ++k) cache.emplace(todo[k], fresh[k]);
        rep.distinct_evaluations += static_cast<long>(todo.size());
        rep.evaluations += ga.population_size;
        rep.generations = generation + 1;

        std::vector<Scored> ranked;
        ranked.reserve(population.size());
        for (const auto& g : population) ranked.push_back({g, cache.at(g)});
        std::sort(ranked.begin(), ranked.end(), better);

        // Only a strictly higher fitness resets patience; a tie may still move
        // the reported best to a smaller genome.
        if (!best || ranked.front().fitness > best->fitness) {
            since_improvement = 0;
        } else {
            ++since_improvement;
        }
        if (!best || better(ranked.front(), *best)) best = ranked.front();
        rep.history.push_back({generation, WeeklySSPolicy::from_genome(best->genome), best->fitness});

        if (since_improvement >= ga.patience) {
            rep.stop_reason = StopReason::Patience;
            break;
        }
        if (generation + 1 >= ga.max_generations) {
            rep.stop_reason = StopReason::MaxGenerations;
            break;
        }

        // Tournament on the current population's ranks (lower rank index is better).
        auto tournament = [&]() {
            int winner = pick(rng);
            for (int t = 1; t < ga.tournament_size; ++t) winner = std::min(winner, pick(rng));
            return ranked[static_cast<std::size_t>(winner)].genome;
        };

        std::vector<SSGenome> next;
        next.reserve(population.size());
        next.push_back(ranked.front().genome);
        while (static_cast<int>(next.size()) < ga.population_size) {
            SSGenome a = tournament();
            SSGenome b = tournament();
            SSGenome child = a;
            // Weekday (s, S) pairs are inherited whole so that feasible parents
            // give a feasible child.
            if (unit(rng) < ga.crossover_prob) {
                for (std::size_t i = 0; i < child.size(); i += 2) {
                    if (unit(rng) < 0.5) {
                        child[i] = b[i];
                        child[i + 1] = b[i + 1];
                    }
                }
            }
            for (int& v : child) {
                if (unit(rng) < ga.mutation_prob) v = gene(rng);
            }
            next.push_back(child);
        }
        population = std::move(next);
    }

    rep.ga_best = WeeklySSPolicy::from_genome(best->genome);
    rep.ga_best_mean_return = best->fitness;

    // Coordinate sweeps: each gene (then each weekday pair, shifted together)
    // takes the best of its candidate steps, scored in parallel. The path is
    // independent of thread scheduling.
    auto try_moves = [&](const std::vector<SSGenome>& candidates) {
        std::vector<SSGenome> todo;
        for (const auto& g : candidates) {
            bool inside = std::all_of(g.begin(), g.end(), [&](int v) { return v >= 0 && v <= max_order; });
            if (inside && !cache.contains(g)) todo.push_back(g);
        }
        std::vector<double> fresh(todo.size());
        const int n_todo = static_cast<int>(todo.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
        for (int k = 0; k < n_todo; ++k) {
            auto idx = static_cast<std::size_t>(k);
            fresh[idx] = fitness(WeeklySSPolicy::from_genome(todo[idx]));
        }
        rep.evaluations += n_todo;
        rep.distinct_evaluations += n_todo;
        for (std::size_t k = 0; k < todo.size(); ++k) cache.emplace(todo[k], fresh[k]);
        bool moved = false;
        for (const auto& g : candidates) {
            auto it = cache.find(g);
            if (it != cache.end() && it->second > best->fitness) {
                best = Scored{g, it->second};
                moved = true;
            }
        }
        if (moved) ++rep.refine_moves;
        return moved;
    };
    for (int round = 0; round < ga.refine_rounds; ++round) {
        bool moved = false;
        for (std::size_t i = 0; i < best->genome.size(); ++i) {
            std::vector<SSGenome> candidates;
            for (int step : {-4, -2, -1, 1, 2, 4}) {
                SSGenome g = best->genome;
                g[i] += step;
                candidates.push_back(g);
            }
            moved |= try_moves(candidates);
        }
        for (std::size_t i = 0; i < best->genome.size(); i += 2) {
            std::vector<SSGenome> candidates;
            for (int step : {-2, -1, 1, 2}) {
                SSGenome g = best->genome;
                g[i] += step;
                g[i + 1] += step;
                candidates.push_back(g);
            }
            moved |= try_moves(candidates);
        }
        if (!moved) break;
    }

    rep.best = WeeklySSPolicy::from_genome(best->genome);
    rep.best_mean_return = best->fitness;
    return rep;
}

FitReport fit_ss_policy(const ScenarioConfig& cfg, const IssuingPolicy& issuing, const GAConfig& ga,
                        const std::optional<WeeklySSPolicy>& warm_start) {
    ga.validate();
    return fit_ss_policy(rollout_fitness(cfg, issuing, ga), cfg.max_order, ga, warm_start);
}

}  // namespace pir
