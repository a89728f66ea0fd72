#include "pir/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pir/engine.hpp"
#include "pir/error.hpp"
#include "pir/rng.hpp"

namespace pir {

AgeProfile binomial_age_profile(double p, int max_life) {
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("binomial_age_profile: p must lie in [0, 1]");
    if (max_life < 1) throw InputError("binomial_age_profile: max_life must be at least 1");
    const int trials = max_life - 1;
    AgeProfile profile;
    profile.probabilities.resize(static_cast<std::size_t>(max_life));
    for (int i = 0; i < max_life; ++i) {
        const int successes = trials - i;  // index i has life m - i, i.e. m - 1 - i successes
        double coef = 1.0;
        for (int k = 1; k <= successes; ++k) coef = coef * (trials - successes + k) / k;
        profile.probabilities[static_cast<std::size_t>(i)] =
            coef * std::pow(p, successes) * std::pow(1.0 - p, trials - successes);
    }
    return profile;
}

std::string to_string(ReplenishmentFamily f) { return f == ReplenishmentFamily::Standing ? "standing" : "ss"; }

ReplenishmentFamily parse_family(const std::string& s) {
    if (s == "standing") return ReplenishmentFamily::Standing;
    if (s == "ss") return ReplenishmentFamily::SS;
    throw InputError("unknown replenishment family '" + s + "' (expected standing or ss)");
}

void SweepPlan::validate() const {
    validate_scenario(scenario);
    ga.validate();
    if (eval.n_rollouts < 1 || eval.scored_days < 1 || eval.warmup < 0) throw InputError("invalid evaluation budget");
    auto unit = [](const std::vector<double>& axis) {
        if (axis.empty()) return false;
        for (std::size_t i = 0; i < axis.size(); ++i) {
            if (!(axis[i] >= 0.0 && axis[i] <= 1.0)) return false;
            if (i > 0 && !(axis[i] > axis[i - 1])) return false;
        }
        return true;
    };
    if (!unit(sensitivities) || !unit(specificities)) {
        throw InputError("grid axes must be strictly increasing values within [0, 1]");
    }
    if (warm_start) validate_policy(*warm_start, scenario.max_order);
}

FitReport fit_replenishment(const ScenarioConfig& cfg, ReplenishmentFamily family, const IssuingPolicy& issuing,
                            const GAConfig& ga, const std::optional<WeeklySSPolicy>& warm_start) {
    if (family == ReplenishmentFamily::Standing) return fit_standing_order(cfg, issuing, ga);
    return fit_ss_policy(cfg, issuing, ga, warm_start);
}

namespace {

void report(const ProgressFn& progress, const std::string& msg) {
    if (progress) progress(msg);
}

std::string cell_label(double a, double b) {
    std::ostringstream os;
    os << "cell (sensitivity=" << a << ", specificity=" << b << ")";
    return os.str();
}

std::optional<WeeklySSPolicy> as_warm_start(const FitReport& fit) {
    if (const auto* ss = std::get_if<WeeklySSPolicy>(&fit.best)) return *ss;
    return std::nullopt;
}

}  // namespace

GridSweepResult run_grid_sweep(const SweepPlan& plan, const ProgressFn& progress) {
    plan.validate();
    const ScenarioConfig& cfg = plan.scenario;

    report(progress, "fitting OUFO-equivalent " + cell_label(0.0, 1.0));
    FitReport anchor;
    try {
        anchor = fit_replenishment(cfg, plan.family, IssuingPolicy::yupr(0.0, 1.0), plan.ga, plan.warm_start);
    } catch (const InputError& e) {
        throw InputError(cell_label(0.0, 1.0) + ": " + e.what());
    }
    const auto warm = as_warm_start(anchor);

    GridSweepResult out;
    auto make_grid = [&]() {
        MetricGrid g;
        g.sensitivity = plan.sensitivities;
        g.specificity = plan.specificities;
        g.values.assign(g.sensitivity.size() * g.specificity.size(), 0.0);
        return g;
    };
    out.cost = make_grid();
    out.service_level = make_grid();
    out.wastage = make_grid();

    for (std::size_t i = 0; i < plan.sensitivities.size(); ++i) {
        for (std::size_t j = 0; j < plan.specificities.size(); ++j) {
            const double a = plan.sensitivities[i];
            const double b = plan.specificities[j];
            const std::string label = cell_label(a, b);
            report(progress, "running " + label);
            CellResult cell{a, b, {}, {}};
            try {
                IssuingPolicy issuing = IssuingPolicy::yupr(a, b);
                if (a == 0.0 && b == 1.0) {
                    cell.fit = anchor;
                } else {
                    cell.fit = fit_replenishment(cfg, plan.family, issuing, plan.ga, warm);
                }
                auto results = evaluate_policy(cfg, PolicySpec{cell.fit.best, issuing}, plan.eval);
                cell.kpis = compute_kpis(results);
            } catch (const InputError& e) {
                throw InputError(label + ": " + e.what());
            }
            out.cost.at(i, j) = cell.kpis.daily_cost.mean;
            out.service_level.at(i, j) = cell.kpis.service_level.mean;
            out.wastage.at(i, j) = cell.kpis.wastage.mean;
            out.cells.push_back(std::move(cell));
        }
    }
    return out;
}

std::string to_string(SensitivityAxis a) {
    switch (a) {
        case SensitivityAxis::ReturnRate: return "return-rate";
        case SensitivityAxis::SlippageRate: return "slippage-rate";
        case SensitivityAxis::ArrivalProfile: return "age-profile-p";
    }
    return "unknown";
}

SensitivityAxis parse_axis(const std::string& s) {
    if (s == "return-rate" || s == "rho") return SensitivityAxis::ReturnRate;
    if (s == "slippage-rate" || s == "phi") return SensitivityAxis::SlippageRate;
    if (s == "age-profile-p" || s == "p") return SensitivityAxis::ArrivalProfile;
    throw InputError("unknown sensitivity axis '" + s + "' (expected return-rate, slippage-rate or age-profile-p)");
}

std::vector<double> preset_values(SensitivityAxis axis) {
    std::vector<double> v;
    if (axis == SensitivityAxis::ReturnRate) {
        for (int i = 0; i <= 10; ++i) v.push_back(static_cast<double>(i) * 5.0 / 100.0);
    } else {
        for (int i = 0; i <= 10; ++i) v.push_back(static_cast<double>(i) / 10.0);
    }
    return v;
}

ScenarioConfig scenario_for(SensitivityAxis axis, double value, const ScenarioConfig& base) {
    if (!(value >= 0.0 && value <= 1.0)) throw InputError(to_string(axis) + " value must lie in [0, 1]");
    ScenarioConfig cfg = base;
    switch (axis) {
        case SensitivityAxis::ReturnRate:
            if (value >= 1.0) throw InputError("return rate 1 leaves transfused demand undefined");
            cfg.return_rate = value;
            for (int d = 0; d < kDaysPerWeek; ++d) {
                auto i = static_cast<std::size_t>(d);
                cfg.demand_means[i] = kUclhDemandTransfused[i] / (1.0 - value);
            }
            break;
        case SensitivityAxis::SlippageRate:
            cfg.slippage_rate = value;
            break;
        case SensitivityAxis::ArrivalProfile:
            cfg.age_profiles.fill(binomial_age_profile(value, cfg.max_life));
            break;
    }
    validate_scenario(cfg);
    return cfg;
}

std::vector<SensitivityRow> run_sensitivity_sweep(SensitivityAxis axis, const std::vector<double>& values,
                                                  const SweepPlan& base, const ProgressFn& progress) {
    base.validate();
    std::vector<SensitivityRow> rows;
    std::optional<WeeklySSPolicy> chain = base.warm_start;
    for (double v : values) {
        std::ostringstream tag;
        tag << to_string(axis) << "=" << v;
        ScenarioConfig cfg = scenario_for(axis, v, base.scenario);
        SensitivityRow row;
        row.value = v;
        report(progress, "fitting OUFO at " + tag.str());
        row.oufo_fit = fit_replenishment(cfg, base.family, IssuingPolicy::oufo(), base.ga, chain);
        chain = as_warm_start(row.oufo_fit);
        report(progress, "fitting YUPR-PPM at " + tag.str());
        row.ppm_fit = fit_replenishment(cfg, base.family, IssuingPolicy::perfect(), base.ga, chain);
        row.oufo_results = evaluate_policy(cfg, PolicySpec{row.oufo_fit.best, IssuingPolicy::oufo()}, base.eval);
        row.ppm_results = evaluate_policy(cfg, PolicySpec{row.ppm_fit.best, IssuingPolicy::perfect()}, base.eval);
        row.oufo = compute_kpis(row.oufo_results);
        row.ppm = compute_kpis(row.ppm_results);
        row.ppm_minus_oufo = paired_difference(row.ppm_results, row.oufo_results);
        rows.push_back(std::move(row));
    }
    return rows;
}

void validate_trace(const std::vector<TraceRecord>& trace) {
    int last_day = 0;
    for (std::size_t k = 0; k < trace.size(); ++k) {
        const auto& r = trace[k];
        std::string where = "trace record " + std::to_string(k + 1);
        if (r.day < 0) throw InputError(where + ": negative day index");
        if (r.day < last_day) throw InputError(where + ": day index decreases");
        if (r.quantity < 1) throw InputError(where + ": quantity must be at least 1");
        if (r.true_label != 0 && r.true_label != 1) throw InputError(where + ": true_label must be 0 or 1");
        if (!std::isfinite(r.predicted)) throw InputError(where + ": predicted is not a number");
        last_day = r.day;
    }
}

std::vector<TraceRecord> canonical_order(std::vector<TraceRecord> trace) {
    std::stable_sort(trace.begin(), trace.end(), [](const TraceRecord& a, const TraceRecord& b) {
        if (a.day != b.day) return a.day < b.day;
        return static_cast<int>(a.half) < static_cast<int>(b.half);
    });
    return trace;
}

TracePredictor trace_predictor(const std::vector<TraceRecord>& trace, double threshold) {
    TracePredictor p;
    for (const auto& r : canonical_order(trace)) p.labels.push_back(r.predicted >= threshold ? 1 : 0);
    return p;
}

namespace {

struct TraceRequests {
    // [day][half] -> records
    std::vector<std::array<std::vector<TraceRecord>, 2>> by_day;
};

long meet_trace_half(StockVector& stock, StockVector& issued_today, IssueCounters& counters,
                     const std::vector<TraceRecord>& requests, const IssuingPolicy& issuing,
                     const AgeProfile& profile, const DayStreams& draws, Half half, std::size_t& ordinal) {
    long units = 0;
    for (std::size_t k = 0; k < requests.size(); ++k) {
        const TraceRecord& r = requests[k];
        const int request = static_cast<int>(k);
        bool label = r.true_label == 1;
        bool freshest = issuing.issue_freshest(label, draws.prediction_uniform(half, request), ordinal++);
        for (int j = 0; j < r.quantity; ++j) {
            issue_unit(stock, issued_today, counters, label, freshest, draws.emergency_uniform(half, request, j),
                       profile);
        }
        units += r.quantity;
    }
    return units;
}

}  // namespace

ReplayResult replay_trace(const std::vector<TraceRecord>& trace, const ScenarioConfig& cfg,
                          const ReplenishmentPolicy& replenishment, const IssuingPolicy& issuing,
                          const ReplayOptions& options, const DayObserver* observer) {
    validate_scenario(cfg);
    validate_trace(trace);
    validate_issuing(issuing);
    validate_policy(replenishment, cfg.max_order);
    if (options.start_weekday < 0 || options.start_weekday >= kDaysPerWeek) {
        throw InputError("start weekday must lie in 0..6");
    }
    if (options.warmup < 0) throw InputError("warmup must be non-negative");

    int n_days = options.min_days;
    if (!trace.empty()) n_days = std::max(n_days, trace.back().day + 1);

    TraceRequests req;
    req.by_day.resize(static_cast<std::size_t>(n_days));
    for (const auto& r : trace) req.by_day[static_cast<std::size_t>(r.day)][static_cast<std::size_t>(r.half)].push_back(r);

    const int m = cfg.max_life;
    RngStreams streams(options.seed, 0);
    SimState state = SimState::empty(m);
    state.weekday = options.start_weekday;
    std::size_t ordinal = 0;
    double weight = 1.0;

    ReplayResult out;
    RolloutResult& result = out.rollout;
    for (int day = 0; day < n_days; ++day) {
        const DayStreams draws = streams.day(day);
        const int weekday = state.weekday;
        const auto tau = static_cast<std::size_t>(weekday);
        const AgeProfile& profile = cfg.age_profiles[tau];
        StockVector& stock = state.stock;
        const auto& todays = req.by_day[static_cast<std::size_t>(day)];

        DayRecord rec;
        int order = order_quantity(Observation{weekday, stock.total()}, replenishment);
        rec.order_placed = order;
        rec.received_routine = order;
        if (order > 0) {
            StockVector arrivals = draws.arrivals(order, profile);
            for (int i = 0; i < m; ++i) stock[i] += arrivals[i];
        }
        StockVector issued_today(m);
        IssueCounters counters;
        rec.demand_am = meet_trace_half(stock, issued_today, counters, todays[0], issuing, profile, draws, Half::Am,
                                        ordinal);
        ReturnsOutcome ret = process_returns_in_place(stock, state.pending, cfg.slippage_rate, draws);
        rec.demand_pm = meet_trace_half(stock, issued_today, counters, todays[1], issuing, profile, draws, Half::Pm,
                                        ordinal);
        long expired = age_stock_in_place(stock);

        rec.demand_total = rec.demand_am + rec.demand_pm;
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

        result.lifetime.add(rec);
        if (day >= options.warmup) {
            result.scored.add(rec, weight);
            weight *= cfg.costs.discount;
            ++result.days_counted;
        }
        if (observer && *observer) (*observer)(day, weekday, rec);
    }
    result.final_stock = state.stock.total();
    result.final_pending = state.pending.total();
    out.kpis = compute_kpis(std::span<const RolloutResult>(&out.rollout, 1));
    return out;
}

}  // namespace pir
