// pirsim: command-line front end for fitting, evaluating and sweeping
// platelet inventory policies.
//
// Exit codes: 0 success, 1 usage error, 2 input-data error, 3 internal error.
// Machine-readable results go to stdout; progress goes to stderr.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pir/error.hpp"
#include "pir/experiments.hpp"
#include "pir/io.hpp"

namespace fs = std::filesystem;
using namespace pir;
using io::json;

namespace {

constexpr const char* kVersion = "1.0.0";

struct Common {
    std::optional<std::uint64_t> seed;
    int workers = 0;
    std::optional<int> fit_rollouts;
    std::optional<int> eval_rollouts;
    std::optional<int> max_generations;
    std::optional<int> patience;
    std::optional<int> population;
    std::optional<int> refine_rounds;
    std::optional<int> scored_days;
    std::optional<int> warmup;
    std::string out_dir = ".";
    bool quiet = false;
};

struct RunContext {
    std::string command_line;
    std::uint64_t seed = 0;
    bool seed_from_entropy = false;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    std::vector<std::string> outputs;
};

void add_common(CLI::App* cmd, Common& c, bool fits, bool evals) {
    cmd->add_option("--seed", c.seed, "Master seed (drawn from entropy and recorded when omitted)");
    cmd->add_option("--workers", c.workers, "Parallel rollout workers (0 = all cores)")->check(CLI::NonNegativeNumber);
    cmd->add_option("--out", c.out_dir, "Output directory");
    cmd->add_flag("--quiet", c.quiet, "Suppress progress on stderr");
    cmd->add_option("--scored-days", c.scored_days, "Scored days per rollout")->check(CLI::PositiveNumber);
    cmd->add_option("--warmup", c.warmup, "Warm-up days per rollout")->check(CLI::NonNegativeNumber);
    if (fits) {
        cmd->add_option("--fit-rollouts", c.fit_rollouts, "Rollouts per candidate during fitting")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--max-generations", c.max_generations, "GA generation cap")->check(CLI::PositiveNumber);
        cmd->add_option("--patience", c.patience, "Generations without a fitness improvement before stopping")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--population", c.population, "GA population size")->check(CLI::Range(2, 100000));
        cmd->add_option("--refine-rounds", c.refine_rounds, "Local-search rounds after the GA (0 = off)")
            ->check(CLI::NonNegativeNumber);
    }
    if (evals) {
        cmd->add_option("--eval-rollouts", c.eval_rollouts, "Rollouts for evaluation")->check(CLI::PositiveNumber);
    }
}

std::uint64_t resolve_seed(const Common& c, RunContext& ctx) {
    if (c.seed) {
        ctx.seed = *c.seed;
    } else {
        std::random_device rd;
        ctx.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
        ctx.seed_from_entropy = true;
    }
    return ctx.seed;
}

GAConfig ga_config(const Common& c, std::uint64_t seed, GAConfig ga = {}) {
    ga.seed = seed;
    ga.workers = c.workers;
    if (c.fit_rollouts) ga.fit_rollouts = *c.fit_rollouts;
    if (c.max_generations) ga.max_generations = *c.max_generations;
    if (c.patience) ga.patience = *c.patience;
    if (c.population) ga.population_size = *c.population;
    if (c.refine_rounds) ga.refine_rounds = *c.refine_rounds;
    if (c.scored_days) ga.scored_days = *c.scored_days;
    if (c.warmup) ga.warmup = *c.warmup;
    return ga;
}

EvalConfig eval_config(const Common& c, std::uint64_t seed, EvalConfig e = {}) {
    e.seed = seed;
    e.workers = c.workers;
    if (c.eval_rollouts) e.n_rollouts = *c.eval_rollouts;
    if (c.scored_days) e.scored_days = *c.scored_days;
    if (c.warmup) e.warmup = *c.warmup;
    return e;
}

ProgressFn progress_sink(const Common& c) {
    if (c.quiet) return {};
    return [](const std::string& msg) { std::cerr << "[pirsim] " << msg << '\n'; };
}

void note(const Common& c, const std::string& msg) {
    if (!c.quiet) std::cerr << "[pirsim] " << msg << '\n';
}

void emit(RunContext& ctx, const Common& c, const std::string& name, const std::string& content) {
    fs::path p = fs::path(c.out_dir) / name;
    io::write_text_atomic(p, content);
    ctx.outputs.push_back(p.string());
}

void finish(RunContext& ctx, const Common& c, const json& resolved) {
    io::RunManifest m;
    m.command_line = ctx.command_line;
    m.config_digest = io::digest(resolved.dump());
    m.seed = ctx.seed;
    m.seed_from_entropy = ctx.seed_from_entropy;
    m.tool_version = kVersion;
    m.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - ctx.start).count();
    m.outputs = ctx.outputs;
    json j = io::manifest_to_json(m);
    j["config"] = resolved;
    io::write_text_atomic(fs::path(c.out_dir) / "manifest.json", j.dump(2) + "\n");
}

struct IssuingArgs {
    std::string mode = "oufo";
    double alpha = 0.0;
    double beta = 1.0;
};

void add_issuing(CLI::App* cmd, IssuingArgs& a) {
    cmd->add_option("--issuing", a.mode, "Issuing policy: oufo, yufo, yupr or ppm")
        ->check(CLI::IsMember({"oufo", "yufo", "yupr", "ppm"}));
    cmd->add_option("--alpha", a.alpha, "YUPR sensitivity")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--beta", a.beta, "YUPR specificity")->check(CLI::Range(0.0, 1.0));
}

io::PolicyFile load_policy(const std::string& path) {
    try {
        return io::policy_from_json(json::parse(io::read_text(path)));
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

json load_json(const std::string& path) {
    try {
        return json::parse(io::read_text(path));
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::string kpi_table(const std::vector<std::pair<std::string, KPIReport>>& rows) {
    std::string s = io::kpi_header();
    for (const auto& [label, k] : rows) s += io::kpi_row(label, k);
    return s;
}

// --- subcommands ------------------------------------------------------------

struct FitArgs {
    Common c;
    std::string scenario = "uclh-returns";
    std::string family = "ss";
    IssuingArgs issuing;
    std::string warm_start;
};

void run_fit(FitArgs& a, RunContext& ctx) {
    ScenarioConfig cfg = io::load_scenario(a.scenario);
    ReplenishmentFamily fam = parse_family(a.family);
    IssuingPolicy issuing = io::parse_issuing(a.issuing.mode, a.issuing.alpha, a.issuing.beta);
    GAConfig ga = ga_config(a.c, resolve_seed(a.c, ctx));
    std::optional<WeeklySSPolicy> warm;
    if (!a.warm_start.empty()) {
        auto pf = load_policy(a.warm_start);
        const auto* ss = std::get_if<WeeklySSPolicy>(&pf.replenishment);
        if (!ss) throw InputError("--warm-start must name an (s,S) policy file");
        warm = *ss;
    }
    note(a.c, "fitting " + a.family + " under " + describe(issuing));
    FitReport rep = fit_replenishment(cfg, fam, issuing, ga, warm);
    note(a.c, "stopped after " + std::to_string(rep.generations) + " generations (" + to_string(rep.stop_reason) +
                  ")");
    json policy = io::policy_to_json(rep.best, issuing);
    emit(ctx, a.c, "fit_report.json", io::fit_report_to_json(rep, fam).dump(2) + "\n");
    emit(ctx, a.c, "policy.json", policy.dump(2) + "\n");
    std::cout << policy.dump() << '\n';
    finish(ctx, a.c,
           {{"command", "fit"}, {"scenario", io::scenario_to_json(cfg)}, {"family", a.family},
            {"issuing", io::issuing_to_json(issuing)}, {"ga", io::ga_to_json(ga)}});
}

struct EvalArgs {
    Common c;
    std::string scenario = "uclh-returns";
    std::string policy;
    IssuingArgs issuing;
    bool issuing_given = false;
    std::string day_trace;
};

void run_evaluate(EvalArgs& a, RunContext& ctx) {
    ScenarioConfig cfg = io::load_scenario(a.scenario);
    io::PolicyFile pf = load_policy(a.policy);
    validate_policy(pf.replenishment, cfg.max_order);
    IssuingPolicy issuing = IssuingPolicy::oufo();
    if (a.issuing_given) {
        issuing = io::parse_issuing(a.issuing.mode, a.issuing.alpha, a.issuing.beta);
    } else if (pf.issuing) {
        if (pf.trace_path) throw InputError("trace-driven issuing is only available in replay");
        issuing = *pf.issuing;
    }
    EvalConfig e = eval_config(a.c, resolve_seed(a.c, ctx));
    note(a.c, "evaluating on " + std::to_string(e.n_rollouts) + " rollouts");
    PolicySpec spec{pf.replenishment, issuing};
    auto results = evaluate_policy(cfg, spec, e);
    for (const auto& r : results) {
        if (!r.conserves_units()) throw InvariantError("unit conservation violated");
    }
    KPIReport k = compute_kpis(results);
    std::string table = kpi_table({{describe(issuing), k}});
    emit(ctx, a.c, "kpis.csv", table);
    emit(ctx, a.c, "rollouts.csv", io::rollouts_to_csv(results));
    if (!a.day_trace.empty()) {
        std::ostringstream os;
        io::DayTraceWriter writer(os);
        DayObserver obs = [&](int d, int wd, const DayRecord& r) { writer(d, wd, r); };
        rollout(cfg, spec, e.horizon(), e.warmup, 0, e.seed, &obs);
        io::write_text_atomic(a.day_trace, os.str());
        ctx.outputs.push_back(a.day_trace);
    }
    std::cout << table;
    finish(ctx, a.c,
           {{"command", "evaluate"}, {"scenario", io::scenario_to_json(cfg)},
            {"policy", io::policy_to_json(pf.replenishment, issuing)}, {"evaluation", io::eval_to_json(e)}});
}

struct SweepArgs {
    Common c;
    std::string plan;
};

void run_sweep(SweepArgs& a, RunContext& ctx) {
    json raw = load_json(a.plan);
    SweepPlan plan = io::sweep_plan_from_json(raw);
    // command-line flags override the plan file; --seed, then the plan's seed, then entropy
    if (a.c.out_dir == ".") a.c.out_dir = plan.output_dir;
    if (!a.c.seed && raw.contains("seed")) a.c.seed = raw.at("seed").get<std::uint64_t>();
    std::uint64_t seed = resolve_seed(a.c, ctx);
    plan.ga = ga_config(a.c, seed, plan.ga);
    plan.eval = eval_config(a.c, seed, plan.eval);
    GridSweepResult res = run_grid_sweep(plan, progress_sink(a.c));
    emit(ctx, a.c, "grid_cost.csv", io::grid_to_csv(res.cost));
    emit(ctx, a.c, "grid_service_level.csv", io::grid_to_csv(res.service_level));
    emit(ctx, a.c, "grid_wastage.csv", io::grid_to_csv(res.wastage));
    std::string table = io::kpi_header();
    json fits = json::array();
    for (const auto& cell : res.cells) {
        std::ostringstream label;
        label << "a=" << io::format_number(cell.sensitivity) << " b=" << io::format_number(cell.specificity);
        table += io::kpi_row(label.str(), cell.kpis);
        fits.push_back({{"sensitivity", cell.sensitivity},
                        {"specificity", cell.specificity},
                        {"fit", io::fit_report_to_json(cell.fit, plan.family)}});
    }
    emit(ctx, a.c, "kpis.csv", table);
    emit(ctx, a.c, "fits.json", fits.dump(2) + "\n");
    std::cout << table;
    finish(ctx, a.c, {{"command", "sweep"}, {"plan", io::sweep_plan_to_json(plan)}});
}

struct SensitivityArgs {
    Common c;
    std::string axis = "slippage-rate";
    std::vector<double> values;
    std::string scenario = "uclh-returns";
    std::string family = "ss";
    std::string warm_start;
};

void run_sensitivity(SensitivityArgs& a, RunContext& ctx) {
    SensitivityAxis axis = parse_axis(a.axis);
    std::vector<double> values = a.values.empty() ? preset_values(axis) : a.values;
    SweepPlan plan;
    plan.scenario_name = a.scenario;
    plan.scenario = io::load_scenario(a.scenario);
    plan.family = parse_family(a.family);
    std::uint64_t seed = resolve_seed(a.c, ctx);
    GAConfig ga;
    ga.patience = 50;
    plan.ga = ga_config(a.c, seed, ga);
    plan.eval = eval_config(a.c, seed);
    if (!a.warm_start.empty()) {
        auto pf = load_policy(a.warm_start);
        const auto* ss = std::get_if<WeeklySSPolicy>(&pf.replenishment);
        if (!ss) throw InputError("--warm-start must name an (s,S) policy file");
        plan.warm_start = *ss;
    }
    plan.validate();
    auto rows = run_sensitivity_sweep(axis, values, plan, progress_sink(a.c));
    std::string table = io::kpi_header();
    std::string paired = io::paired_header();
    json fits = json::array();
    for (const auto& r : rows) {
        std::string v = a.axis + "=" + io::format_number(r.value);
        table += io::kpi_row(v + " oufo", r.oufo);
        table += io::kpi_row(v + " ppm", r.ppm);
        paired += io::paired_rows(v + " ppm-oufo", r.ppm_minus_oufo);
        fits.push_back({{"value", r.value},
                        {"oufo", io::fit_report_to_json(r.oufo_fit, plan.family)},
                        {"ppm", io::fit_report_to_json(r.ppm_fit, plan.family)}});
    }
    emit(ctx, a.c, "kpis.csv", table);
    emit(ctx, a.c, "paired.csv", paired);
    emit(ctx, a.c, "fits.json", fits.dump(2) + "\n");
    std::cout << table;
    finish(ctx, a.c,
           {{"command", "sensitivity"}, {"axis", a.axis}, {"values", values}, {"plan", io::sweep_plan_to_json(plan)}});
}

struct ReplayArgs {
    Common c;
    std::string trace;
    std::string scenario = "uclh-2017";
    std::string policy;
    std::string issuing = "trace";
    double threshold = 0.5;
    int start_weekday = 0;
    std::string day_trace;
};

void run_replay(ReplayArgs& a, RunContext& ctx) {
    ScenarioConfig cfg = io::load_scenario(a.scenario);
    io::PolicyFile pf = load_policy(a.policy);
    auto trace = io::trace_from_csv(io::read_text(a.trace));
    IssuingPolicy issuing = IssuingPolicy::oufo();
    if (a.issuing == "trace") issuing = IssuingPolicy{IssuingMode::Yupr, trace_predictor(trace, a.threshold)};
    ReplayOptions opt;
    opt.seed = resolve_seed(a.c, ctx);
    opt.start_weekday = a.start_weekday;
    std::ostringstream days;
    io::DayTraceWriter writer(days);
    DayObserver obs = [&](int d, int wd, const DayRecord& r) { writer(d, wd, r); };
    ReplayResult res = replay_trace(trace, cfg, pf.replenishment, issuing, opt, &obs);
    if (!res.rollout.conserves_units()) throw InvariantError("unit conservation violated");
    std::string table = kpi_table({{a.issuing == "trace" ? "yupr(trace)" : "oufo", res.kpis}});
    emit(ctx, a.c, "kpis.csv", table);
    if (!a.day_trace.empty()) {
        io::write_text_atomic(a.day_trace, days.str());
        ctx.outputs.push_back(a.day_trace);
    }
    std::cout << table;
    finish(ctx, a.c,
           {{"command", "replay"}, {"scenario", io::scenario_to_json(cfg)}, {"trace_digest", io::digest(io::read_text(a.trace))},
            {"policy", io::replenishment_to_json(pf.replenishment)}, {"issuing", a.issuing},
            {"threshold", a.threshold}, {"start_weekday", a.start_weekday}});
}

struct RocArgs {
    Common c;
    std::string input;
    double fpr_limit = 0.6;
};

void run_roc(RocArgs& a, RunContext& ctx) {
    auto data = io::roc_input_from_csv(io::read_text(a.input));
    RocCurve curve = roc_analysis(data.scores, data.labels, a.fpr_limit);
    emit(ctx, a.c, "roc.csv", io::roc_to_csv(curve));
    json summary{{"auroc", curve.auroc}, {"partial_auroc", curve.partial_auroc}, {"fpr_limit", curve.partial_fpr_limit},
                 {"points", curve.points.size()}};
    std::cout << summary.dump() << '\n';
    finish(ctx, a.c, {{"command", "roc"}, {"input_digest", io::digest(io::read_text(a.input))}, {"fpr_limit", a.fpr_limit}});
}

struct ThresholdArgs {
    Common c;
    std::string scores;
    std::string grid;
};

void run_threshold(ThresholdArgs& a, RunContext& ctx) {
    auto data = io::roc_input_from_csv(io::read_text(a.scores));
    MetricGrid grid = io::grid_from_csv(io::read_text(a.grid));
    RocCurve curve = roc_analysis(data.scores, data.labels);
    ThresholdChoice choice = select_threshold(curve, grid);
    json out{{"threshold", io::format_number(choice.threshold)},
             {"sensitivity", choice.sensitivity},
             {"specificity", choice.specificity},
             {"predicted_wastage", choice.predicted_wastage}};
    emit(ctx, a.c, "threshold.json", out.dump(2) + "\n");
    std::cout << out.dump() << '\n';
    finish(ctx, a.c, {{"command", "threshold"}, {"grid_digest", io::digest(io::read_text(a.grid))}});
}

std::string joined_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Platelet inventory simulation with return-prediction issuing"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    RunContext ctx;
    ctx.command_line = joined_args(argc, argv);

    FitArgs fit;
    auto* fit_cmd = app.add_subcommand("fit", "Fit replenishment parameters for one issuing policy");
    fit_cmd->add_option("--scenario", fit.scenario, "Built-in scenario name or scenario JSON file");
    fit_cmd->add_option("--family", fit.family, "Replenishment family: ss or standing")
        ->check(CLI::IsMember({"ss", "standing"}));
    fit_cmd->add_option("--warm-start", fit.warm_start, "(s,S) policy file injected into generation 0")
        ->check(CLI::ExistingFile);
    add_issuing(fit_cmd, fit.issuing);
    add_common(fit_cmd, fit.c, true, false);

    EvalArgs ev;
    auto* ev_cmd = app.add_subcommand("evaluate", "Evaluate a policy file on many rollouts");
    ev_cmd->add_option("--scenario", ev.scenario, "Built-in scenario name or scenario JSON file");
    ev_cmd->add_option("--policy", ev.policy, "Policy JSON file")->required()->check(CLI::ExistingFile);
    auto* ev_issuing = ev_cmd->add_option("--issuing", ev.issuing.mode, "Override the policy file's issuing policy")
                           ->check(CLI::IsMember({"oufo", "yufo", "yupr", "ppm"}));
    ev_cmd->add_option("--alpha", ev.issuing.alpha, "YUPR sensitivity")->check(CLI::Range(0.0, 1.0));
    ev_cmd->add_option("--beta", ev.issuing.beta, "YUPR specificity")->check(CLI::Range(0.0, 1.0));
    ev_cmd->add_option("--day-trace", ev.day_trace, "Write the per-day log of rollout 0 to this CSV");
    add_common(ev_cmd, ev.c, false, true);

    SweepArgs sw;
    auto* sw_cmd = app.add_subcommand("sweep", "Sensitivity/specificity grid sweep from a plan file");
    sw_cmd->add_option("--plan", sw.plan, "Sweep plan JSON file")->required()->check(CLI::ExistingFile);
    add_common(sw_cmd, sw.c, true, true);

    SensitivityArgs se;
    auto* se_cmd = app.add_subcommand("sensitivity", "One-at-a-time input sweep comparing OUFO with YUPR-PPM");
    se_cmd->add_option("--axis", se.axis, "return-rate, slippage-rate or age-profile-p");
    se_cmd->add_option("--values", se.values, "Axis values (default: the preset grid)")->delimiter(',');
    se_cmd->add_option("--scenario", se.scenario, "Base scenario");
    se_cmd->add_option("--family", se.family, "Replenishment family: ss or standing")
        ->check(CLI::IsMember({"ss", "standing"}));
    se_cmd->add_option("--warm-start", se.warm_start, "(s,S) policy file for the first OUFO fit")
        ->check(CLI::ExistingFile);
    add_common(se_cmd, se.c, true, true);

    ReplayArgs rp;
    auto* rp_cmd = app.add_subcommand("replay", "Replay a recorded request trace");
    rp_cmd->add_option("--trace", rp.trace, "Trace CSV (day,half,qty,true_label,predicted)")
        ->required()
        ->check(CLI::ExistingFile);
    rp_cmd->add_option("--policy", rp.policy, "Replenishment policy JSON file")->required()->check(CLI::ExistingFile);
    rp_cmd->add_option("--scenario", rp.scenario, "Scenario supplying arrival profiles and costs");
    rp_cmd->add_option("--issuing", rp.issuing, "trace (YUPR on recorded predictions) or oufo")
        ->check(CLI::IsMember({"trace", "oufo"}));
    rp_cmd->add_option("--threshold", rp.threshold, "Scores at or above this are positive predictions");
    rp_cmd->add_option("--start-weekday", rp.start_weekday, "Weekday of trace day 0 (0 = Monday)")
        ->check(CLI::Range(0, 6));
    rp_cmd->add_option("--day-trace", rp.day_trace, "Write the per-day log to this CSV");
    add_common(rp_cmd, rp.c, false, false);

    RocArgs roc;
    auto* roc_cmd = app.add_subcommand("roc", "ROC curve, AUROC and partial AUROC from score,label CSV");
    roc_cmd->add_option("--input", roc.input, "CSV with score,label rows")->required()->check(CLI::ExistingFile);
    roc_cmd->add_option("--fpr-limit", roc.fpr_limit, "Upper FPR bound of the partial area")
        ->check(CLI::Range(0.0, 1.0));
    add_common(roc_cmd, roc.c, false, false);

    ThresholdArgs th;
    auto* th_cmd = app.add_subcommand("threshold", "Pick the score threshold minimizing interpolated wastage");
    th_cmd->add_option("--scores", th.scores, "CSV with score,label rows")->required()->check(CLI::ExistingFile);
    th_cmd->add_option("--grid", th.grid, "Wastage grid CSV from a sweep")->required()->check(CLI::ExistingFile);
    add_common(th_cmd, th.c, false, false);

    auto* sc_cmd = app.add_subcommand("scenario", "Scenario utilities");
    sc_cmd->require_subcommand(1);
    std::string export_name;
    std::string export_out;
    auto* exp_cmd = sc_cmd->add_subcommand("export", "Print a built-in scenario as JSON");
    exp_cmd->add_option("name", export_name, "Built-in scenario name")->required();
    exp_cmd->add_option("--out", export_out, "Also write to this file");
    sc_cmd->add_subcommand("list", "List built-in scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*fit_cmd) run_fit(fit, ctx);
        if (*ev_cmd) {
            ev.issuing_given = ev_issuing->count() > 0;
            run_evaluate(ev, ctx);
        }
        if (*sw_cmd) run_sweep(sw, ctx);
        if (*se_cmd) run_sensitivity(se, ctx);
        if (*rp_cmd) run_replay(rp, ctx);
        if (*roc_cmd) run_roc(roc, ctx);
        if (*th_cmd) run_threshold(th, ctx);
        if (*sc_cmd) {
            if (*exp_cmd) {
                std::string text = io::scenario_to_json(builtin_scenario(export_name)).dump(2) + "\n";
                if (!export_out.empty()) io::write_text_atomic(export_out, text);
                std::cout << text;
            } else {
                for (const auto& n : builtin_scenario_names()) std::cout << n << '\n';
            }
        }
    } catch (const InputError& e) {
        std::cerr << "pirsim: input error: " << e.what() << '\n';
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "pirsim: input error: " << e.what() << '\n';
        return 2;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "pirsim: input error: " << e.what() << '\n';
        return 2;
    } catch (const InvariantError& e) {
        std::cerr << "pirsim: internal invariant violated: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "pirsim: internal error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
