#include "pir/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pir/error.hpp"

namespace pir::io {

namespace fs = std::filesystem;

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out) throw InputError("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, path);
}

std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

[[noreturn]] void bad(const std::string& msg) { throw InputError(msg); }

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        bad(std::string("field '") + key + "': " + e.what());
    }
}

template <class T>
T require(const json& j, const char* key) {
    if (!j.contains(key)) bad(std::string("missing field '") + key + "'");
    return get_or<T>(j, key, T{});
}

double parse_double(const std::string& s, const std::string& where) {
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) bad(where + ": '" + s + "' is not a number");
    return v;
}

long parse_long(const std::string& s, const std::string& where) {
    long v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) bad(where + ": '" + s + "' is not an integer");
    return v;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

// Scenarios ---------------------------------------------------------------

json scenario_to_json(const ScenarioConfig& cfg) {
    json profiles = json::array();
    for (const auto& p : cfg.age_profiles) profiles.push_back(p.probabilities);
    const auto& c = cfg.costs;
    return json{
        {"max_life", cfg.max_life},
        {"lead_time", cfg.lead_time},
        {"max_order", cfg.max_order},
        {"demand_means", cfg.demand_means},
        {"return_rate", cfg.return_rate},
        {"slippage_rate", cfg.slippage_rate},
        {"age_profiles", profiles},
        {"costs",
         {{"fixed_order_cost", c.fixed_order_cost},
          {"variable_order_cost", c.variable_order_cost},
          {"holding_cost", c.holding_cost},
          {"shortage_cost", c.shortage_cost},
          {"wastage_cost", c.wastage_cost},
          {"discount", c.discount}}},
    };
}

ScenarioConfig scenario_from_json(const json& j) {
    if (!j.is_object()) bad("scenario must be a JSON object");
    ScenarioConfig cfg;
    cfg.max_life = require<int>(j, "max_life");
    cfg.lead_time = get_or<int>(j, "lead_time", 0);
    cfg.max_order = get_or<int>(j, "max_order", 100);
    auto demand = require<std::vector<double>>(j, "demand_means");
    if (demand.size() != kDaysPerWeek) bad("demand_means must have 7 entries (Monday first)");
    std::copy(demand.begin(), demand.end(), cfg.demand_means.begin());
    cfg.return_rate = require<double>(j, "return_rate");
    cfg.slippage_rate = require<double>(j, "slippage_rate");
    auto profiles = require<std::vector<std::vector<double>>>(j, "age_profiles");
    if (profiles.size() == 1) profiles.assign(kDaysPerWeek, profiles.front());
    if (profiles.size() != kDaysPerWeek) bad("age_profiles must have 7 rows (or 1 shared row)");
    for (int d = 0; d < kDaysPerWeek; ++d) {
        AgeProfile p{profiles[static_cast<std::size_t>(d)]};
        double sum = 0.0;
        for (double x : p.probabilities) sum += x;
        // Rows given with two-decimal rounding may miss 1 slightly.
        if (sum > 0.0 && std::abs(sum - 1.0) <= 0.05) p = normalized(std::move(p));
        cfg.age_profiles[static_cast<std::size_t>(d)] = std::move(p);
    }
    if (j.contains("costs")) {
        const json& c = j.at("costs");
        CostParams def;
        cfg.costs.fixed_order_cost = get_or<double>(c, "fixed_order_cost", def.fixed_order_cost);
        cfg.costs.variable_order_cost = get_or<double>(c, "variable_order_cost", def.variable_order_cost);
        cfg.costs.holding_cost = get_or<double>(c, "holding_cost", def.holding_cost);
        cfg.costs.shortage_cost = get_or<double>(c, "shortage_cost", def.shortage_cost);
        cfg.costs.wastage_cost = get_or<double>(c, "wastage_cost", def.wastage_cost);
        cfg.costs.discount = get_or<double>(c, "discount", def.discount);
    }
    validate_scenario(cfg);
    return cfg;
}

namespace {

json parse_json(const std::string& text, const std::string& where) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        bad(where + ": " + e.what());
    }
}

}  // namespace

ScenarioConfig load_scenario(const std::string& name_or_path) {
    for (const auto& n : builtin_scenario_names()) {
        if (n == name_or_path) return builtin_scenario(n);
    }
    if (!fs::exists(name_or_path)) bad("unknown scenario '" + name_or_path + "'");
    return scenario_from_json(parse_json(read_text(name_or_path), name_or_path));
}

// Policies ----------------------------------------------------------------

json replenishment_to_json(const ReplenishmentPolicy& p) {
    if (const auto* so = std::get_if<StandingOrderPolicy>(&p)) return json{{"q", so->quantity}};
    const auto& ss = std::get<WeeklySSPolicy>(p);
    json j = json::object();
    for (int d = 0; d < kDaysPerWeek; ++d) {
        auto i = static_cast<std::size_t>(d);
        j["s" + std::to_string(d)] = ss.reorder_point[i];
        j["cap_s" + std::to_string(d)] = ss.order_up_to[i];
    }
    return j;
}

json issuing_to_json(const IssuingPolicy& p) {
    switch (p.mode) {
        case IssuingMode::Oufo: return json{{"mode", "oufo"}};
        case IssuingMode::Yufo: return json{{"mode", "yufo"}};
        case IssuingMode::Yupr: break;
    }
    if (const auto* sim = std::get_if<SimulatedPredictor>(&p.predictor)) {
        return json{{"mode", "yupr"}, {"alpha", sim->sensitivity}, {"beta", sim->specificity}};
    }
    return json{{"mode", "yupr"}, {"trace", true}};
}

json policy_to_json(const ReplenishmentPolicy& p, const std::optional<IssuingPolicy>& issuing) {
    json j = replenishment_to_json(p);
    if (issuing) j["issuing"] = issuing_to_json(*issuing);
    return j;
}

IssuingPolicy parse_issuing(const std::string& mode, double alpha, double beta) {
    IssuingPolicy p;
    if (mode == "oufo") {
        p = IssuingPolicy::oufo();
    } else if (mode == "yufo") {
        p = IssuingPolicy::yufo();
    } else if (mode == "yupr") {
        p = IssuingPolicy::yupr(alpha, beta);
    } else if (mode == "ppm") {
        p = IssuingPolicy::perfect();
    } else {
        bad("unknown issuing mode '" + mode + "' (expected oufo, yufo, yupr or ppm)");
    }
    validate_issuing(p);
    return p;
}

PolicyFile policy_from_json(const json& j) {
    if (!j.is_object()) bad("policy must be a JSON object");
    PolicyFile out;
    if (j.contains("q")) {
        out.replenishment = StandingOrderPolicy{require<int>(j, "q")};
    } else {
        WeeklySSPolicy ss;
        for (int d = 0; d < kDaysPerWeek; ++d) {
            auto i = static_cast<std::size_t>(d);
            std::string s = "s" + std::to_string(d);
            std::string cap = "cap_s" + std::to_string(d);
            ss.reorder_point[i] = require<int>(j, s.c_str());
            ss.order_up_to[i] = require<int>(j, cap.c_str());
        }
        out.replenishment = ss;
    }
    if (j.contains("issuing")) {
        const json& is = j.at("issuing");
        std::string mode = require<std::string>(is, "mode");
        if (is.contains("trace_path")) {
            if (mode != "yupr") bad("trace_path requires issuing mode yupr");
            out.trace_path = require<std::string>(is, "trace_path");
            out.trace_threshold = get_or<double>(is, "threshold", 0.5);
            out.issuing = IssuingPolicy{IssuingMode::Yupr, TracePredictor{}};
        } else {
            out.issuing = parse_issuing(mode, get_or<double>(is, "alpha", 0.0), get_or<double>(is, "beta", 1.0));
        }
    }
    return out;
}

// Fitting and sweeps ------------------------------------------------------

json fit_report_to_json(const FitReport& rep, ReplenishmentFamily family) {
    json history = json::array();
    for (const auto& h : rep.history) {
        history.push_back(
            {{"generation", h.generation}, {"mean_return", h.mean_return}, {"params", replenishment_to_json(h.params)}});
    }
    return json{
        {"family", to_string(family)},
        {"best", replenishment_to_json(rep.best)},
        {"best_mean_return", rep.best_mean_return},
        {"generations", rep.generations},
        {"evaluations", rep.evaluations},
        {"distinct_evaluations", rep.distinct_evaluations},
        {"stop_reason", to_string(rep.stop_reason)},
        {"ga_best", replenishment_to_json(rep.ga_best)},
        {"ga_best_mean_return", rep.ga_best_mean_return},
        {"refine_moves", rep.refine_moves},
        {"history", history},
    };
}

json ga_to_json(const GAConfig& ga) {
    return json{{"population_size", ga.population_size}, {"max_generations", ga.max_generations},
                {"patience", ga.patience},               {"crossover_prob", ga.crossover_prob},
                {"mutation_prob", ga.mutation_prob},     {"tournament_size", ga.tournament_size},
                {"fit_rollouts", ga.fit_rollouts},       {"scored_days", ga.scored_days},
                {"warmup", ga.warmup},                   {"seed", ga.seed},
                {"refine_rounds", ga.refine_rounds}};
}

GAConfig ga_from_json(const json& j, GAConfig ga) {
    ga.population_size = get_or(j, "population_size", ga.population_size);
    ga.max_generations = get_or(j, "max_generations", ga.max_generations);
    ga.patience = get_or(j, "patience", ga.patience);
    ga.crossover_prob = get_or(j, "crossover_prob", ga.crossover_prob);
    ga.mutation_prob = get_or(j, "mutation_prob", ga.mutation_prob);
    ga.tournament_size = get_or(j, "tournament_size", ga.tournament_size);
    ga.fit_rollouts = get_or(j, "fit_rollouts", ga.fit_rollouts);
    ga.scored_days = get_or(j, "scored_days", ga.scored_days);
    ga.warmup = get_or(j, "warmup", ga.warmup);
    ga.seed = get_or(j, "seed", ga.seed);
    ga.refine_rounds = get_or(j, "refine_rounds", ga.refine_rounds);
    return ga;
}

json eval_to_json(const EvalConfig& e) {
    return json{{"rollouts", e.n_rollouts}, {"scored_days", e.scored_days}, {"warmup", e.warmup}, {"seed", e.seed}};
}

EvalConfig eval_from_json(const json& j, EvalConfig e) {
    e.n_rollouts = get_or(j, "rollouts", e.n_rollouts);
    e.scored_days = get_or(j, "scored_days", e.scored_days);
    e.warmup = get_or(j, "warmup", e.warmup);
    e.seed = get_or(j, "seed", e.seed);
    return e;
}

SweepPlan sweep_plan_from_json(const json& j) {
    if (!j.is_object()) bad("sweep plan must be a JSON object");
    SweepPlan plan;
    if (!j.contains("scenario")) bad("missing field 'scenario'");
    const json& sc = j.at("scenario");
    if (sc.is_string()) {
        plan.scenario_name = sc.get<std::string>();
        plan.scenario = load_scenario(plan.scenario_name);
    } else {
        plan.scenario = scenario_from_json(sc);
    }
    plan.family = parse_family(get_or<std::string>(j, "replenishment", "ss"));
    if (j.contains("grid")) {
        const json& g = j.at("grid");
        if (g.contains("step")) {
            plan.sensitivities = plan.specificities = MetricGrid::unit_axis(g.at("step").get<double>());
        }
        if (g.contains("sensitivity")) plan.sensitivities = g.at("sensitivity").get<std::vector<double>>();
        if (g.contains("specificity")) plan.specificities = g.at("specificity").get<std::vector<double>>();
    }
    if (j.contains("ga")) plan.ga = ga_from_json(j.at("ga"));
    if (j.contains("evaluation")) plan.eval = eval_from_json(j.at("evaluation"));
    if (j.contains("warm_start")) {
        PolicyFile pf = policy_from_json(j.at("warm_start"));
        const auto* ss = std::get_if<WeeklySSPolicy>(&pf.replenishment);
        if (!ss) bad("warm_start must be an (s,S) policy");
        plan.warm_start = *ss;
    }
    plan.output_dir = get_or<std::string>(j, "output_dir", ".");
    plan.validate();
    return plan;
}

json sweep_plan_to_json(const SweepPlan& plan) {
    json j{
        {"scenario", plan.scenario_name.empty() ? scenario_to_json(plan.scenario) : json(plan.scenario_name)},
        {"replenishment", to_string(plan.family)},
        {"grid", {{"sensitivity", plan.sensitivities}, {"specificity", plan.specificities}}},
        {"ga", ga_to_json(plan.ga)},
        {"evaluation", eval_to_json(plan.eval)},
        {"output_dir", plan.output_dir},
    };
    if (plan.warm_start) j["warm_start"] = replenishment_to_json(*plan.warm_start);
    return j;
}

// CSV ---------------------------------------------------------------------

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            auto comma = line.find(',', start);
            cells.push_back(trim(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        rows.push_back(std::move(cells));
    }
    return rows;
}

std::string grid_to_csv(const MetricGrid& grid) {
    std::ostringstream os;
    os << "sensitivity\\specificity";
    for (double b : grid.specificity) os << ',' << format_number(b);
    os << '\n';
    for (std::size_t i = 0; i < grid.sensitivity.size(); ++i) {
        os << format_number(grid.sensitivity[i]);
        for (std::size_t j = 0; j < grid.specificity.size(); ++j) os << ',' << format_number(grid.at(i, j));
        os << '\n';
    }
    return os.str();
}

MetricGrid grid_from_csv(const std::string& text) {
    auto rows = parse_csv(text);
    if (rows.size() < 2) bad("grid CSV needs a header row and at least one data row");
    MetricGrid g;
    const auto& header = rows.front();
    for (std::size_t c = 1; c < header.size(); ++c) g.specificity.push_back(parse_double(header[c], "grid header"));
    if (g.specificity.empty()) bad("grid CSV header has no specificity values");
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        std::string where = "grid row " + std::to_string(r + 1);
        if (row.size() != header.size()) {
            bad(where + ": grid dimension mismatch (expected " + std::to_string(header.size()) + " cells, got " +
                std::to_string(row.size()) + ")");
        }
        g.sensitivity.push_back(parse_double(row[0], where));
        for (std::size_t c = 1; c < row.size(); ++c) g.values.push_back(parse_double(row[c], where));
    }
    g.validate();
    return g;
}

ScoredLabels roc_input_from_csv(const std::string& text) {
    auto rows = parse_csv(text);
    ScoredLabels out;
    std::size_t start = 0;
    if (!rows.empty() && !rows[0].empty() && rows[0][0] == "score") start = 1;
    for (std::size_t r = start; r < rows.size(); ++r) {
        std::string where = "ROC row " + std::to_string(r + 1);
        if (rows[r].size() != 2) bad(where + ": expected score,label");
        out.scores.push_back(parse_double(rows[r][0], where));
        long label = parse_long(rows[r][1], where);
        if (label != 0 && label != 1) bad(where + ": label must be 0 or 1");
        out.labels.push_back(static_cast<int>(label));
    }
    return out;
}

std::string roc_to_csv(const RocCurve& curve) {
    std::ostringstream os;
    os << "threshold,tpr,fpr\n";
    for (const auto& p : curve.points) {
        os << format_number(p.threshold) << ',' << format_number(p.tpr) << ',' << format_number(p.fpr) << '\n';
    }
    return os.str();
}

std::vector<TraceRecord> trace_from_csv(const std::string& text) {
    auto rows = parse_csv(text);
    std::vector<TraceRecord> out;
    std::size_t start = 0;
    if (!rows.empty() && !rows[0].empty() && rows[0][0] == "day") start = 1;
    for (std::size_t r = start; r < rows.size(); ++r) {
        std::string where = "trace row " + std::to_string(r + 1);
        const auto& row = rows[r];
        if (row.size() != 5) bad(where + ": malformed record (expected day,half,qty,true_label,predicted)");
        TraceRecord rec;
        rec.day = static_cast<int>(parse_long(row[0], where));
        if (row[1] == "am") {
            rec.half = Half::Am;
        } else if (row[1] == "pm") {
            rec.half = Half::Pm;
        } else {
            bad(where + ": half must be am or pm");
        }
        rec.quantity = static_cast<int>(parse_long(row[2], where));
        rec.true_label = static_cast<int>(parse_long(row[3], where));
        rec.predicted = parse_double(row[4], where);
        out.push_back(rec);
    }
    validate_trace(out);
    return out;
}

std::string trace_to_csv(const std::vector<TraceRecord>& trace) {
    std::ostringstream os;
    os << "day,half,qty,true_label,predicted\n";
    for (const auto& r : trace) {
        os << r.day << ',' << (r.half == Half::Am ? "am" : "pm") << ',' << r.quantity << ',' << r.true_label << ','
           << format_number(r.predicted) << '\n';
    }
    return os.str();
}

std::string kpi_header() {
    return "label,n_rollouts,daily_cost_mean,daily_cost_sd,service_level_mean,service_level_sd,wastage_mean,"
           "wastage_sd\n";
}

std::string kpi_row(const std::string& label, const KPIReport& k) {
    std::ostringstream os;
    os << label << ',' << k.n_rollouts << ',' << format_number(k.daily_cost.mean) << ','
       << format_number(k.daily_cost.sd) << ',' << format_number(k.service_level.mean) << ','
       << format_number(k.service_level.sd) << ',' << format_number(k.wastage.mean) << ','
       << format_number(k.wastage.sd) << '\n';
    return os.str();
}

std::string paired_header() { return "label,metric,mean_difference,sem,n,degenerate_n\n"; }

std::string paired_rows(const std::string& label, const PairedComparison& p) {
    std::ostringstream os;
    auto row = [&](const char* metric, const MeanSem& m) {
        os << label << ',' << metric << ',' << format_number(m.mean) << ',' << format_number(m.sem) << ',' << p.n
           << ',' << (p.degenerate_n ? 1 : 0) << '\n';
    };
    row("daily_cost", p.daily_cost);
    row("service_level", p.service_level);
    row("wastage", p.wastage);
    return os.str();
}

std::string rollouts_to_csv(const std::vector<RolloutResult>& results) {
    std::ostringstream os;
    os << "rollout,days,reward,demand,emergency,received_routine,received_emergency,transfused,"
          "wasted_expiry,wasted_slippage,wasted_expired_after_issue,daily_cost,service_level,wastage\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        const auto& t = r.scored;
        RolloutKpis k = rollout_kpis(r);
        os << i << ',' << r.days_counted << ',' << format_number(t.reward) << ',' << t.demand << ','
           << t.emergency_units << ',' << t.received_routine << ',' << t.received_emergency << ',' << t.transfused
           << ',' << t.wasted_expiry_in_stock << ',' << t.wasted_slippage << ',' << t.wasted_expired_after_issue
           << ',' << format_number(k.daily_cost) << ',' << format_number(k.service_level) << ','
           << format_number(k.wastage) << '\n';
    }
    return os.str();
}

DayTraceWriter::DayTraceWriter(std::ostream& os) : os_(&os) {
    *os_ << "day,weekday,order,am_demand,pm_demand,emergency,wasted_expiry,slippage,z0,reward\n";
}

void DayTraceWriter::operator()(int day, int weekday, const DayRecord& rec) {
    *os_ << day << ',' << weekday << ',' << rec.order_placed << ',' << rec.demand_am << ',' << rec.demand_pm << ','
         << rec.emergency_units << ',' << rec.wasted_expiry_in_stock << ',' << rec.wasted_slippage << ','
         << rec.wasted_expired_after_issue << ',' << format_number(rec.reward) << '\n';
}

// Manifest ----------------------------------------------------------------

std::string digest(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json manifest_to_json(const RunManifest& m) {
    return json{{"command_line", m.command_line},
                {"config_digest", m.config_digest},
                {"seed", m.seed},
                {"seed_from_entropy", m.seed_from_entropy},
                {"tool_version", m.tool_version},
                {"wall_clock_seconds", m.wall_clock_seconds},
                {"outputs", m.outputs}};
}

}  // namespace pir::io
