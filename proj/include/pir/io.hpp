#pragma once

// File formats: JSON for scenarios, policies, sweep plans, fit reports and run
// manifests; CSV for grids, ROC data, traces and KPI tables.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pir/core.hpp"
#include "pir/engine.hpp"
#include "pir/experiments.hpp"
#include "pir/metrics.hpp"
#include "pir/optimize.hpp"
#include "pir/policies.hpp"

namespace pir::io {

using nlohmann::json;

std::string read_text(const std::filesystem::path& path);

/// Writes via a temporary sibling and rename, so readers never see a partial file.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

/// Shortest round-trip decimal representation.
std::string format_number(double v);

// Scenarios ---------------------------------------------------------------

json scenario_to_json(const ScenarioConfig& cfg);
/// Age-profile rows whose sum is within table rounding of 1 are rescaled, then the config is validated.
ScenarioConfig scenario_from_json(const json& j);
/// A built-in name or a path to a scenario file.
ScenarioConfig load_scenario(const std::string& name_or_path);

// Policies ----------------------------------------------------------------

struct PolicyFile {
    ReplenishmentPolicy replenishment = StandingOrderPolicy{};
    std::optional<IssuingPolicy> issuing;
    /// Issuing predictions come from this trace file when set.
    std::optional<std::string> trace_path;
    double trace_threshold = 0.5;
};

json replenishment_to_json(const ReplenishmentPolicy& p);
json issuing_to_json(const IssuingPolicy& p);
json policy_to_json(const ReplenishmentPolicy& p, const std::optional<IssuingPolicy>& issuing);
PolicyFile policy_from_json(const json& j);
IssuingPolicy parse_issuing(const std::string& mode, double alpha, double beta);

// Fitting and sweeps ------------------------------------------------------

json fit_report_to_json(const FitReport& rep, ReplenishmentFamily family);
json ga_to_json(const GAConfig& ga);
GAConfig ga_from_json(const json& j, GAConfig base = {});
json eval_to_json(const EvalConfig& e);
EvalConfig eval_from_json(const json& j, EvalConfig base = {});
SweepPlan sweep_plan_from_json(const json& j);
json sweep_plan_to_json(const SweepPlan& plan);

// CSV ---------------------------------------------------------------------

std::vector<std::vector<std::string>> parse_csv(const std::string& text);

std::string grid_to_csv(const MetricGrid& grid);
MetricGrid grid_from_csv(const std::string& text);

struct ScoredLabels {
    std::vector<double> scores;
    std::vector<int> labels;
};
ScoredLabels roc_input_from_csv(const std::string& text);
std::string roc_to_csv(const RocCurve& curve);

std::vector<TraceRecord> trace_from_csv(const std::string& text);
std::string trace_to_csv(const std::vector<TraceRecord>& trace);

std::string kpi_header();
std::string kpi_row(const std::string& label, const KPIReport& k);
std::string paired_header();
std::string paired_rows(const std::string& label, const PairedComparison& p);
std::string rollouts_to_csv(const std::vector<RolloutResult>& results);

/// Per-day log line writer for rollouts.
class DayTraceWriter {
public:
    explicit DayTraceWriter(std::ostream& os);
    void operator()(int day, int weekday, const DayRecord& rec);

private:
    std::ostream* os_;
};

// Manifest ----------------------------------------------------------------

struct RunManifest {
    std::string command_line;
    std::string config_digest;
    std::uint64_t seed = 0;
    bool seed_from_entropy = false;
    std::string tool_version;
    double wall_clock_seconds = 0.0;
    std::vector<std::string> outputs;
};

/// FNV-1a 64-bit digest of `text`, as 16 hex digits.
std::string digest(const std::string& text);

json manifest_to_json(const RunManifest& m);

}  // namespace pir::io
