#pragma once

// KPIs over rollouts, paired-sample comparisons, ROC analysis and lookups on
// (sensitivity, specificity) KPI surfaces.

#include <limits>
#include <span>
#include <vector>

#include "pir/core.hpp"

namespace pir {

/// KPIs of a single rollout.
struct RolloutKpis {
    double daily_cost = 0.0;
    double service_level = 1.0;
    double wastage = 0.0;
};

/// Daily cost = -reward per scored day; service = share of demand met from stock;
/// wastage = share of received units lost to expiry (in stock or after issue) or slippage.
RolloutKpis rollout_kpis(const RolloutResult& r);

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;
};

struct KPIReport {
    MeanSd daily_cost;
    MeanSd service_level;
    MeanSd wastage;
    std::size_t n_rollouts = 0;
};

/// Throws InputError on an empty list.
KPIReport compute_kpis(std::span<const RolloutResult> results);

struct MeanSem {
    double mean = 0.0;
    double sem = 0.0;
};

/// Per-metric mean of (a - b) and its standard error.
struct PairedComparison {
    MeanSem daily_cost;
    MeanSem service_level;
    MeanSem wastage;
    std::size_t n = 0;
    /// Set when n < 2 and the standard errors are reported as zero.
    bool degenerate_n = false;
};

/// Throws InputError when the lists differ in length or are empty.
PairedComparison paired_difference(std::span<const RolloutResult> a, std::span<const RolloutResult> b);

struct RocPoint {
    /// A score is predicted positive iff score >= threshold.
    double threshold = std::numeric_limits<double>::infinity();
    double tpr = 0.0;
    double fpr = 0.0;
};

struct RocCurve {
    /// Thresholds descending, starting at (+inf, 0, 0) and ending at (1, 1).
    std::vector<RocPoint> points;
    double auroc = 0.0;
    /// Raw area for FPR in [0, partial_fpr_limit]; not normalized.
    double partial_auroc = 0.0;
    double partial_fpr_limit = 0.6;
};

/// Throws InputError when sizes differ, a label is not 0/1, or only one class is present.
RocCurve roc_analysis(std::span<const double> scores, std::span<const int> labels, double fpr_limit = 0.6);

/// Trapezoidal area under the (fpr, tpr) polyline for fpr in [0, limit].
double partial_area(std::span<const RocPoint> points, double limit);

/// KPI surface over a rectilinear (sensitivity, specificity) grid.
struct MetricGrid {
    std::vector<double> sensitivity;
    std::vector<double> specificity;
    /// Row-major: values[i * specificity.size() + j] at (sensitivity[i], specificity[j]).
    std::vector<double> values;

    /// The 0.0, 0.1, ..., 1.0 axes on both dimensions, filled with `fill`.
    static MetricGrid standard(double fill = 0.0);
    /// Axis values 0, step, 2*step, ..., 1.
    static std::vector<double> unit_axis(double step);

    double& at(std::size_t i, std::size_t j) { return values[i * specificity.size() + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * specificity.size() + j]; }

    /// Throws InputError unless both axes are strictly increasing and values fill the grid.
    void validate() const;
};

/// Bilinear interpolation on the enclosing cell. Throws InputError outside the grid.
double interpolate_grid(const MetricGrid& grid, double sensitivity, double specificity);

struct ThresholdChoice {
    double threshold = 0.0;
    double sensitivity = 0.0;
    double specificity = 1.0;
    double predicted_wastage = 0.0;
};

/// ROC point minimizing the interpolated wastage; ties go to the higher sensitivity.
ThresholdChoice select_threshold(const RocCurve& curve, const MetricGrid& wastage_grid);

}  // namespace pir
