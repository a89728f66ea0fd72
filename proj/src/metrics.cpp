#include "pir/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pir/error.hpp"

namespace pir {

RolloutKpis rollout_kpis(const RolloutResult& r) {
    RolloutKpis k;
    const DayTotals& t = r.scored;
    k.daily_cost = r.days_counted > 0 ? -t.reward / static_cast<double>(r.days_counted) : 0.0;
    k.service_level =
        t.demand > 0 ? static_cast<double>(t.demand - t.emergency_units) / static_cast<double>(t.demand) : 1.0;
    k.wastage = t.received() > 0 ? static_cast<double>(t.wasted()) / static_cast<double>(t.received()) : 0.0;
    return k;
}

namespace {

template <class Get>
MeanSd mean_sd(std::span<const RolloutKpis> ks, Get get) {
    const auto n = static_cast<double>(ks.size());
    double sum = 0.0;
    for (const auto& k : ks) sum += get(k);
    double mean = sum / n;
    double ss = 0.0;
    for (const auto& k : ks) {
        double d = get(k) - mean;
        ss += d * d;
    }
    double sd = ks.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    return {mean, sd};
}

std::vector<RolloutKpis> kpis_of(std::span<const RolloutResult> results) {
    std::vector<RolloutKpis> out;
    out.reserve(results.size());
    for (const auto& r : results) out.push_back(rollout_kpis(r));
    return out;
}

}  // namespace

KPIReport compute_kpis(std::span<const RolloutResult> results) {
    if (results.empty()) throw InputError("compute_kpis: no rollouts");
    auto ks = kpis_of(results);
    KPIReport rep;
    rep.daily_cost = mean_sd(std::span<const RolloutKpis>(ks), [](const RolloutKpis& k) { return k.daily_cost; });
    rep.service_level =
        mean_sd(std::span<const RolloutKpis>(ks), [](const RolloutKpis& k) { return k.service_level; });
    rep.wastage = mean_sd(std::span<const RolloutKpis>(ks), [](const RolloutKpis& k) { return k.wastage; });
    rep.n_rollouts = results.size();
    return rep;
}

PairedComparison paired_difference(std::span<const RolloutResult> a, std::span<const RolloutResult> b) {
    if (a.size() != b.size()) throw InputError("paired_difference: result lists differ in length");
    if (a.empty()) throw InputError("paired_difference: no rollouts");
    auto ka = kpis_of(a);
    auto kb = kpis_of(b);
    std::vector<RolloutKpis> diff(ka.size());
    for (std::size_t i = 0; i < ka.size(); ++i) {
        diff[i] = {ka[i].daily_cost - kb[i].daily_cost, ka[i].service_level - kb[i].service_level,
                   ka[i].wastage - kb[i].wastage};
    }
    std::span<const RolloutKpis> d(diff);
    const double root_n = std::sqrt(static_cast<double>(diff.size()));
    auto to_sem = [&](MeanSd m) { return MeanSem{m.mean, m.sd / root_n}; };
    PairedComparison out;
    out.daily_cost = to_sem(mean_sd(d, [](const RolloutKpis& k) { return k.daily_cost; }));
    out.service_level = to_sem(mean_sd(d, [](const RolloutKpis& k) { return k.service_level; }));
    out.wastage = to_sem(mean_sd(d, [](const RolloutKpis& k) { return k.wastage; }));
    out.n = diff.size();
    out.degenerate_n = diff.size() < 2;
    return out;
}

double partial_area(std::span<const RocPoint> points, double limit) {
    double area = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        const RocPoint& p = points[i - 1];
        const RocPoint& q = points[i];
        if (p.fpr >= limit) break;
        double x1 = q.fpr;
        double y1 = q.tpr;
        if (q.fpr > limit) {
            double t = (limit - p.fpr) / (q.fpr - p.fpr);
            x1 = limit;
            y1 = p.tpr + t * (q.tpr - p.tpr);
        }
        area += (x1 - p.fpr) * (p.tpr + y1) / 2.0;
    }
    return area;
}

RocCurve roc_analysis(std::span<const double> scores, std::span<const int> labels, double fpr_limit) {
    if (scores.size() != labels.size()) throw InputError("roc_analysis: scores and labels differ in length");
    long positives = 0;
    long negatives = 0;
    for (int l : labels) {
        if (l == 1) {
            ++positives;
        } else if (l == 0) {
            ++negatives;
        } else {
            throw InputError("roc_analysis: labels must be 0 or 1");
        }
    }
    if (positives == 0 || negatives == 0) throw InputError("roc_analysis: both classes must be present");

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    RocCurve curve;
    curve.partial_fpr_limit = fpr_limit;
    curve.points.push_back(RocPoint{});
    long tp = 0;
    long fp = 0;
    for (std::size_t k = 0; k < order.size();) {
        const double threshold = scores[order[k]];
        while (k < order.size() && scores[order[k]] == threshold) {
            if (labels[order[k]] == 1) {
                ++tp;
            } else {
                ++fp;
            }
            ++k;
        }
        curve.points.push_back(RocPoint{threshold, static_cast<double>(tp) / static_cast<double>(positives),
                                        static_cast<double>(fp) / static_cast<double>(negatives)});
    }
    curve.auroc = partial_area(curve.points, 1.0);
    curve.partial_auroc = partial_area(curve.points, fpr_limit);
    return curve;
}

std::vector<double> MetricGrid::unit_axis(double step) {
    if (!(step > 0.0) || step > 1.0) throw InputError("grid step must lie in (0, 1]");
    const long n = std::lround(1.0 / step);
    if (std::abs(static_cast<double>(n) * step - 1.0) > 1e-9) throw InputError("grid step must divide 1");
    std::vector<double> axis;
    for (long i = 0; i <= n; ++i) axis.push_back(static_cast<double>(i) / static_cast<double>(n));
    return axis;
}

MetricGrid MetricGrid::standard(double fill) {
    MetricGrid g;
    g.sensitivity = unit_axis(0.1);
    g.specificity = unit_axis(0.1);
    g.values.assign(g.sensitivity.size() * g.specificity.size(), fill);
    return g;
}

void MetricGrid::validate() const {
    auto increasing = [](const std::vector<double>& a) {
        if (a.empty()) return false;
        for (std::size_t i = 1; i < a.size(); ++i) {
            if (!(a[i] > a[i - 1])) return false;
        }
        return true;
    };
    if (!increasing(sensitivity) || !increasing(specificity)) {
        throw InputError("metric grid axes must be non-empty and strictly increasing");
    }
    if (values.size() != sensitivity.size() * specificity.size()) {
        throw InputError("metric grid has holes: expected " + std::to_string(sensitivity.size() * specificity.size()) +
                         " values, got " + std::to_string(values.size()));
    }
}

namespace {

/// Lower cell index and fractional position of x on `axis`.
std::pair<std::size_t, double> locate(const std::vector<double>& axis, double x) {
    if (axis.size() == 1) return {0, 0.0};
    auto it = std::upper_bound(axis.begin(), axis.end(), x);
    std::size_t hi = static_cast<std::size_t>(it - axis.begin());
    if (hi == axis.size()) hi = axis.size() - 1;
    if (hi == 0) hi = 1;
    std::size_t lo = hi - 1;
    double t = (x - axis[lo]) / (axis[hi] - axis[lo]);
    return {lo, t};
}

}  // namespace

double interpolate_grid(const MetricGrid& grid, double sensitivity, double specificity) {
    auto inside = [](const std::vector<double>& axis, double x) {
        return !axis.empty() && x >= axis.front() && x <= axis.back();
    };
    if (!inside(grid.sensitivity, sensitivity) || !inside(grid.specificity, specificity)) {
        throw InputError("interpolate_grid: query outside the grid");
    }
    auto [i, s] = locate(grid.sensitivity, sensitivity);
    auto [j, t] = locate(grid.specificity, specificity);
    const std::size_t i1 = grid.sensitivity.size() > 1 ? i + 1 : i;
    const std::size_t j1 = grid.specificity.size() > 1 ? j + 1 : j;
    // Exact at nodes: zero weights never touch the neighbouring value.
    double v = 0.0;
    auto add = [&](double w, std::size_t a, std::size_t b) {
        if (w != 0.0) v += w * grid.at(a, b);
    };
    add((1.0 - s) * (1.0 - t), i, j);
    add(s * (1.0 - t), i1, j);
    add((1.0 - s) * t, i, j1);
    add(s * t, i1, j1);
    return v;
}

ThresholdChoice select_threshold(const RocCurve& curve, const MetricGrid& wastage_grid) {
    if (curve.points.empty()) throw InputError("select_threshold: empty ROC curve");
    ThresholdChoice best;
    bool have = false;
    for (const RocPoint& p : curve.points) {
        double spec = 1.0 - p.fpr;
        double w = interpolate_grid(wastage_grid, p.tpr, spec);
        if (!have || w < best.predicted_wastage || (w == best.predicted_wastage && p.tpr > best.sensitivity)) {
            best = {p.threshold, p.tpr, spec, w};
            have = true;
        }
    }
    return best;
}

}  // namespace pir
