#include "pir/rng.hpp"

#include <algorithm>
#include <random>

namespace pir {

int sample_poisson(KeyedEngine& engine, double mean) {
    if (!(mean > 0.0)) return 0;
    std::poisson_distribution<int> dist(mean);
    return dist(engine);
}

int sample_binomial(KeyedEngine& engine, int trials, double p) {
    if (trials <= 0 || !(p > 0.0)) return 0;
    if (p >= 1.0) return trials;
    std::binomial_distribution<int> dist(trials, p);
    return dist(engine);
}

StockVector sample_multinomial(KeyedEngine& engine, int trials, const AgeProfile& profile) {
    const int bins = profile.max_life();
    StockVector out(bins);
    int remaining = trials;
    double mass_left = 1.0;
    for (int i = 0; i < bins && remaining > 0; ++i) {
        if (i == bins - 1) {
            out[i] = remaining;
            break;
        }
        double p = profile.probabilities[static_cast<std::size_t>(i)];
        double conditional = mass_left > 0.0 ? std::clamp(p / mass_left, 0.0, 1.0) : 1.0;
        int n = sample_binomial(engine, remaining, conditional);
        out[i] = n;
        remaining -= n;
        mass_left -= p;
    }
    return out;
}

int sample_category(const AgeProfile& profile, double u) {
    const int bins = profile.max_life();
    double cumulative = 0.0;
    int last_positive = 0;
    for (int i = 0; i < bins; ++i) {
        double p = profile.probabilities[static_cast<std::size_t>(i)];
        if (p <= 0.0) continue;
        last_positive = i;
        cumulative += p;
        if (u < cumulative) return i;
    }
    // u beyond the accumulated mass through rounding: take the last supported bin
    return last_positive;
}

DayStreams::DayStreams(std::uint64_t rollout_key, int day)
    : day_key_(combine_key(rollout_key, static_cast<std::uint64_t>(day))),
      label_key_(combine_key(day_key_, static_cast<std::uint64_t>(Purpose::RequestLabel))),
      prediction_key_(combine_key(day_key_, static_cast<std::uint64_t>(Purpose::RequestPrediction))),
      emergency_key_(combine_key(day_key_, static_cast<std::uint64_t>(Purpose::EmergencyAge))) {}

StockVector DayStreams::arrivals(int order, const AgeProfile& profile) const {
    KeyedEngine engine(combine_key(day_key_, static_cast<std::uint64_t>(Purpose::ArrivalAges)));
    return sample_multinomial(engine, order, profile);
}

int DayStreams::demand(Half half, double mean) const {
    Purpose purpose = half == Half::Am ? Purpose::DemandAm : Purpose::DemandPm;
    KeyedEngine engine(combine_key(day_key_, static_cast<std::uint64_t>(purpose)));
    return sample_poisson(engine, mean);
}

int DayStreams::slippage(int life_index, int trials, double rate) const {
    KeyedEngine engine(
        combine_key(combine_key(day_key_, static_cast<std::uint64_t>(Purpose::Slippage)), static_cast<std::uint64_t>(life_index)));
    return sample_binomial(engine, trials, rate);
}

}  // namespace pir
