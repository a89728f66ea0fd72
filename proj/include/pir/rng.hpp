#pragma once

// Counter-based random substreams.
//
// Every random quantity in a rollout is addressed by a key
// (master seed, rollout index, day, purpose, within-day index). The draw for a
// key does not depend on how many other draws were made, so two policies run
// under the same master seed see identical demand, labels and prediction
// uniforms for the same request, whatever they do with their stock.

#include <algorithm>
#include <cstdint>
#include <limits>

#include "pir/core.hpp"

namespace pir {

enum class Purpose : std::uint64_t {
    ArrivalAges = 1,
    DemandAm = 2,
    DemandPm = 3,
    RequestLabel = 4,
    RequestPrediction = 5,
    EmergencyAge = 6,
    Slippage = 7,
};

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t combine_key(std::uint64_t key, std::uint64_t value) {
    return mix64(key ^ mix64(value + 0x9e3779b97f4a7c15ULL));
}

/// Maps 64 random bits to the open interval (0, 1).
constexpr double to_open_unit(std::uint64_t bits) {
    // the top value would round up to 1.0
    return std::min((static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53, 0x1.fffffffffffffp-1);
}

/// A UniformRandomBitGenerator producing the splitmix64 sequence for a fixed key.
class KeyedEngine {
public:
    using result_type = std::uint64_t;

    explicit constexpr KeyedEngine(std::uint64_t key) : key_(key) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() {
        counter_ += 0x9e3779b97f4a7c15ULL;
        return mix64(key_ + counter_);
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Poisson(mean) draw.
int sample_poisson(KeyedEngine& engine, double mean);

/// Binomial(trials, p) draw.
int sample_binomial(KeyedEngine& engine, int trials, double p);

/// Multinomial(trials, profile) by sequential conditional binomials.
StockVector sample_multinomial(KeyedEngine& engine, int trials, const AgeProfile& profile);

/// Index i with probability profile[i], chosen by inverse CDF at u in (0, 1).
int sample_category(const AgeProfile& profile, double u);

/// Draws for one day of one rollout.
class DayStreams {
public:
    DayStreams(std::uint64_t rollout_key, int day);

    StockVector arrivals(int order, const AgeProfile& profile) const;
    int demand(Half half, double mean) const;
    double label_uniform(Half half, int request) const { return uniform(label_key_, half, request, 0); }
    double prediction_uniform(Half half, int request) const { return uniform(prediction_key_, half, request, 0); }
    double emergency_uniform(Half half, int request, int unit = 0) const {
        return uniform(emergency_key_, half, request, unit);
    }
    int slippage(int life_index, int trials, double rate) const;

private:
    static double uniform(std::uint64_t key, Half half, int request, int unit) {
        std::uint64_t index = (static_cast<std::uint64_t>(half) << 62) ^
                              (static_cast<std::uint64_t>(static_cast<std::uint32_t>(request)) << 16) ^
                              static_cast<std::uint64_t>(static_cast<std::uint16_t>(unit));
        return to_open_unit(combine_key(key, index));
    }

    std::uint64_t day_key_;
    std::uint64_t label_key_;
    std::uint64_t prediction_key_;
    std::uint64_t emergency_key_;
};

/// Substream family for one rollout of a master seed.
class RngStreams {
public:
    RngStreams(std::uint64_t master_seed, std::uint64_t rollout_index)
        : key_(combine_key(mix64(master_seed), rollout_index)) {}

    DayStreams day(int day) const { return DayStreams(key_, day); }

private:
    std::uint64_t key_;
};

}  // namespace pir
