#pragma once

#include <memory>
#include <vector>

#include "netslice/domains/sim_domain.hpp"

namespace netslice::domains {

struct FederationConfig {
    std::uint64_t seed = 42;
    std::size_t trace_hours = 960;   // 40 days of hourly samples
};

struct Federation {
    std::vector<std::unique_ptr<SimDomain>> domains;

    SimDomain* find(const std::string& id) const;
    std::vector<marketplace::ResourceOffer> all_offers() const;
};

// base + daily sinusoid + slow linear trend + seeded Gaussian noise,
// floored at zero.
ml::SeriesWindow synth_energy_trace(std::uint64_t seed, std::size_t hours, double base,
                                    double daily_amplitude, double trend_per_day,
                                    double noise_amplitude);

// Three domains, two islands each: compute-heavy, IoT-edge, 5G-function.
// Offers, metric profiles and energy traces are fixed apart from the seed,
// small enough that exhaustive planning oracles stay tractable.
Federation make_default_federation(const FederationConfig& config = {});

} // namespace netslice::domains
