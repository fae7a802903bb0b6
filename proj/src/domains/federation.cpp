#include "netslice/domains/federation.hpp"

#include <cmath>

#include "netslice/util/errors.hpp"
#include "netslice/util/rng.hpp"

namespace netslice::domains {

SimDomain* Federation::find(const std::string& id) const {
    for (const auto& d : domains)
        if (d->id() == id) return d.get();
    return nullptr;
}

std::vector<marketplace::ResourceOffer> Federation::all_offers() const {
    std::vector<marketplace::ResourceOffer> out;
    for (const auto& d : domains)
        for (const auto& o : d->offers()) out.push_back(o);
    return out;
}

ml::SeriesWindow synth_energy_trace(std::uint64_t seed, std::size_t hours, double base,
                                    double daily_amplitude, double trend_per_day,
                                    double noise_amplitude) {
    if (hours < 1) throw usage_error("energy trace needs at least one hour");
    util::Rng rng(seed);
    ml::SeriesWindow out;
    out.values.reserve(hours);
    for (std::size_t t = 0; t < hours; ++t) {
        const double day_phase =
            2.0 * M_PI * static_cast<double>(t % 24) / 24.0;
        double v = base + daily_amplitude * std::sin(day_phase) +
                   trend_per_day * (static_cast<double>(t) / 24.0) +
                   rng.normal(0.0, noise_amplitude);
        out.values.push_back(std::max(v, 0.0));
    }
    return out;
}

namespace {

marketplace::ResourceOffer offer(std::string id, core::ResourceType type,
                                 std::string domain, double price, bool renewable,
                                 double pue, double x, double y, std::int64_t hops,
                                 std::int64_t capacity) {
    marketplace::ResourceOffer o;
    o.offer_id = std::move(id);
    o.resource_type = type;
    o.owner_domain = std::move(domain);
    o.price_per_hour = price;
    o.renewable = renewable;
    o.pue = pue;
    o.location = {x, y};
    o.hops_to_core = hops;
    o.capacity_total = capacity;
    o.capacity_available = capacity;
    return o;
}

} // namespace

Federation make_default_federation(const FederationConfig& config) {
    using RT = core::ResourceType;
    Federation fed;

    auto dseed = [&](std::string_view name) {
        return util::splitmix64(config.seed ^ util::fnv1a(name));
    };

    auto compute = std::make_unique<SimDomain>("dom-compute", 2, dseed("dom-compute"));
    compute->add_offer(offer("cmp-vm-a", RT::VM, "dom-compute", 4.0, true, 1.2, 10, 4, 2, 16));
    compute->add_offer(offer("cmp-vm-b", RT::VM, "dom-compute", 2.5, false, 1.7, 11, 6, 3, 24));
    compute->add_offer(offer("cmp-ct-a", RT::Container, "dom-compute", 1.5, true, 1.25, 10, 5, 2, 32));
    compute->add_offer(offer("cmp-bm-a", RT::BareMetal, "dom-compute", 9.0, false, 1.5, 12, 4, 4, 8));
    compute->set_metric_profile("latency_ms", {8.0, 1.5});
    compute->set_metric_profile("throughput_mbps", {150.0, 10.0});
    compute->set_metric_profile("cpu_load", {0.45, 0.05});
    compute->set_energy_trace(synth_energy_trace(dseed("trace-compute"),
                                                 config.trace_hours, 80.0, 25.0, 0.2, 2.0));

    auto iot = std::make_unique<SimDomain>("dom-iot", 2, dseed("dom-iot"));
    iot->add_offer(offer("iot-dev-a", RT::IoTDevice, "dom-iot", 0.5, true, 1.6, 2, 18, 6, 20));
    iot->add_offer(offer("iot-dev-b", RT::IoTDevice, "dom-iot", 0.25, false, 1.9, 3, 17, 7, 30));
    iot->add_offer(offer("iot-sw-a", RT::SDNSwitch, "dom-iot", 1.0, true, 1.4, 2, 16, 5, 12));
    iot->set_metric_profile("latency_ms", {14.0, 2.0});
    iot->set_metric_profile("throughput_mbps", {90.0, 8.0});
    iot->set_metric_profile("cpu_load", {0.35, 0.05});
    iot->set_energy_trace(synth_energy_trace(dseed("trace-iot"), config.trace_hours,
                                             55.0, 15.0, 0.1, 1.6));

    auto fiveg = std::make_unique<SimDomain>("dom-5g", 2, dseed("dom-5g"));
    fiveg->add_offer(offer("fg-fn-a", RT::FiveGFunction, "dom-5g", 6.0, true, 1.3, 20, 14, 3, 10));
    fiveg->add_offer(offer("fg-fn-b", RT::FiveGFunction, "dom-5g", 3.0, false, 1.8, 21, 15, 2, 14));
    fiveg->add_offer(offer("fg-ct-a", RT::Container, "dom-5g", 2.0, false, 1.45, 20, 13, 3, 20));
    fiveg->set_metric_profile("latency_ms", {10.0, 1.5});
    fiveg->set_metric_profile("throughput_mbps", {120.0, 10.0});
    fiveg->set_metric_profile("cpu_load", {0.5, 0.05});
    fiveg->set_energy_trace(synth_energy_trace(dseed("trace-5g"), config.trace_hours,
                                               30.0, 8.0, 0.05, 1.2));

    fed.domains.push_back(std::move(compute));
    fed.domains.push_back(std::move(iot));
    fed.domains.push_back(std::move(fiveg));
    return fed;
}

} // namespace netslice::domains
