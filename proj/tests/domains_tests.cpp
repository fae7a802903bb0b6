#include "doctest.h"

#include <cmath>
#include <map>

#include "helpers.hpp"
#include "netslice/domains/federation.hpp"
#include "netslice/domains/sim_domain.hpp"
#include "netslice/util/errors.hpp"
#include "netslice/util/rng.hpp"

using namespace netslice;
using domains::DomainHandle;
using domains::ResourceSpec;
using domains::SimDomain;

namespace {

marketplace::ResourceOffer vm_offer(const std::string& domain) {
    marketplace::ResourceOffer o;
    o.offer_id = domain + "-vm";
    o.resource_type = core::ResourceType::VM;
    o.owner_domain = domain;
    o.price_per_hour = 1.0;
    o.pue = 1.5;
    o.location = {0, 0};
    o.capacity_total = 1000;
    o.capacity_available = 1000;
    return o;
}

ResourceSpec spec_for(const std::string& slice, std::int64_t amount) {
    ResourceSpec s;
    s.slice_id = slice;
    s.type = core::ResourceType::VM;
    s.amount = amount;
    s.offer_id = "o";
    return s;
}

} // namespace

TEST_CASE("allocation ledger matches a map oracle under random traffic") {
    SimDomain dom("d1", 1, 7);
    dom.add_offer(vm_offer("d1"));

    std::map<DomainHandle, std::pair<std::string, std::int64_t>> oracle;
    std::vector<DomainHandle> live;
    util::Rng rng(19);
    for (int step = 0; step < 5000; ++step) {
        if (live.empty() || rng.below(3) != 0) {
            const std::string slice = "slice-" + std::to_string(rng.below(6));
            const auto amount = static_cast<std::int64_t>(1 + rng.below(5));
            const auto h = dom.allocate(spec_for(slice, amount));
            CHECK(oracle.count(h) == 0);
            oracle[h] = {slice, amount};
            live.push_back(h);
        } else {
            const auto idx = rng.below(live.size());
            const auto h = live[idx];
            dom.deallocate(h);
            oracle.erase(h);
            live[idx] = live.back();
            live.pop_back();
        }
        if (step % 512 == 0) {
            CHECK(dom.outstanding_allocations() == oracle.size());
            std::map<std::string, std::int64_t> units;
            for (const auto& [h, e] : oracle) units[e.first] += e.second;
            for (int s = 0; s < 6; ++s) {
                const std::string slice = "slice-" + std::to_string(s);
                const auto it = units.find(slice);
                CHECK(dom.allocated_units(slice) == (it == units.end() ? 0 : it->second));
            }
        }
    }
    CHECK(dom.outstanding_allocations() == oracle.size());

    CHECK_THROWS_AS(dom.deallocate(999999), Error);
    try {
        dom.deallocate(999999);
        FAIL("expected domain error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DomainFailure);
    }
}

TEST_CASE("allocate validates type, amount and offer coverage") {
    SimDomain dom("d1", 1, 7);
    dom.add_offer(vm_offer("d1"));
    auto bad = spec_for("s", 1);
    bad.type = core::ResourceType::IoTDevice;
    CHECK_THROWS_AS(dom.allocate(bad), Error);
    CHECK_THROWS_AS(dom.allocate(spec_for("s", 0)), Error);

    SimDomain empty("d2", 1, 7);
    CHECK_THROWS_AS(empty.allocate(spec_for("s", 1)), Error);

    CHECK_THROWS_AS(SimDomain("", 1, 7), Error);
    CHECK_THROWS_AS(SimDomain("d", 0, 7), Error);
}

TEST_CASE("fail-nth policy fails exactly the nth attempt") {
    SimDomain dom("d1", 1, 7);
    dom.add_offer(vm_offer("d1"));
    dom.set_failure_policy(domains::FailurePolicy::fail_nth(3));
    const auto h1 = dom.allocate(spec_for("s", 1));
    const auto h2 = dom.allocate(spec_for("s", 1));
    CHECK_THROWS_AS(dom.allocate(spec_for("s", 1)), Error);
    const auto h4 = dom.allocate(spec_for("s", 1));
    CHECK(h1 != h2);
    CHECK(h2 != h4);
    CHECK(dom.outstanding_allocations() == 3);
}

TEST_CASE("fail-resource-type policy is selective") {
    SimDomain dom("d1", 1, 7);
    dom.add_offer(vm_offer("d1"));
    auto container = vm_offer("d1");
    container.offer_id = "d1-ct";
    container.resource_type = core::ResourceType::Container;
    dom.add_offer(container);
    dom.set_failure_policy(
        domains::FailurePolicy::fail_resource_type(core::ResourceType::Container));
    CHECK(dom.allocate(spec_for("s", 1)) != 0);
    auto ct = spec_for("s", 1);
    ct.type = core::ResourceType::Container;
    CHECK_THROWS_AS(dom.allocate(ct), Error);
    dom.set_failure_policy(domains::FailurePolicy::never());
    CHECK(dom.allocate(ct) != 0);
}

TEST_CASE("restore_allocation reinstates ledger entries without counting as attempts") {
    SimDomain dom("d1", 1, 7);
    dom.add_offer(vm_offer("d1"));
    dom.set_failure_policy(domains::FailurePolicy::fail_nth(1));

    CHECK_THROWS_AS(dom.restore_allocation(0, spec_for("s", 1)), Error);
    CHECK_THROWS_AS(dom.restore_allocation(5, spec_for("s", 0)), Error);
    dom.restore_allocation(5, spec_for("s", 2));
    CHECK_THROWS_AS(dom.restore_allocation(5, spec_for("s", 2)), Error);
    CHECK(dom.outstanding_allocations() == 1);
    CHECK(dom.allocated_units("s") == 2);

    // The restore above must not have consumed the injected first-attempt failure.
    CHECK_THROWS_AS(dom.allocate(spec_for("s", 1)), Error);
    // Fresh handles start past the restored one.
    const auto h = dom.allocate(spec_for("s", 1));
    CHECK(h > 5);
    dom.deallocate(5);
    dom.deallocate(h);
    CHECK(dom.outstanding_allocations() == 0);
}

TEST_CASE("poll timestamps are strictly increasing per slice") {
    SimDomain dom("d1", 1, 7);
    dom.add_offer(vm_offer("d1"));
    dom.set_metric_profile("latency_ms", {8.0, 1.5});
    CHECK_THROWS_AS(dom.poll("ghost", 10), Error);
    dom.allocate(spec_for("a", 1));
    dom.allocate(spec_for("b", 1));

    auto m1 = dom.poll("a", 10);
    CHECK(m1.slice_id == "a");
    CHECK(m1.timestamp == 10);
    // Stalled clock still moves the slice's stream forward.
    CHECK(dom.poll("a", 10).timestamp == 11);
    CHECK(dom.poll("a", 10).timestamp == 12);
    CHECK(dom.poll("a", 50).timestamp == 50);
    // Streams are independent per slice.
    CHECK(dom.poll("b", 10).timestamp == 10);
}

TEST_CASE("poll metrics are seeded jitter around the profile base") {
    SimDomain dom("d1", 1, 99);
    dom.add_offer(vm_offer("d1"));
    dom.set_metric_profile("latency_ms", {8.0, 1.5});
    dom.set_metric_profile("cpu_load", {0.45, 0.05});
    dom.allocate(spec_for("a", 1));

    double sum = 0.0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const auto batch = dom.poll("a", 0);
        REQUIRE(batch.metrics.size() == 2);
        const double v = batch.metrics.at("latency_ms");
        CHECK(v >= 8.0 - 1.5);
        CHECK(v <= 8.0 + 1.5);
        CHECK(batch.metrics.at("cpu_load") >= 0.40);
        CHECK(batch.metrics.at("cpu_load") <= 0.50);
        sum += v;
    }
    CHECK(std::fabs(sum / n - 8.0) < 0.08);

    // Same seed, same timestamps, same values.
    SimDomain twin("d1", 1, 99);
    twin.add_offer(vm_offer("d1"));
    twin.set_metric_profile("latency_ms", {8.0, 1.5});
    twin.allocate(spec_for("a", 1));
    auto a = dom.poll("a", 20000);
    auto b = twin.poll("a", 20000);
    CHECK(a.metrics.at("latency_ms") == b.metrics.at("latency_ms"));
}

TEST_CASE("flow queue drains in arrival order") {
    SimDomain dom("d1", 1, 7);
    ml::FlowFeatureVector f1, f2, f3;
    f1.features[0] = 1;
    f2.features[0] = 2;
    f3.features[0] = 3;
    dom.inject_flows({f1, f2}, "bot-a");
    dom.inject_flows({f3}, "bot-b");
    CHECK(dom.pending_flow_count() == 3);
    const auto drained = dom.drain_flows();
    REQUIRE(drained.size() == 3);
    CHECK(drained[0].flow == f1);
    CHECK(drained[0].origin == "bot-a");
    CHECK(drained[1].flow == f2);
    CHECK(drained[2].origin == "bot-b");
    CHECK(dom.pending_flow_count() == 0);
    CHECK(dom.drain_flows().empty());
}

TEST_CASE("energy window slices the trace at absolute indices") {
    SimDomain dom("d1", 1, 7);
    ml::SeriesWindow trace;
    trace.start_index = 100;
    trace.values = {1, 2, 3, 4, 5};
    dom.set_energy_trace(trace);

    const auto w = dom.energy_window(101, 3);
    CHECK(w.start_index == 101);
    CHECK(w.values == std::vector<double>{2, 3, 4});
    CHECK(dom.energy_window(100, 5).values == trace.values);
    CHECK_THROWS_AS(dom.energy_window(100, 0), Error);
    CHECK_THROWS_AS(dom.energy_window(99, 2), Error);
    CHECK_THROWS_AS(dom.energy_window(104, 2), Error);

    ml::SeriesWindow negative;
    negative.values = {1.0, -0.5};
    CHECK_THROWS_AS(dom.set_energy_trace(negative), Error);
}

TEST_CASE("synthetic energy traces are seeded and non-negative") {
    const auto a = domains::synth_energy_trace(5, 200, 50, 20, 0.3, 2.0);
    const auto b = domains::synth_energy_trace(5, 200, 50, 20, 0.3, 2.0);
    CHECK(a == b);
    CHECK(a.values.size() == 200);
    for (double v : a.values) CHECK(v >= 0.0);
    const auto c = domains::synth_energy_trace(6, 200, 50, 20, 0.3, 2.0);
    CHECK(a.values != c.values);
    // A deep negative base still floors at zero.
    const auto floored = domains::synth_energy_trace(5, 48, -100, 1, 0, 0.5);
    for (double v : floored.values) CHECK(v == 0.0);
    CHECK_THROWS_AS(domains::synth_energy_trace(5, 0, 1, 1, 0, 0), Error);
}

TEST_CASE("default federation wires three domains with offers and traces") {
    const auto fed = domains::make_default_federation({});
    REQUIRE(fed.domains.size() == 3);
    const auto* compute = fed.find("dom-compute");
    const auto* iot = fed.find("dom-iot");
    const auto* fiveg = fed.find("dom-5g");
    REQUIRE(compute != nullptr);
    REQUIRE(iot != nullptr);
    REQUIRE(fiveg != nullptr);
    CHECK(fed.find("dom-nope") == nullptr);

    CHECK(compute->island_count() == 2);
    CHECK(iot->island_count() == 2);
    CHECK(fiveg->island_count() == 2);
    CHECK(compute->offers().size() == 4);
    CHECK(iot->offers().size() == 3);
    CHECK(fiveg->offers().size() == 3);
    CHECK(fed.all_offers().size() == 10);
    for (const auto& o : fed.all_offers()) {
        CHECK(o.capacity_available == o.capacity_total);
        CHECK_NOTHROW(marketplace::validate_offer(o));
    }
    CHECK(compute->energy_trace().values.size() == 960);
    CHECK(iot->energy_trace().values.size() == 960);
    CHECK(fiveg->energy_trace().values.size() == 960);

    // One knob, whole-federation determinism.
    const auto again = domains::make_default_federation({});
    CHECK(compute->energy_trace() == again.find("dom-compute")->energy_trace());
    domains::FederationConfig other;
    other.seed = 43;
    const auto reseeded = domains::make_default_federation(other);
    CHECK(compute->energy_trace() != reseeded.find("dom-compute")->energy_trace());
}
