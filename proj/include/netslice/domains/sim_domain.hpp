#pragma once

#include <mutex>
#include <vector>

#include "netslice/domains/domain.hpp"
#include "netslice/marketplace/marketplace.hpp"
#include "netslice/ml/flow.hpp"
#include "netslice/ml/series.hpp"

namespace netslice::domains {

struct FailurePolicy {
    enum class Kind { Never, FailNth, FailResourceType };
    Kind kind = Kind::Never;
    std::int64_t nth = 0;   // 1-based allocate attempt that fails
    core::ResourceType type = core::ResourceType::VM;

    static FailurePolicy never() { return {}; }
    static FailurePolicy fail_nth(std::int64_t n) {
        return {Kind::FailNth, n, core::ResourceType::VM};
    }
    static FailurePolicy fail_resource_type(core::ResourceType t) {
        return {Kind::FailResourceType, 0, t};
    }
};

struct MetricProfile {
    double base = 0.0;
    double jitter = 0.0;   // uniform amplitude around base
};

struct TaggedFlow {
    ml::FlowFeatureVector flow;
    std::string origin;
    bool operator==(const TaggedFlow&) const = default;
};

// One simulated experimental-network domain. All state sits behind one mutex
// (serialized actor); every random value is a pure function of the domain
// seed, so equal seeds give bit-identical behavior.
class SimDomain : public DomainControl, public DomainMonitor {
  public:
    SimDomain(std::string id, int island_count, std::uint64_t seed);

    const std::string& id() const { return id_; }
    int island_count() const { return island_count_; }
    std::uint64_t seed() const { return seed_; }

    void add_offer(const marketplace::ResourceOffer& offer);
    const std::vector<marketplace::ResourceOffer>& offers() const { return offers_; }

    void set_failure_policy(const FailurePolicy& policy);
    void set_metric_profile(const std::string& metric, MetricProfile profile);
    void set_energy_trace(ml::SeriesWindow trace);

    DomainHandle allocate(const ResourceSpec& spec) override;
    void deallocate(DomainHandle handle) override;
    bool health() const override;

    // Reinstates a ledger entry recorded before a restart. Bypasses failure
    // injection and does not count as an allocate attempt.
    void restore_allocation(DomainHandle handle, const ResourceSpec& spec);

    MetricBatch poll(const std::string& slice_id, std::uint64_t now) override;

    void inject_flows(const std::vector<ml::FlowFeatureVector>& flows,
                      const std::string& origin);
    std::vector<TaggedFlow> drain_flows();
    std::size_t pending_flow_count() const;

    // start is an absolute index in trace coordinates; length >= 1.
    ml::SeriesWindow energy_window(std::uint64_t start, std::size_t length) const;
    const ml::SeriesWindow& energy_trace() const { return energy_trace_; }

    std::size_t outstanding_allocations() const;
    std::int64_t allocated_units(const std::string& slice_id) const;

  private:
    struct LedgerEntry {
        ResourceSpec spec;
    };

    std::string id_;
    int island_count_;
    std::uint64_t seed_;
    std::vector<marketplace::ResourceOffer> offers_;
    FailurePolicy policy_;
    std::map<std::string, MetricProfile> profiles_;
    ml::SeriesWindow energy_trace_;

    mutable std::mutex mu_;
    std::map<DomainHandle, LedgerEntry> ledger_;
    std::vector<TaggedFlow> ingress_;
    std::map<std::string, std::uint64_t> last_poll_;
    std::uint64_t next_handle_ = 1;
    std::int64_t allocate_attempts_ = 0;
};

} // namespace netslice::domains
