#include "netslice/domains/sim_domain.hpp"

#include <algorithm>

#include "netslice/util/errors.hpp"
#include "netslice/util/rng.hpp"

namespace netslice::domains {

SimDomain::SimDomain(std::string id, int island_count, std::uint64_t seed)
    : id_(std::move(id)), island_count_(island_count), seed_(seed) {
    if (id_.empty()) throw usage_error("domain id must be non-empty");
    if (island_count_ < 1) throw usage_error("domain " + id_ + ": island count must be >= 1");
}

void SimDomain::add_offer(const marketplace::ResourceOffer& offer) {
    marketplace::validate_offer(offer);
    if (offer.owner_domain != id_)
        throw usage_error("domain " + id_ + ": offer " + offer.offer_id +
                          " owned by " + offer.owner_domain);
    offers_.push_back(offer);
}

void SimDomain::set_failure_policy(const FailurePolicy& policy) { policy_ = policy; }

void SimDomain::set_metric_profile(const std::string& metric, MetricProfile profile) {
    profiles_[metric] = profile;
}

void SimDomain::set_energy_trace(ml::SeriesWindow trace) {
    for (double v : trace.values)
        if (!(v >= 0.0))
            throw usage_error("domain " + id_ + ": energy trace values must be >= 0");
    energy_trace_ = std::move(trace);
}

DomainHandle SimDomain::allocate(const ResourceSpec& spec) {
    std::lock_guard lock(mu_);
    ++allocate_attempts_;
    const bool offered = std::any_of(offers_.begin(), offers_.end(), [&](const auto& o) {
        return o.resource_type == spec.type;
    });
    if (!offered)
        throw domain_error("domain " + id_ + ": resource type " +
                           std::string(core::resource_type_name(spec.type)) +
                           " not offered");
    if (policy_.kind == FailurePolicy::Kind::FailNth &&
        allocate_attempts_ == policy_.nth)
        throw domain_error("domain " + id_ + ": allocation failed (injected, attempt " +
                           std::to_string(allocate_attempts_) + ")");
    if (policy_.kind == FailurePolicy::Kind::FailResourceType && spec.type == policy_.type)
        throw domain_error("domain " + id_ + ": allocation failed (injected for type " +
                           std::string(core::resource_type_name(spec.type)) + ")");
    if (spec.amount < 1)
        throw usage_error("domain " + id_ + ": allocation amount must be >= 1");
    const DomainHandle handle = next_handle_++;
    ledger_[handle] = LedgerEntry{spec};
    return handle;
}

void SimDomain::deallocate(DomainHandle handle) {
    std::lock_guard lock(mu_);
    if (!ledger_.erase(handle))
        throw domain_error("domain " + id_ + ": unknown handle " + std::to_string(handle));
}

void SimDomain::restore_allocation(DomainHandle handle, const ResourceSpec& spec) {
    std::lock_guard lock(mu_);
    if (handle == 0) throw usage_error("domain " + id_ + ": handle 0 is not restorable");
    if (spec.amount < 1)
        throw usage_error("domain " + id_ + ": allocation amount must be >= 1");
    if (ledger_.count(handle))
        throw usage_error("domain " + id_ + ": handle " + std::to_string(handle) +
                          " already live");
    ledger_[handle] = LedgerEntry{spec};
    if (handle >= next_handle_) next_handle_ = handle + 1;
}

bool SimDomain::health() const { return true; }

MetricBatch SimDomain::poll(const std::string& slice_id, std::uint64_t now) {
    std::lock_guard lock(mu_);
    const bool known = std::any_of(ledger_.begin(), ledger_.end(), [&](const auto& kv) {
        return kv.second.spec.slice_id == slice_id;
    });
    if (!known)
        throw domain_error("domain " + id_ + ": no allocations for slice " + slice_id);

    MetricBatch batch;
    batch.slice_id = slice_id;
    auto it = last_poll_.find(slice_id);
    batch.timestamp = it == last_poll_.end() ? now : std::max(now, it->second + 1);
    last_poll_[slice_id] = batch.timestamp;
    for (const auto& [name, profile] : profiles_)
        batch.metrics[name] =
            profile.base + util::keyed_jitter(seed_, name, batch.timestamp, profile.jitter);
    return batch;
}

void SimDomain::inject_flows(const std::vector<ml::FlowFeatureVector>& flows,
                             const std::string& origin) {
    std::lock_guard lock(mu_);
    for (const auto& f : flows) ingress_.push_back(TaggedFlow{f, origin});
}

std::vector<TaggedFlow> SimDomain::drain_flows() {
    std::lock_guard lock(mu_);
    std::vector<TaggedFlow> out;
    out.swap(ingress_);
    return out;
}

std::size_t SimDomain::pending_flow_count() const {
    std::lock_guard lock(mu_);
    return ingress_.size();
}

ml::SeriesWindow SimDomain::energy_window(std::uint64_t start, std::size_t length) const {
    const auto& trace = energy_trace_;
    if (length < 1)
        throw usage_error("domain " + id_ + ": energy window length must be >= 1");
    if (start < trace.start_index ||
        start - trace.start_index + length > trace.values.size())
        throw usage_error("domain " + id_ + ": energy window out of trace bounds");
    ml::SeriesWindow out;
    out.start_index = start;
    out.sampling_interval_hours = trace.sampling_interval_hours;
    const std::size_t offset = static_cast<std::size_t>(start - trace.start_index);
    out.values.assign(trace.values.begin() + static_cast<std::ptrdiff_t>(offset),
                      trace.values.begin() + static_cast<std::ptrdiff_t>(offset + length));
    return out;
}

std::size_t SimDomain::outstanding_allocations() const {
    std::lock_guard lock(mu_);
    return ledger_.size();
}

std::int64_t SimDomain::allocated_units(const std::string& slice_id) const {
    std::lock_guard lock(mu_);
    std::int64_t total = 0;
    for (const auto& [h, entry] : ledger_)
        if (entry.spec.slice_id == slice_id) total += entry.spec.amount;
    return total;
}

} // namespace netslice::domains
