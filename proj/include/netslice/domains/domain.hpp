#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "netslice/core/types.hpp"

namespace netslice::domains {

using DomainHandle = std::uint64_t;

struct ResourceSpec {
    std::string slice_id;
    core::ResourceType type = core::ResourceType::VM;
    std::int64_t amount = 1;   // capacity units
    std::string offer_id;
};

struct MetricBatch {
    std::string slice_id;
    std::map<std::string, double> metrics;
    std::uint64_t timestamp = 0;
};

// Per-domain allocation contract. Simulated domains and any future real
// adapter implement the same interface; the orchestrator never sees past it.
class DomainControl {
  public:
    virtual ~DomainControl() = default;
    virtual DomainHandle allocate(const ResourceSpec& spec) = 0;
    virtual void deallocate(DomainHandle handle) = 0;
    virtual bool health() const = 0;
};

// Per-domain monitoring contract. `now` is the caller's logical clock;
// batches for one slice carry strictly increasing timestamps.
class DomainMonitor {
  public:
    virtual ~DomainMonitor() = default;
    virtual MetricBatch poll(const std::string& slice_id, std::uint64_t now) = 0;
};

} // namespace netslice::domains
