#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace netslice::core {

enum class LifecyclePhase {
    Preparation,
    Commissioning,
    Operation,
    Decommissioning,
    Terminated,
};

enum class LifecycleEvent {
    BuildSucceeded,
    InstantiateSucceeded,
    DecommissionRequested,
    TeardownComplete,
    BuildFailed,
    InstantiateFailed,
};

std::string_view phase_name(LifecyclePhase p);
std::string_view event_name(LifecycleEvent e);
LifecyclePhase parse_phase(std::string_view s);
LifecycleEvent parse_event(std::string_view s);

inline constexpr LifecyclePhase kAllPhases[] = {
    LifecyclePhase::Preparation,    LifecyclePhase::Commissioning,
    LifecyclePhase::Operation,      LifecyclePhase::Decommissioning,
    LifecyclePhase::Terminated,
};
inline constexpr LifecycleEvent kAllEvents[] = {
    LifecycleEvent::BuildSucceeded,    LifecycleEvent::InstantiateSucceeded,
    LifecycleEvent::DecommissionRequested, LifecycleEvent::TeardownComplete,
    LifecycleEvent::BuildFailed,       LifecycleEvent::InstantiateFailed,
};

enum class ResourceType {
    VM,
    Container,
    BareMetal,
    SDNSwitch,
    IoTDevice,
    FiveGFunction,
};

std::string_view resource_type_name(ResourceType t);
ResourceType parse_resource_type(std::string_view s);

inline constexpr ResourceType kAllResourceTypes[] = {
    ResourceType::VM,        ResourceType::Container, ResourceType::BareMetal,
    ResourceType::SDNSwitch, ResourceType::IoTDevice, ResourceType::FiveGFunction,
};

struct Point {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Point&) const = default;
};

double euclidean(const Point& a, const Point& b);

enum class KppComparator { LessEq, GreaterEq };

// One tenant-declared performance target. elastic_demand, when set, names the
// demand index that may be scaled up instead of merely alerting on violation.
struct KppTarget {
    KppComparator comparator = KppComparator::LessEq;
    double threshold = 0.0;
    std::optional<std::size_t> elastic_demand;
    bool operator==(const KppTarget&) const = default;
};

// unit_capacity is the capacity units one instance consumes from its offer.
struct ResourceDemand {
    ResourceType type = ResourceType::VM;
    std::int64_t quantity = 1;
    std::int64_t unit_capacity = 1;
    bool operator==(const ResourceDemand&) const = default;
};

struct SustainabilityConstraints {
    bool require_renewable = false;
    std::optional<double> max_pue;
    bool operator==(const SustainabilityConstraints&) const = default;
};

struct ScoringWeights {
    double w_pue = 1.0;
    double w_renewable = 1.0;
    double w_comm = 1.0;
    double w_price = 1.0;
    bool operator==(const ScoringWeights&) const = default;
};

struct IntentDescriptor {
    std::string tenant_id;
    Point tenant_location;
    std::vector<ResourceDemand> demands;
    std::map<std::string, KppTarget> kpp_targets;
    SustainabilityConstraints sustainability;
    std::optional<ScoringWeights> weight_overrides;
    std::optional<double> max_price_per_hour;   // whole-plan hourly budget
    bool operator==(const IntentDescriptor&) const = default;
};

// Throws usage_error naming the violated field.
void validate_intent(const IntentDescriptor& intent);

struct PlanAssignment {
    std::size_t demand_index = 0;
    std::string offer_id;
    std::int64_t amount = 0;   // instances of the demand, not capacity units
    bool operator==(const PlanAssignment&) const = default;
};

struct AllocationPlan {
    std::vector<PlanAssignment> assignments;
    double total_score = 0.0;
    double total_price_per_hour = 0.0;
    double renewable_fraction = 0.0;   // renewable instances / total instances
    bool operator==(const AllocationPlan&) const = default;
};

struct DomainAllocation {
    std::string domain_id;
    std::string offer_id;
    std::size_t demand_index = 0;
    std::int64_t amount = 0;
    std::string reservation_id;
    std::uint64_t domain_handle = 0;
    bool operator==(const DomainAllocation&) const = default;
};

struct SliceRecord {
    std::string slice_id;
    LifecyclePhase phase = LifecyclePhase::Preparation;
    IntentDescriptor intent;
    std::optional<AllocationPlan> blueprint;
    std::vector<DomainAllocation> allocations;
    std::map<std::string, double> kpi_snapshot;
    std::uint64_t created_at = 0;
    std::uint64_t phase_entered_at = 0;
    bool operator==(const SliceRecord&) const = default;
};

struct MetricVerdict {
    bool conformant = true;
    double observed = 0.0;
    double threshold = 0.0;
    bool operator==(const MetricVerdict&) const = default;
};

struct ConformanceReport {
    std::map<std::string, MetricVerdict> per_metric;
    bool overall = true;
    bool operator==(const ConformanceReport&) const = default;
};

} // namespace netslice::core
