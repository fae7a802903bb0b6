#include "netslice/core/types.hpp"

#include <cmath>

#include "netslice/util/errors.hpp"

namespace netslice::core {

std::string_view phase_name(LifecyclePhase p) {
    switch (p) {
        case LifecyclePhase::Preparation: return "Preparation";
        case LifecyclePhase::Commissioning: return "Commissioning";
        case LifecyclePhase::Operation: return "Operation";
        case LifecyclePhase::Decommissioning: return "Decommissioning";
        case LifecyclePhase::Terminated: return "Terminated";
    }
    return "?";
}

std::string_view event_name(LifecycleEvent e) {
    switch (e) {
        case LifecycleEvent::BuildSucceeded: return "BuildSucceeded";
        case LifecycleEvent::InstantiateSucceeded: return "InstantiateSucceeded";
        case LifecycleEvent::DecommissionRequested: return "DecommissionRequested";
        case LifecycleEvent::TeardownComplete: return "TeardownComplete";
        case LifecycleEvent::BuildFailed: return "BuildFailed";
        case LifecycleEvent::InstantiateFailed: return "InstantiateFailed";
    }
    return "?";
}

LifecyclePhase parse_phase(std::string_view s) {
    for (LifecyclePhase p : kAllPhases)
        if (phase_name(p) == s) return p;
    throw usage_error("unknown lifecycle phase: " + std::string(s));
}

LifecycleEvent parse_event(std::string_view s) {
    for (LifecycleEvent e : kAllEvents)
        if (event_name(e) == s) return e;
    throw usage_error("unknown lifecycle event: " + std::string(s));
}

std::string_view resource_type_name(ResourceType t) {
    switch (t) {
        case ResourceType::VM: return "VM";
        case ResourceType::Container: return "Container";
        case ResourceType::BareMetal: return "BareMetal";
        case ResourceType::SDNSwitch: return "SDNSwitch";
        case ResourceType::IoTDevice: return "IoTDevice";
        case ResourceType::FiveGFunction: return "FiveGFunction";
    }
    return "?";
}

ResourceType parse_resource_type(std::string_view s) {
    for (ResourceType t : kAllResourceTypes)
        if (resource_type_name(t) == s) return t;
    throw usage_error("unknown resource type: " + std::string(s));
}

double euclidean(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

void validate_intent(const IntentDescriptor& intent) {
    if (intent.tenant_id.empty()) throw usage_error("intent: tenant must be non-empty");
    if (intent.demands.empty()) throw usage_error("intent: at least one demand required");
    for (std::size_t i = 0; i < intent.demands.size(); ++i) {
        const auto& d = intent.demands[i];
        if (d.quantity < 1)
            throw usage_error("intent: demand " + std::to_string(i) + " quantity must be >= 1");
        if (d.unit_capacity < 1)
            throw usage_error("intent: demand " + std::to_string(i) + " unit capacity must be >= 1");
    }
    for (const auto& [name, kpp] : intent.kpp_targets) {
        if (!std::isfinite(kpp.threshold))
            throw usage_error("intent: kpp " + name + " threshold must be finite");
        if (kpp.elastic_demand && *kpp.elastic_demand >= intent.demands.size())
            throw usage_error("intent: kpp " + name + " elastic demand index out of range");
    }
    if (intent.sustainability.max_pue && *intent.sustainability.max_pue < 1.0)
        throw usage_error("intent: max-pue must be >= 1.0");
    if (intent.max_price_per_hour && *intent.max_price_per_hour < 0.0)
        throw usage_error("intent: max-price-per-hour must be >= 0");
    if (intent.weight_overrides) {
        const auto& w = *intent.weight_overrides;
        if (w.w_pue < 0 || w.w_renewable < 0 || w.w_comm < 0 || w.w_price < 0)
            throw usage_error("intent: scoring weights must be >= 0");
        if (w.w_pue == 0 && w.w_renewable == 0 && w.w_comm == 0 && w.w_price == 0)
            throw usage_error("intent: at least one scoring weight must be > 0");
    }
}

} // namespace netslice::core
