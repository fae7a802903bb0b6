#include "netslice/security/gate.hpp"

namespace netslice::security {

SecurityGate::SecurityGate(AuditLog& audit, util::LogicalClock& clock, GateConfig config)
    : audit_(audit), clock_(clock), config_(config) {}

void SecurityGate::set_audit_phase(const std::string& phase_label) {
    std::lock_guard lock(mu_);
    phase_label_ = phase_label;
}

std::string SecurityGate::phase() const {
    std::lock_guard lock(mu_);
    return phase_label_;
}

void SecurityGate::register_element(const std::string& name) {
    std::lock_guard lock(mu_);
    elements_.insert(name);
}

bool SecurityGate::is_element(const std::string& name) const {
    std::lock_guard lock(mu_);
    return elements_.count(name) != 0;
}

void SecurityGate::attach_agent(const std::string& block,
                                std::shared_ptr<ml::MlAgent> agent) {
    std::lock_guard lock(mu_);
    agents_[block] = std::move(agent);
}

std::shared_ptr<ml::MlAgent> SecurityGate::agent(const std::string& block) const {
    std::lock_guard lock(mu_);
    auto it = agents_.find(block);
    return it == agents_.end() ? nullptr : it->second;
}

IngressDecision SecurityGate::filter_ingress(const ml::FlowFeatureVector&,
                                             const std::string& origin) {
    if (is_element(origin)) return IngressDecision::Allow;
    audit_.append(clock_.tick(), "TrafficInjection", phase(), origin,
                  "ingress denied: origin is not an architecture element");
    return IngressDecision::DenyExternal;
}

bool SecurityGate::admit_request(const std::string& origin, std::uint64_t tick) {
    std::int64_t count;
    {
        std::lock_guard lock(mu_);
        auto& slot = rate_[origin];
        if (slot.first != tick) slot = {tick, 0};
        count = ++slot.second;
    }
    if (count <= config_.rate_limit_per_tick) return true;
    audit_.append(clock_.tick(), "DoS", phase(), origin,
                  "rate limit exceeded: " + std::to_string(count) + " requests in tick " +
                      std::to_string(tick));
    return false;
}

GateDecision SecurityGate::ddos_gate(const std::string& block,
                                     const ml::FlowFeatureVector& flow,
                                     const std::string& origin) {
    auto a = agent(block);
    if (a) {
        try {
            const auto prediction = a->predict(ml::AgentPayload{flow});
            const auto cls = std::get<ml::TrafficClass>(prediction);
            if (cls == ml::TrafficClass::Benign) return GateDecision::Pass;
            audit_.append(clock_.tick(), "DoS", phase(), origin,
                          "flow dropped: classified " +
                              std::string(ml::traffic_class_name(cls)));
            return GateDecision::Drop;
        } catch (const ml::ModelUnavailable&) {
            // removed between the lookup and the call; fall through to policy
        }
    }
    if (config_.fail_open) {
        audit_.append(clock_.tick(), "DoS", phase(), origin,
                      "classifier unavailable on block " + block + ": fail-open pass");
        return GateDecision::Pass;
    }
    audit_.append(clock_.tick(), "DoS", phase(), origin,
                  "classifier unavailable on block " + block + ": fail-closed drop");
    return GateDecision::Drop;
}

} // namespace netslice::security
