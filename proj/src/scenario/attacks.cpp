#include "netslice/scenario/attacks.hpp"

#include "netslice/util/errors.hpp"

namespace netslice::scenario {

namespace {

core::IntentDescriptor probe_intent() {
    core::IntentDescriptor intent;
    intent.tenant_id = "attack-probe";
    intent.demands = {{core::ResourceType::VM, 1, 1}};
    return intent;
}

// Each recipe provokes exactly one incident of its category. Expected errors
// are swallowed here; the audit trail is the observable outcome.
void inject(runtime::Runtime& rt, security::AttackCategory category) {
    using security::AttackCategory;
    switch (category) {
    case AttackCategory::Impersonation:
        try {
            rt.iam.authenticate("mallory", "guessed-secret");
        } catch (const Error&) {}
        break;
    case AttackCategory::TrafficInjection: {
        ml::FlowFeatureVector flow;
        rt.gate.filter_ingress(flow, "external-bot");
        break;
    }
    case AttackCategory::DoS: {
        const std::uint64_t tick = rt.clock.tick();
        for (std::int64_t i = 0; i <= rt.config.rate_limit; ++i)
            rt.gate.admit_request("external-bot", tick);
        break;
    }
    case AttackCategory::Tampering: {
        const auto token =
            rt.issue_token_for("operator", "operator-secret", "monitor", "dom-mon.metrics");
        try {
            rt.iam.validate_token(token, "monitor", "dom-mon.secrets");
        } catch (const Error&) {}
        break;
    }
    case AttackCategory::Eavesdropping:
        try {
            rt.iam.require_channel("supervisor", "dom-compute");
        } catch (const Error&) {}
        break;
    case AttackCategory::ReplayAttack: {
        const auto token =
            rt.issue_token_for("operator", "operator-secret", "monitor", "dom-mon.metrics");
        rt.iam.validate_token(token, "monitor", "dom-mon.metrics");
        try {
            rt.iam.validate_token(token, "monitor", "dom-mon.metrics");
        } catch (const Error&) {}
        break;
    }
    case AttackCategory::InterfaceMonitoring:
        try {
            rt.iam.authorize_interface_access("alice", "dom-mon.metrics");
        } catch (const Error&) {}
        break;
    }
}

} // namespace

AttackOutcome simulate_attack(runtime::Runtime& rt, security::AttackCategory category,
                              core::LifecyclePhase phase) {
    if (!security::attack_applicable(category, phase))
        throw usage_error("attack " + std::string(security::attack_name(category)) +
                          " is not applicable in phase " +
                          std::string(core::phase_name(phase)));

    const std::uint64_t baseline = rt.audit.last_seq();
    const std::string phase_label(core::phase_name(phase));

    bool fired = false;
    if (phase != core::LifecyclePhase::Operation) {
        rt.set_phase_hook([&](const std::string&, core::LifecyclePhase entered) {
            if (entered == phase && !fired) {
                fired = true;
                inject(rt, category);
            }
        });
    }

    const auto create_token = rt.issue_token_for("operator", "operator-secret", "slice.create",
                                                 "attack-probe");
    const std::string slice_id = rt.orch.create_slice(probe_intent(), create_token);
    if (phase == core::LifecyclePhase::Operation) {
        fired = true;
        inject(rt, category);
    }
    const auto decommission_token = rt.issue_token_for("operator", "operator-secret",
                                                       "slice.decommission", slice_id);
    rt.orch.decommission(slice_id, decommission_token);
    rt.set_phase_hook(nullptr);

    if (!fired)
        throw internal_error("attack probe never reached phase " + phase_label);

    security::AuditFilter filter;
    filter.category = std::string(security::attack_name(category));
    filter.min_seq = baseline + 1;
    const auto incidents = rt.audit.query(filter);
    if (incidents.size() != 1)
        throw internal_error("attack " + std::string(security::attack_name(category)) +
                             " in " + phase_label + ": expected exactly one incident, saw " +
                             std::to_string(incidents.size()));
    if (incidents[0].phase != phase_label)
        throw internal_error("incident recorded under phase " + incidents[0].phase +
                             ", expected " + phase_label);

    AttackOutcome outcome;
    outcome.category = category;
    outcome.phase = phase;
    outcome.incident_seq = incidents[0].seq;
    outcome.detail = incidents[0].detail;
    return outcome;
}

std::vector<AttackOutcome> simulate_all_attacks(runtime::Runtime& rt) {
    std::vector<AttackOutcome> outcomes;
    for (const auto& [category, phase] : security::applicable_cells())
        outcomes.push_back(simulate_attack(rt, category, phase));
    return outcomes;
}

} // namespace netslice::scenario
