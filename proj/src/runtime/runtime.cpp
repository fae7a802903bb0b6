#include "netslice/runtime/runtime.hpp"

#include <algorithm>

#include "netslice/util/errors.hpp"
#include "netslice/util/rng.hpp"

namespace netslice::runtime {

std::string slice_store_dir(const RuntimeConfig& config) {
    return config.store_dir + "/slice";
}

std::string audit_log_path(const RuntimeConfig& config) {
    return config.store_dir + "/security/audit.log";
}

Runtime::Runtime(RuntimeConfig cfg)
    : config(std::move(cfg)),
      audit(audit_log_path(config)),
      slices(slice_store_dir(config), config.snapshot_every),
      federation(domains::make_default_federation({config.seed, config.trace_hours})),
      iam(audit, clock, util::splitmix64(config.seed ^ 0x746f6b656e5345ULL)),
      gate(audit, clock, {config.rate_limit, config.fail_open_model}),
      ddos_agent(std::make_shared<ml::MlAgent>("ingress-screen")),
      energy_agent(std::make_shared<ml::MlAgent>("energy-forecast")),
      orch(clock, market, federation, iam, audit, slices,
           {{config.hop_weight, config.default_weights}}) {
    for (const auto& dom : federation.domains)
        for (const auto& offer : dom->offers()) market.register_offer(offer);
    if (!config.catalog_file.empty())
        for (const auto& offer : marketplace::load_catalog_csv(config.catalog_file))
            market.register_offer(offer);

    // The slice store is the source of truth; marketplace and domain ledgers
    // are derived state rebuilt from it.
    for (const auto& [id, stored] : slices.slices()) {
        for (const auto& rsv : stored.reservations) market.restore_reservation(rsv);
        for (const auto& alloc : stored.record.allocations) {
            auto* dom = federation.find(alloc.domain_id);
            if (!dom)
                throw data_error("stored allocation names unknown domain " + alloc.domain_id);
            const auto& demand = stored.record.intent.demands.at(alloc.demand_index);
            dom->restore_allocation(alloc.domain_handle,
                                    {id, demand.type, alloc.amount * demand.unit_capacity,
                                     alloc.offer_id});
        }
    }
    clock.advance_to(std::max(slices.max_timestamp(), audit.max_timestamp()));

    if (config.principals.empty()) {
        iam.register_principal("alice", security::PrincipalKind::Tenant, "alice-secret",
                               {"slice.create", "slice.decommission"});
        iam.register_principal("operator", security::PrincipalKind::Experimenter,
                               "operator-secret",
                               {"slice.create", "slice.decommission", "monitor"});
    } else {
        for (const auto& p : config.principals)
            iam.register_principal(p.id, p.kind, p.secret, p.grants);
    }

    gate.register_element("orchestrator");
    gate.register_element("supervisor");
    gate.register_element("app-mon");
    for (const auto& dom : federation.domains) gate.register_element(dom->id());

    gate.attach_agent("ingress", ddos_agent);

    orch.set_step_observer([this](const std::string& slice_id, core::LifecyclePhase phase) {
        const std::string label(core::phase_name(phase));
        iam.set_audit_phase(label);
        gate.set_audit_phase(label);
        if (phase_hook_) phase_hook_(slice_id, phase);
    });
}

std::string Runtime::issue_token_for(const std::string& principal_id, const std::string& secret,
                                     const std::string& action, const std::string& target) {
    const auto principal = iam.authenticate(principal_id, secret);
    return iam.issue_token(principal, action, target).token_id;
}

void Runtime::set_phase_hook(orchestrator::StepObserver hook) { phase_hook_ = std::move(hook); }

} // namespace netslice::runtime
