#include "netslice/orchestrator/orchestrator.hpp"

#include <algorithm>
#include <set>

#include "netslice/core/conformance.hpp"
#include "netslice/core/lifecycle.hpp"
#include "netslice/util/errors.hpp"

namespace netslice::orchestrator {

std::string format_action(const SupervisionAction& a) {
    switch (a.kind) {
    case SupervisionAction::Kind::ScaleUp:
        return "ScaleUp(demand=" + std::to_string(a.demand_index) +
               ", delta=" + std::to_string(a.delta) + ", metric=" + a.metric + ")";
    case SupervisionAction::Kind::ScaleDown:
        return "ScaleDown(demand=" + std::to_string(a.demand_index) +
               ", delta=" + std::to_string(a.delta) + ")";
    case SupervisionAction::Kind::Migrate:
        return "Migrate(" + a.from_offer + "->" + a.to_offer + ")";
    case SupervisionAction::Kind::RaiseAlert:
        return "RaiseAlert(" + a.metric + ")";
    }
    throw internal_error("unreachable action kind");
}

Orchestrator::Orchestrator(util::LogicalClock& clock, marketplace::Marketplace& market,
                           domains::Federation& federation, security::Iam& iam,
                           security::AuditLog& audit, store::SliceStore& store,
                           OrchestratorConfig config)
    : clock_(clock), market_(market), federation_(federation), iam_(iam), audit_(audit),
      store_(store), config_(std::move(config)) {}

void Orchestrator::set_step_observer(StepObserver observer) {
    std::lock_guard lock(ops_);
    observer_ = std::move(observer);
}

void Orchestrator::notify(const std::string& slice_id, core::LifecyclePhase phase) {
    if (observer_) observer_(slice_id, phase);
}

void Orchestrator::advance(const std::string& slice_id, core::LifecycleEvent event) {
    const core::SliceRecord& rec = store_.get(slice_id).record;
    const std::uint64_t ts = clock_.tick();
    core::SliceRecord next = core::advance_lifecycle(rec, event, ts);
    store_.phase_changed(slice_id, next.phase, ts);
    notify(slice_id, next.phase);
}

std::uint64_t Orchestrator::next_op(const std::string& slice_id) {
    auto it = op_counts_.find(slice_id);
    if (it == op_counts_.end()) {
        // Rebuild the per-slice ordinal after a restart so the sequence stays
        // gap-free across process lifetimes.
        const std::string prefix = "slice=" + slice_id + " op=";
        std::uint64_t count = 0;
        for (const auto& ev : audit_.query({}))
            if (ev.detail.rfind(prefix, 0) == 0) ++count;
        it = op_counts_.emplace(slice_id, count).first;
    }
    return ++it->second;
}

void Orchestrator::audit_op(const std::string& slice_id, const std::string& category,
                            const std::string& text) {
    const std::uint64_t n = next_op(slice_id);
    audit_.append(clock_.tick(), category, iam_.audit_phase(), "orchestrator",
                  "slice=" + slice_id + " op=" + std::to_string(n) + " " + text);
}

core::ScoringWeights Orchestrator::effective_weights(const core::IntentDescriptor& intent) const {
    return intent.weight_overrides ? *intent.weight_overrides
                                   : config_.builder.default_weights;
}

std::string Orchestrator::next_slice_id() const {
    std::size_t n = store_.slices().size() + 1;
    std::string id = "slice-" + std::to_string(n);
    while (store_.exists(id)) id = "slice-" + std::to_string(++n);
    return id;
}

std::string Orchestrator::create_slice(const core::IntentDescriptor& intent,
                                       const std::string& token_id) {
    iam_.validate_token(token_id, "slice.create", intent.tenant_id);
    core::validate_intent(intent);

    std::lock_guard lock(ops_);
    const std::string id = next_slice_id();
    store_.slice_created(id, intent, clock_.tick());
    notify(id, core::LifecyclePhase::Preparation);
    try {
        const auto catalog = market_.query_offers();
        auto plan = builder::select_resources(intent, catalog, effective_weights(intent),
                                              config_.builder);
        builder::validate_plan(intent, catalog, plan);
        store_.blueprint_set(id, plan, clock_.tick());
        advance(id, core::LifecycleEvent::BuildSucceeded);

        for (const auto& a : plan.assignments) {
            const auto& demand = intent.demands[a.demand_index];
            const std::int64_t units = a.amount * demand.unit_capacity;
            auto rsv = market_.reserve(a.offer_id, units, id);
            store_.reservation_taken(id, rsv, clock_.tick());
        }
        for (const auto& a : plan.assignments) {
            const auto& demand = intent.demands[a.demand_index];
            const auto& offer = market_.get_offer(a.offer_id);
            auto* dom = federation_.find(offer.owner_domain);
            if (!dom)
                throw domain_error("offer " + a.offer_id + " names unknown domain " +
                                         offer.owner_domain);
            const std::int64_t units = a.amount * demand.unit_capacity;
            const auto handle = dom->allocate({id, demand.type, units, a.offer_id});
            core::DomainAllocation alloc;
            alloc.domain_id = offer.owner_domain;
            alloc.offer_id = a.offer_id;
            alloc.demand_index = a.demand_index;
            alloc.amount = a.amount;
            alloc.reservation_id = reservation_for(id, a.offer_id);
            alloc.domain_handle = handle;
            store_.allocation_added(id, alloc, clock_.tick());
        }
        advance(id, core::LifecycleEvent::InstantiateSucceeded);
        audit_op(id, "SliceCreate", "create ok tenant=" + intent.tenant_id);
        return id;
    } catch (const Error& e) {
        compensate_create(id);
        audit_op(id, "SliceCreate",
                 std::string("create failed: ") + std::string(error_kind_name(e.kind())));
        throw;
    }
}

void Orchestrator::teardown_holdings(const std::string& slice_id) {
    // Reverse order on both ledgers; every removal is persisted immediately so
    // a crash here resumes exactly where it stopped.
    while (!store_.get(slice_id).record.allocations.empty()) {
        const auto alloc = store_.get(slice_id).record.allocations.back();
        auto* dom = federation_.find(alloc.domain_id);
        if (!dom) throw internal_error("allocation names unknown domain " + alloc.domain_id);
        dom->deallocate(alloc.domain_handle);
        store_.allocation_removed(slice_id, alloc.offer_id, clock_.tick());
    }
    while (!store_.get(slice_id).reservations.empty()) {
        const auto rsv = store_.get(slice_id).reservations.back();
        market_.release(rsv.reservation_id);
        store_.reservation_released(slice_id, rsv.reservation_id, clock_.tick());
    }
}

void Orchestrator::compensate_create(const std::string& slice_id) {
    teardown_holdings(slice_id);
    const auto phase = store_.get(slice_id).record.phase;
    if (phase == core::LifecyclePhase::Preparation)
        advance(slice_id, core::LifecycleEvent::BuildFailed);
    else if (phase == core::LifecyclePhase::Commissioning)
        advance(slice_id, core::LifecycleEvent::InstantiateFailed);
    else if (phase == core::LifecyclePhase::Operation)
        advance(slice_id, core::LifecycleEvent::DecommissionRequested);
    advance(slice_id, core::LifecycleEvent::TeardownComplete);
}

std::vector<SupervisionAction> Orchestrator::supervise_tick(const std::string& slice_id) {
    std::lock_guard lock(ops_);
    const auto& stored = store_.get(slice_id);
    const core::SliceRecord& rec = stored.record;
    if (rec.phase != core::LifecyclePhase::Operation)
        throw usage_error("slice " + slice_id + " is not in Operation (phase=" +
                                std::string(core::phase_name(rec.phase)) + ")");

    std::vector<std::string> domains_in_order;
    for (const auto& a : rec.allocations)
        if (std::find(domains_in_order.begin(), domains_in_order.end(), a.domain_id) ==
            domains_in_order.end())
            domains_in_order.push_back(a.domain_id);

    std::map<std::string, double> sums;
    std::map<std::string, std::size_t> counts;
    for (const auto& domain_id : domains_in_order) {
        auto* dom = federation_.find(domain_id);
        if (!dom) throw internal_error("allocation names unknown domain " + domain_id);
        const auto batch = dom->poll(slice_id, clock_.tick());
        for (const auto& [name, value] : batch.metrics) {
            sums[name] += value;
            counts[name] += 1;
        }
    }
    std::map<std::string, double> merged;
    for (const auto& [name, sum] : sums)
        merged[name] = sum / static_cast<double>(counts[name]);
    store_.kpi_snapshot(slice_id, merged, clock_.tick());

    const auto report = core::check_conformance(merged, rec.intent.kpp_targets);
    std::vector<SupervisionAction> actions;
    for (const auto& [name, verdict] : report.per_metric) {
        if (verdict.conformant) continue;
        const auto& target = rec.intent.kpp_targets.at(name);
        if (target.elastic_demand) {
            SupervisionAction a;
            a.kind = SupervisionAction::Kind::ScaleUp;
            a.demand_index = *target.elastic_demand;
            a.delta = 1;
            a.metric = name;
            actions.push_back(std::move(a));
        } else {
            SupervisionAction a;
            a.kind = SupervisionAction::Kind::RaiseAlert;
            a.metric = name;
            actions.push_back(std::move(a));
        }
    }
    if (auto it = app_alerts_.find(slice_id); it != app_alerts_.end()) {
        for (const auto& msg : it->second) {
            SupervisionAction a;
            a.kind = SupervisionAction::Kind::RaiseAlert;
            a.metric = "app:" + msg;
            actions.push_back(std::move(a));
        }
        app_alerts_.erase(it);
    }
    if (!actions.empty()) {
        std::string joined;
        for (const auto& a : actions) {
            if (!joined.empty()) joined += "; ";
            joined += format_action(a);
        }
        store_.note(slice_id, "planned actions: " + joined, clock_.tick());
    }
    audit_op(slice_id, "SupervisionTick", "tick actions=" + std::to_string(actions.size()));
    return actions;
}

core::SliceRecord Orchestrator::apply_action(const std::string& slice_id,
                                             const SupervisionAction& action) {
    std::lock_guard lock(ops_);
    const core::SliceRecord& rec = store_.get(slice_id).record;
    if (rec.phase != core::LifecyclePhase::Operation)
        throw usage_error("slice " + slice_id + " is not in Operation (phase=" +
                                std::string(core::phase_name(rec.phase)) + ")");
    try {
        switch (action.kind) {
        case SupervisionAction::Kind::RaiseAlert:
            store_.note(slice_id, "alert: " + action.metric, clock_.tick());
            break;
        case SupervisionAction::Kind::ScaleUp:
            do_scale_up(slice_id, action);
            break;
        case SupervisionAction::Kind::ScaleDown:
            do_scale_down(slice_id, action);
            break;
        case SupervisionAction::Kind::Migrate:
            do_migrate(slice_id, action);
            break;
        }
        audit_op(slice_id, "ActuatorAction", "action ok " + format_action(action));
        return store_.get(slice_id).record;
    } catch (const Error& e) {
        audit_op(slice_id, "ActuatorAction",
                 "action failed (" + std::string(error_kind_name(e.kind())) + ") " +
                     format_action(action));
        throw;
    }
}

void Orchestrator::decommission(const std::string& slice_id, const std::string& token_id) {
    iam_.validate_token(token_id, "slice.decommission", slice_id);
    std::lock_guard lock(ops_);
    const auto phase = store_.get(slice_id).record.phase;
    if (phase == core::LifecyclePhase::Terminated)
        throw usage_error("slice " + slice_id + " is already Terminated");
    if (phase != core::LifecyclePhase::Decommissioning)
        advance(slice_id, core::LifecycleEvent::DecommissionRequested);
    teardown_holdings(slice_id);
    advance(slice_id, core::LifecycleEvent::TeardownComplete);
    audit_op(slice_id, "SliceDecommission", "decommission ok");
}

std::string Orchestrator::reservation_for(const std::string& slice_id,
                                          const std::string& offer_id) const {
    // One active reservation per (slice, offer): plans assign an offer at most
    // once and scale-ups exclude offers the slice already holds.
    for (const auto& r : store_.get(slice_id).reservations)
        if (r.offer_id == offer_id) return r.reservation_id;
    throw internal_error("no reservation for offer " + offer_id + " on " + slice_id);
}

double Orchestrator::holdings_price(const core::SliceRecord& rec) const {
    double price = 0.0;
    for (const auto& a : rec.allocations) {
        const auto& offer = market_.get_offer(a.offer_id);
        price += static_cast<double>(a.amount) *
                 static_cast<double>(rec.intent.demands[a.demand_index].unit_capacity) *
                 offer.price_per_hour;
    }
    return price;
}

core::Point Orchestrator::holdings_centroid(const core::SliceRecord& rec) const {
    if (rec.allocations.empty()) return rec.intent.tenant_location;
    core::Point c;
    for (const auto& a : rec.allocations) {
        const auto& offer = market_.get_offer(a.offer_id);
        c.x += offer.location.x;
        c.y += offer.location.y;
    }
    c.x /= static_cast<double>(rec.allocations.size());
    c.y /= static_cast<double>(rec.allocations.size());
    return c;
}

void Orchestrator::do_scale_up(const std::string& slice_id, const SupervisionAction& action) {
    const core::SliceRecord& rec = store_.get(slice_id).record;
    if (action.delta < 1) throw usage_error("scale delta must be >= 1");
    if (action.demand_index >= rec.intent.demands.size())
        throw usage_error("scale-up names demand index out of range");
    const auto& demand = rec.intent.demands[action.demand_index];

    core::IntentDescriptor sub;
    sub.tenant_id = rec.intent.tenant_id;
    sub.tenant_location = holdings_centroid(rec);
    sub.demands = {{demand.type, action.delta, demand.unit_capacity}};
    sub.sustainability = rec.intent.sustainability;
    sub.weight_overrides = rec.intent.weight_overrides;
    if (rec.intent.max_price_per_hour) {
        const double left = *rec.intent.max_price_per_hour - holdings_price(rec);
        sub.max_price_per_hour = left > 0.0 ? left : 0.0;
    }

    // Offers the slice already holds stay out of the delta plan so every
    // allocation entry keeps covering exactly one offer.
    std::set<std::string> held;
    for (const auto& a : rec.allocations) held.insert(a.offer_id);
    std::vector<marketplace::ResourceOffer> catalog;
    for (auto& o : market_.query_offers())
        if (!held.count(o.offer_id)) catalog.push_back(std::move(o));

    auto plan = builder::select_resources(sub, catalog, effective_weights(rec.intent),
                                          config_.builder);
    builder::validate_plan(sub, catalog, plan);

    std::vector<marketplace::Reservation> taken;
    std::vector<core::DomainAllocation> added;
    try {
        for (const auto& a : plan.assignments) {
            const std::int64_t units = a.amount * demand.unit_capacity;
            auto rsv = market_.reserve(a.offer_id, units, slice_id);
            store_.reservation_taken(slice_id, rsv, clock_.tick());
            taken.push_back(std::move(rsv));
        }
        for (const auto& a : plan.assignments) {
            const auto& offer = market_.get_offer(a.offer_id);
            auto* dom = federation_.find(offer.owner_domain);
            if (!dom)
                throw domain_error("offer " + a.offer_id + " names unknown domain " +
                                   offer.owner_domain);
            const std::int64_t units = a.amount * demand.unit_capacity;
            const auto handle = dom->allocate({slice_id, demand.type, units, a.offer_id});
            core::DomainAllocation alloc;
            alloc.domain_id = offer.owner_domain;
            alloc.offer_id = a.offer_id;
            alloc.demand_index = action.demand_index;
            alloc.amount = a.amount;
            alloc.reservation_id = reservation_for(slice_id, a.offer_id);
            alloc.domain_handle = handle;
            store_.allocation_added(slice_id, alloc, clock_.tick());
            added.push_back(std::move(alloc));
        }
    } catch (const Error&) {
        // Roll back the delta only; the slice keeps its prior holdings.
        for (auto it = added.rbegin(); it != added.rend(); ++it) {
            federation_.find(it->domain_id)->deallocate(it->domain_handle);
            store_.allocation_removed(slice_id, it->offer_id, clock_.tick());
        }
        for (auto it = taken.rbegin(); it != taken.rend(); ++it) {
            market_.release(it->reservation_id);
            store_.reservation_released(slice_id, it->reservation_id, clock_.tick());
        }
        throw;
    }
}

void Orchestrator::do_scale_down(const std::string& slice_id, const SupervisionAction& action) {
    const core::SliceRecord& rec = store_.get(slice_id).record;
    if (action.delta < 1) throw usage_error("scale delta must be >= 1");
    if (action.demand_index >= rec.intent.demands.size())
        throw usage_error("scale-down names demand index out of range");

    // Newest entries for the demand come off first, whole entries only.
    std::vector<core::DomainAllocation> victims;
    std::int64_t sum = 0;
    for (auto it = rec.allocations.rbegin(); it != rec.allocations.rend() && sum < action.delta;
         ++it) {
        if (it->demand_index != action.demand_index) continue;
        if (sum + it->amount > action.delta)
            throw infeasible_error("scale-down delta " + std::to_string(action.delta) +
                                   " does not match whole allocation entries");
        victims.push_back(*it);
        sum += it->amount;
    }
    if (sum < action.delta)
        throw infeasible_error("scale-down delta " + std::to_string(action.delta) +
                               " exceeds scalable allocations");

    for (const auto& victim : victims) {
        auto* dom = federation_.find(victim.domain_id);
        if (!dom) throw internal_error("allocation names unknown domain " + victim.domain_id);
        dom->deallocate(victim.domain_handle);
        store_.allocation_removed(slice_id, victim.offer_id, clock_.tick());
        market_.release(victim.reservation_id);
        store_.reservation_released(slice_id, victim.reservation_id, clock_.tick());
    }
}

void Orchestrator::do_migrate(const std::string& slice_id, const SupervisionAction& action) {
    const core::SliceRecord& rec = store_.get(slice_id).record;
    const auto from = std::find_if(rec.allocations.begin(), rec.allocations.end(),
                                   [&](const auto& a) { return a.offer_id == action.from_offer; });
    if (from == rec.allocations.end())
        throw infeasible_error("slice holds no allocation on offer " + action.from_offer);
    if (std::any_of(rec.allocations.begin(), rec.allocations.end(),
                    [&](const auto& a) { return a.offer_id == action.to_offer; }))
        throw usage_error("slice already holds offer " + action.to_offer);
    const core::DomainAllocation moving = *from;
    const auto& demand = rec.intent.demands[moving.demand_index];
    const auto& target = market_.get_offer(action.to_offer);
    if (target.resource_type != demand.type)
        throw infeasible_error("offer " + action.to_offer + " has the wrong resource type");
    if (rec.intent.sustainability.require_renewable && !target.renewable)
        throw infeasible_error("offer " + action.to_offer + " is not renewable");
    if (rec.intent.sustainability.max_pue && target.pue > *rec.intent.sustainability.max_pue)
        throw infeasible_error("offer " + action.to_offer + " exceeds max pue");
    if (rec.intent.max_price_per_hour) {
        const double old_cost = static_cast<double>(moving.amount) *
                                static_cast<double>(demand.unit_capacity) *
                                market_.get_offer(moving.offer_id).price_per_hour;
        const double new_cost = static_cast<double>(moving.amount) *
                                static_cast<double>(demand.unit_capacity) *
                                target.price_per_hour;
        if (holdings_price(rec) - old_cost + new_cost > *rec.intent.max_price_per_hour)
            throw infeasible_error("migration to " + action.to_offer + " breaks the budget");
    }

    const std::int64_t units = moving.amount * demand.unit_capacity;
    auto rsv = market_.reserve(action.to_offer, units, slice_id);
    store_.reservation_taken(slice_id, rsv, clock_.tick());
    std::uint64_t handle = 0;
    try {
        auto* dom = federation_.find(target.owner_domain);
        if (!dom)
            throw domain_error("offer " + action.to_offer + " names unknown domain " +
                               target.owner_domain);
        handle = dom->allocate({slice_id, demand.type, units, action.to_offer});
    } catch (const Error&) {
        market_.release(rsv.reservation_id);
        store_.reservation_released(slice_id, rsv.reservation_id, clock_.tick());
        throw;
    }
    core::DomainAllocation alloc;
    alloc.domain_id = target.owner_domain;
    alloc.offer_id = action.to_offer;
    alloc.demand_index = moving.demand_index;
    alloc.amount = moving.amount;
    alloc.reservation_id = rsv.reservation_id;
    alloc.domain_handle = handle;
    store_.allocation_added(slice_id, alloc, clock_.tick());

    federation_.find(moving.domain_id)->deallocate(moving.domain_handle);
    store_.allocation_removed(slice_id, moving.offer_id, clock_.tick());
    market_.release(moving.reservation_id);
    store_.reservation_released(slice_id, moving.reservation_id, clock_.tick());
}

core::SliceRecord Orchestrator::slice(const std::string& slice_id) const {
    std::lock_guard lock(ops_);
    return store_.get(slice_id).record;
}

void Orchestrator::inject_app_alert(const std::string& slice_id, const std::string& message) {
    std::lock_guard lock(ops_);
    store_.get(slice_id);
    app_alerts_[slice_id].push_back(message);
}

} // namespace netslice::orchestrator
