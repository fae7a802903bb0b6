#include "netslice/scenario/demo.hpp"

#include <algorithm>

#include "netslice/util/errors.hpp"
#include "netslice/util/text.hpp"

namespace netslice::scenario {

core::IntentDescriptor demo_intent() {
    core::IntentDescriptor intent;
    intent.tenant_id = "alice";
    intent.tenant_location = {8.0, 8.0};
    intent.demands = {{core::ResourceType::VM, 2, 1},
                      {core::ResourceType::IoTDevice, 1, 2}};
    // Mean throughput across the two domains tops out near 129, so this
    // target is violated on every tick and drives the elastic scale-up path.
    core::KppTarget throughput;
    throughput.comparator = core::KppComparator::GreaterEq;
    throughput.threshold = 130.0;
    throughput.elastic_demand = 0;
    intent.kpp_targets["throughput_mbps"] = throughput;
    core::KppTarget latency;
    latency.comparator = core::KppComparator::LessEq;
    latency.threshold = 50.0;
    intent.kpp_targets["latency_ms"] = latency;
    return intent;
}

namespace {

// First dataset flow of the class, by generation order.
const ml::FlowFeatureVector& first_of(const ml::FlowDataset& dataset, ml::TrafficClass cls,
                                      std::size_t skip = 0) {
    for (const auto& flow : dataset.flows)
        if (flow.label == cls) {
            if (skip == 0) return flow;
            --skip;
        }
    throw internal_error("demo dataset lacks class " +
                         std::string(ml::traffic_class_name(cls)));
}

} // namespace

DemoResult run_demo(runtime::Runtime& rt, const DemoOptions& options) {
    DemoResult result;
    std::string t;
    t += "demo seed=" + std::to_string(rt.config.seed) + "\n";

    const auto dataset = ml::synth_flow_dataset(rt.config.seed);
    const auto model = ml::knn_train(dataset.flows, rt.config.knn_k);
    rt.ddos_agent->update_model(model);
    t += "classifier k=" + std::to_string(rt.config.knn_k) +
         " points=" + std::to_string(dataset.flows.size()) + "\n";

    rt.set_phase_hook([&](const std::string& slice_id, core::LifecyclePhase phase) {
        t += "phase " + slice_id + " " + std::string(core::phase_name(phase)) + "\n";
    });

    const auto intent = demo_intent();
    const auto create_token =
        rt.issue_token_for("alice", "alice-secret", "slice.create", intent.tenant_id);
    const std::string slice_id = rt.orch.create_slice(intent, create_token);
    result.slice_id = slice_id;
    t += "created " + slice_id + "\n";
    {
        const auto& rec = rt.slices.get(slice_id).record;
        for (const auto& a : rec.blueprint->assignments)
            t += "plan demand=" + std::to_string(a.demand_index) + " offer=" + a.offer_id +
                 " amount=" + std::to_string(a.amount) + "\n";
        t += "plan price=" + util::fmt_double(rec.blueprint->total_price_per_hour) +
             " renewable=" + util::fmt_double(rec.blueprint->renewable_fraction) + "\n";
    }

    for (std::size_t tick = 1; tick <= options.ticks; ++tick) {
        if (tick == 2) {
            rt.orch.inject_app_alert(slice_id, "video stalls reported");
            t += "app-alert injected\n";
        }
        const auto actions = rt.orch.supervise_tick(slice_id);
        t += "tick " + std::to_string(tick) + " actions=" + std::to_string(actions.size()) +
             "\n";
        for (const auto& action : actions) {
            try {
                rt.orch.apply_action(slice_id, action);
                t += "  applied " + orchestrator::format_action(action) + "\n";
            } catch (const Error& e) {
                t += "  rejected " + orchestrator::format_action(action) + " (" +
                     std::string(error_kind_name(e.kind())) + ")\n";
            }
        }
        const auto& kpis = rt.slices.get(slice_id).record.kpi_snapshot;
        for (const auto& [name, value] : kpis)
            t += "  kpi " + name + "=" + util::fmt_double(value) + "\n";
    }

    struct Probe {
        ml::TrafficClass cls;
        std::size_t skip;
        const char* origin;
    };
    const Probe probes[] = {
        {ml::TrafficClass::Benign, 0, "dom-compute"},
        {ml::TrafficClass::Benign, 1, "dom-compute"},
        {ml::TrafficClass::Syn, 0, "dom-compute"},
        {ml::TrafficClass::DosDns, 0, "dom-compute"},
        {ml::TrafficClass::Benign, 2, "external-bot"},
        {ml::TrafficClass::UdpLag, 0, "external-bot"},
    };
    for (const auto& probe : probes) {
        const auto& flow = first_of(dataset, probe.cls, probe.skip);
        const std::string cls_name(ml::traffic_class_name(probe.cls));
        if (rt.gate.filter_ingress(flow, probe.origin) ==
            security::IngressDecision::DenyExternal) {
            t += "ingress " + std::string(probe.origin) + " " + cls_name + " denied\n";
            continue;
        }
        const auto verdict = rt.gate.ddos_gate("ingress", flow, probe.origin);
        t += "ingress " + std::string(probe.origin) + " " + cls_name + " " +
             (verdict == security::GateDecision::Pass ? "pass" : "drop") + "\n";
    }

    const auto decommission_token =
        rt.issue_token_for("alice", "alice-secret", "slice.decommission", slice_id);
    rt.orch.decommission(slice_id, decommission_token);
    t += "decommissioned " + slice_id + "\n";
    rt.set_phase_hook(nullptr);

    t += "audit entries=" + std::to_string(rt.audit.size()) + "\n";
    t += "store events=" + std::to_string(rt.slices.last_seq()) + "\n";
    std::string broken;
    t += std::string("marketplace conservation=") +
         (rt.market.check_conservation(&broken) ? "ok" : ("broken " + broken)) + "\n";

    result.transcript = std::move(t);
    return result;
}

} // namespace netslice::scenario
