#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>

#include "netslice/ml/agent.hpp"
#include "netslice/security/audit.hpp"
#include "netslice/util/clock.hpp"

namespace netslice::security {

enum class IngressDecision { Allow, DenyExternal };
enum class GateDecision { Pass, Drop };

struct GateConfig {
    std::int64_t rate_limit_per_tick = 100;   // per-origin requests per logical tick
    bool fail_open = false;   // ddos_gate verdict when no model is loaded
};

// Ingress filtering, the per-origin rate limit, and the classifier-backed
// drop decision. Every deny or drop audits exactly one entry.
class SecurityGate {
  public:
    SecurityGate(AuditLog& audit, util::LogicalClock& clock, GateConfig config = {});

    void set_audit_phase(const std::string& phase_label);

    // Origins that count as architecture elements; anything else is external.
    void register_element(const std::string& name);
    bool is_element(const std::string& name) const;

    void attach_agent(const std::string& block, std::shared_ptr<ml::MlAgent> agent);
    std::shared_ptr<ml::MlAgent> agent(const std::string& block) const;

    // Deny(External) for unregistered origins, audited as TrafficInjection.
    IngressDecision filter_ingress(const ml::FlowFeatureVector& flow,
                                   const std::string& origin);

    // Per-origin counter within one logical tick; request over the limit is
    // denied and audited as DoS.
    bool admit_request(const std::string& origin, std::uint64_t tick);

    // Asks the block's agent to classify the flow; anything non-benign is
    // dropped and audited as DoS with the predicted class. With no model
    // loaded the configured fail-open/closed verdict applies, audited either
    // way.
    GateDecision ddos_gate(const std::string& block, const ml::FlowFeatureVector& flow,
                           const std::string& origin);

  private:
    std::string phase() const;

    AuditLog& audit_;
    util::LogicalClock& clock_;
    GateConfig config_;
    mutable std::mutex mu_;
    std::set<std::string> elements_;
    std::map<std::string, std::shared_ptr<ml::MlAgent>> agents_;
    std::map<std::string, std::pair<std::uint64_t, std::int64_t>> rate_;   // origin -> (tick, count)
    std::string phase_label_ = "-";
};

} // namespace netslice::security
