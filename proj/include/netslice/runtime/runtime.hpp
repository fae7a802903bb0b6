#pragma once

#include <memory>
#include <string>

#include "netslice/domains/federation.hpp"
#include "netslice/marketplace/marketplace.hpp"
#include "netslice/ml/agent.hpp"
#include "netslice/orchestrator/orchestrator.hpp"
#include "netslice/runtime/config.hpp"
#include "netslice/security/audit.hpp"
#include "netslice/security/gate.hpp"
#include "netslice/security/iam.hpp"
#include "netslice/store/slice_store.hpp"
#include "netslice/util/clock.hpp"

namespace netslice::runtime {

// Wires every component for one process. Construction replays both stores:
// the slice store rebuilds marketplace reservations and domain ledgers, and
// the logical clock restarts past the largest persisted timestamp, so a
// restarted process continues exactly where the previous one stopped.
class Runtime {
public:
    explicit Runtime(RuntimeConfig config);

    Runtime(const Runtime&) = delete;
    Runtime& operator=(const Runtime&) = delete;

    // Convenience for the CLI and scenarios: authenticate, then mint a
    // single-use token for (action, target).
    std::string issue_token_for(const std::string& principal_id, const std::string& secret,
                                const std::string& action, const std::string& target);

    // Extra callback run by the step observer after the audit phase labels
    // are updated. Install before driving operations.
    void set_phase_hook(orchestrator::StepObserver hook);

    const RuntimeConfig config;
    util::LogicalClock clock;
    security::AuditLog audit;
    store::SliceStore slices;
    marketplace::Marketplace market;
    domains::Federation federation;
    security::Iam iam;
    security::SecurityGate gate;
    std::shared_ptr<ml::MlAgent> ddos_agent;     // gate block "ingress"
    std::shared_ptr<ml::MlAgent> energy_agent;   // consumption forecasts
    orchestrator::Orchestrator orch;

private:
    orchestrator::StepObserver phase_hook_;
};

// Paths under the configured store directory. The slice and security stores
// never share a file.
std::string slice_store_dir(const RuntimeConfig& config);
std::string audit_log_path(const RuntimeConfig& config);

} // namespace netslice::runtime
