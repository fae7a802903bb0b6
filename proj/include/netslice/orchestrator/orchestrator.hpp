#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "netslice/builder/builder.hpp"
#include "netslice/core/types.hpp"
#include "netslice/domains/federation.hpp"
#include "netslice/marketplace/marketplace.hpp"
#include "netslice/orchestrator/actions.hpp"
#include "netslice/security/audit.hpp"
#include "netslice/security/iam.hpp"
#include "netslice/store/slice_store.hpp"
#include "netslice/util/clock.hpp"

namespace netslice::orchestrator {

// Called after every phase entry, while the slice operation is still in
// progress. The callee must not call back into the orchestrator.
using StepObserver = std::function<void(const std::string& slice_id, core::LifecyclePhase)>;

struct OrchestratorConfig {
    builder::BuilderConfig builder;
};

// Owns the end-to-end slice flow over borrowed collaborators. The slice store
// is the source of truth; marketplace and domain state are derived and kept
// consistent by writing the store right after each side effect. One mutex
// serializes all slice operations, which also makes operations on the same
// slice mutually exclusive.
class Orchestrator {
public:
    Orchestrator(util::LogicalClock& clock, marketplace::Marketplace& market,
                 domains::Federation& federation, security::Iam& iam,
                 security::AuditLog& audit, store::SliceStore& store,
                 OrchestratorConfig config = {});

    void set_step_observer(StepObserver observer);

    // Token must be scoped to ("slice.create", tenant-id). On any failure past
    // the token gate every side effect is compensated and the slice record
    // ends Terminated.
    std::string create_slice(const core::IntentDescriptor& intent, const std::string& token_id);

    // Polls every involved domain, merges metrics by arithmetic mean, stores
    // the KPI snapshot, and derives actions from the conformance report plus
    // injected application alerts. Read-only on allocations.
    std::vector<SupervisionAction> supervise_tick(const std::string& slice_id);

    // Failure leaves the slice Operational and unchanged (scale-up deltas are
    // compensated before rethrowing).
    core::SliceRecord apply_action(const std::string& slice_id, const SupervisionAction& action);

    // Token must be scoped to ("slice.decommission", slice-id). Resumes the
    // teardown when the slice is already Decommissioning.
    void decommission(const std::string& slice_id, const std::string& token_id);

    core::SliceRecord slice(const std::string& slice_id) const;
    void inject_app_alert(const std::string& slice_id, const std::string& message);

private:
    void notify(const std::string& slice_id, core::LifecyclePhase phase);
    void advance(const std::string& slice_id, core::LifecycleEvent event);
    void teardown_holdings(const std::string& slice_id);
    void compensate_create(const std::string& slice_id);
    void audit_op(const std::string& slice_id, const std::string& category,
                  const std::string& text);
    std::uint64_t next_op(const std::string& slice_id);
    core::ScoringWeights effective_weights(const core::IntentDescriptor& intent) const;
    std::string next_slice_id() const;
    std::string reservation_for(const std::string& slice_id, const std::string& offer_id) const;
    double holdings_price(const core::SliceRecord& rec) const;
    core::Point holdings_centroid(const core::SliceRecord& rec) const;
    void do_scale_up(const std::string& slice_id, const SupervisionAction& action);
    void do_scale_down(const std::string& slice_id, const SupervisionAction& action);
    void do_migrate(const std::string& slice_id, const SupervisionAction& action);

    util::LogicalClock& clock_;
    marketplace::Marketplace& market_;
    domains::Federation& federation_;
    security::Iam& iam_;
    security::AuditLog& audit_;
    store::SliceStore& store_;
    OrchestratorConfig config_;
    StepObserver observer_;

    mutable std::mutex ops_;
    std::map<std::string, std::vector<std::string>> app_alerts_;
    std::map<std::string, std::uint64_t> op_counts_;
};

} // namespace netslice::orchestrator
