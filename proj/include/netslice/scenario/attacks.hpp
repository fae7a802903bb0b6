#pragma once

#include <string>
#include <vector>

#include "netslice/core/types.hpp"
#include "netslice/runtime/runtime.hpp"
#include "netslice/security/matrix.hpp"

namespace netslice::scenario {

struct AttackOutcome {
    security::AttackCategory category;
    core::LifecyclePhase phase;
    std::uint64_t incident_seq = 0;   // audit seq of the recorded incident
    std::string detail;
};

// Injects one representative attack of the category while a probe slice is in
// the given phase and verifies that exactly one incident of that category was
// audited with that phase label. Throws usage_error for cells outside the
// threat matrix and internal_error if containment did not hold.
AttackOutcome simulate_attack(runtime::Runtime& rt, security::AttackCategory category,
                              core::LifecyclePhase phase);

// Every applicable (category, phase) cell in enumeration order.
std::vector<AttackOutcome> simulate_all_attacks(runtime::Runtime& rt);

} // namespace netslice::scenario
