#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "netslice/core/types.hpp"

namespace netslice::security {

enum class AttackCategory {
    Impersonation,
    TrafficInjection,
    DoS,
    Tampering,
    Eavesdropping,
    ReplayAttack,
    InterfaceMonitoring,
};

inline constexpr AttackCategory kAllAttackCategories[] = {
    AttackCategory::Impersonation,  AttackCategory::TrafficInjection,
    AttackCategory::DoS,            AttackCategory::Tampering,
    AttackCategory::Eavesdropping,  AttackCategory::ReplayAttack,
    AttackCategory::InterfaceMonitoring,
};

// The four phases attacks are mapped against (Terminated is not a live phase).
inline constexpr core::LifecyclePhase kMatrixPhases[] = {
    core::LifecyclePhase::Preparation,
    core::LifecyclePhase::Commissioning,
    core::LifecyclePhase::Operation,
    core::LifecyclePhase::Decommissioning,
};

std::string_view attack_name(AttackCategory c);
AttackCategory parse_attack(std::string_view s);

// Which categories can strike which phases. 22 of the 28 cells apply:
// Impersonation, TrafficInjection, Tampering, InterfaceMonitoring in all
// four phases; DoS in Preparation and Operation; Eavesdropping everywhere
// but Decommissioning; ReplayAttack in Preparation only.
bool attack_applicable(AttackCategory category, core::LifecyclePhase phase);

std::vector<std::pair<AttackCategory, core::LifecyclePhase>> applicable_cells();

} // namespace netslice::security
