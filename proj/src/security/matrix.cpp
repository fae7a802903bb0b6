#include "netslice/security/matrix.hpp"

#include "netslice/util/errors.hpp"

namespace netslice::security {

std::string_view attack_name(AttackCategory c) {
    switch (c) {
        case AttackCategory::Impersonation: return "Impersonation";
        case AttackCategory::TrafficInjection: return "TrafficInjection";
        case AttackCategory::DoS: return "DoS";
        case AttackCategory::Tampering: return "Tampering";
        case AttackCategory::Eavesdropping: return "Eavesdropping";
        case AttackCategory::ReplayAttack: return "ReplayAttack";
        case AttackCategory::InterfaceMonitoring: return "InterfaceMonitoring";
    }
    return "?";
}

AttackCategory parse_attack(std::string_view s) {
    for (AttackCategory c : kAllAttackCategories)
        if (attack_name(c) == s) return c;
    throw usage_error("unknown attack category: " + std::string(s));
}

bool attack_applicable(AttackCategory category, core::LifecyclePhase phase) {
    using P = core::LifecyclePhase;
    if (phase == P::Terminated) return false;
    switch (category) {
        case AttackCategory::Impersonation:
        case AttackCategory::TrafficInjection:
        case AttackCategory::Tampering:
        case AttackCategory::InterfaceMonitoring:
            return true;
        case AttackCategory::DoS:
            return phase == P::Preparation || phase == P::Operation;
        case AttackCategory::Eavesdropping:
            return phase != P::Decommissioning;
        case AttackCategory::ReplayAttack:
            return phase == P::Preparation;
    }
    return false;
}

std::vector<std::pair<AttackCategory, core::LifecyclePhase>> applicable_cells() {
    std::vector<std::pair<AttackCategory, core::LifecyclePhase>> out;
    for (AttackCategory c : kAllAttackCategories)
        for (core::LifecyclePhase p : kMatrixPhases)
            if (attack_applicable(c, p)) out.emplace_back(c, p);
    return out;
}

} // namespace netslice::security
