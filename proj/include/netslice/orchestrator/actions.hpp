#pragma once

#include <cstdint>
#include <string>

namespace netslice::orchestrator {

struct SupervisionAction {
    enum class Kind { ScaleUp, ScaleDown, Migrate, RaiseAlert };
    Kind kind = Kind::RaiseAlert;
    std::size_t demand_index = 0;   // ScaleUp / ScaleDown
    std::int64_t delta = 1;         // ScaleUp / ScaleDown, >= 1
    std::string from_offer;         // Migrate
    std::string to_offer;           // Migrate
    std::string metric;             // violated metric or alert text
    bool operator==(const SupervisionAction&) const = default;
};

std::string format_action(const SupervisionAction& a);

} // namespace netslice::orchestrator
