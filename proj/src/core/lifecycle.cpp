#include "netslice/core/lifecycle.hpp"

#include <string>

#include "netslice/util/errors.hpp"

namespace netslice::core {

std::optional<LifecyclePhase> next_phase(LifecyclePhase phase, LifecycleEvent event) {
    using P = LifecyclePhase;
    using E = LifecycleEvent;
    const bool active = phase == P::Preparation || phase == P::Commissioning ||
                        phase == P::Operation;
    switch (event) {
        case E::BuildSucceeded:
            if (phase == P::Preparation) return P::Commissioning;
            return std::nullopt;
        case E::InstantiateSucceeded:
            if (phase == P::Commissioning) return P::Operation;
            return std::nullopt;
        case E::BuildFailed:
        case E::InstantiateFailed:
        case E::DecommissionRequested:
            if (active) return P::Decommissioning;
            return std::nullopt;
        case E::TeardownComplete:
            if (phase == P::Decommissioning) return P::Terminated;
            return std::nullopt;
    }
    return std::nullopt;
}

SliceRecord advance_lifecycle(const SliceRecord& slice, LifecycleEvent event,
                              std::uint64_t now) {
    auto next = next_phase(slice.phase, event);
    if (!next)
        throw internal_error("illegal lifecycle transition: " +
                             std::string(phase_name(slice.phase)) + " on " +
                             std::string(event_name(event)));
    SliceRecord out = slice;
    out.phase = *next;
    out.phase_entered_at = now;
    return out;
}

} // namespace netslice::core
