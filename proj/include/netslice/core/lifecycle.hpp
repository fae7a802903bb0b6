#pragma once

#include <optional>

#include "netslice/core/types.hpp"

namespace netslice::core {

// Legal moves only:
//   Preparation   --BuildSucceeded-->        Commissioning
//   Commissioning --InstantiateSucceeded-->  Operation
//   Preparation | Commissioning | Operation --BuildFailed | InstantiateFailed |
//       DecommissionRequested--> Decommissioning
//   Decommissioning --TeardownComplete-->    Terminated
// Terminated accepts nothing. Everything else is a caller bug.
std::optional<LifecyclePhase> next_phase(LifecyclePhase phase, LifecycleEvent event);

// Returns the record with phase and phase_entered_at updated.
// Throws internal_error (IllegalTransition) on any pair next_phase rejects;
// the input record is left untouched.
SliceRecord advance_lifecycle(const SliceRecord& slice, LifecycleEvent event,
                              std::uint64_t now);

} // namespace netslice::core
