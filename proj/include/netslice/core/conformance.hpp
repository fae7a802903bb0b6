#pragma once

#include "netslice/core/types.hpp"

namespace netslice::core {

// Compares observed KPIs against declared KPP targets. Thresholds are
// inclusive on both comparators. Throws data_error when a targeted metric
// was never observed.
ConformanceReport check_conformance(const std::map<std::string, double>& kpis,
                                    const std::map<std::string, KppTarget>& kpps);

} // namespace netslice::core
