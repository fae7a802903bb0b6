#include "netslice/core/conformance.hpp"

#include "netslice/util/errors.hpp"

namespace netslice::core {

ConformanceReport check_conformance(const std::map<std::string, double>& kpis,
                                    const std::map<std::string, KppTarget>& kpps) {
    ConformanceReport report;
    for (const auto& [name, target] : kpps) {
        auto it = kpis.find(name);
        if (it == kpis.end())
            throw data_error("conformance: metric never observed: " + name);
        const double observed = it->second;
        const bool ok = target.comparator == KppComparator::LessEq
                            ? observed <= target.threshold
                            : observed >= target.threshold;
        report.per_metric[name] = MetricVerdict{ok, observed, target.threshold};
        if (!ok) report.overall = false;
    }
    return report;
}

} // namespace netslice::core
