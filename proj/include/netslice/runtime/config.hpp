#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "netslice/core/types.hpp"
#include "netslice/ml/forecaster.hpp"
#include "netslice/security/iam.hpp"

namespace netslice::runtime {

struct PrincipalSeed {
    std::string id;
    security::PrincipalKind kind = security::PrincipalKind::Tenant;
    std::string secret;
    std::set<std::string> grants;
    bool operator==(const PrincipalSeed&) const = default;
};

// Flat key/value runtime configuration. Every seed is explicit; nothing reads
// ambient entropy. The simulated federation is built from `seed` and
// `trace-hours`; `catalog-file` adds offers on top of the federation's own.
struct RuntimeConfig {
    std::string store_dir = "state";
    std::string catalog_file;   // optional
    std::uint64_t seed = 42;
    std::size_t trace_hours = 960;
    std::int64_t rate_limit = 100;
    bool fail_open_model = false;
    double hop_weight = 1.0;
    core::ScoringWeights default_weights;
    int knn_k = 4;
    ml::ForecasterConfig forecaster;
    std::uint64_t snapshot_every = 0;   // 0 = snapshot only on request
    std::vector<PrincipalSeed> principals;   // empty = built-in defaults
    bool operator==(const RuntimeConfig&) const = default;
};

RuntimeConfig parse_config_text(const std::string& text, const std::string& origin);

// Also verifies that referenced paths (catalog-file) exist.
RuntimeConfig parse_config_file(const std::string& path);

std::string serialize_config(const RuntimeConfig& config);

} // namespace netslice::runtime
