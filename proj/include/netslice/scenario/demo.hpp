#pragma once

#include <cstddef>
#include <string>

#include "netslice/runtime/runtime.hpp"

namespace netslice::scenario {

struct DemoOptions {
    std::size_t ticks = 3;
};

struct DemoResult {
    std::string slice_id;
    std::string transcript;   // byte-stable for a fixed config
};

// The full slice story on one runtime: train the flow classifier, create a
// two-domain slice, supervise it (elastic scale-up, an application alert, an
// infeasible scale-up), pass mixed traffic through the ingress chain, then
// decommission. The returned transcript mentions every decision, so two runs
// against equal configs must produce identical bytes.
DemoResult run_demo(runtime::Runtime& rt, const DemoOptions& options = {});

// The intent the demo submits; exposed for tests.
core::IntentDescriptor demo_intent();

} // namespace netslice::scenario
