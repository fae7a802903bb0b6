#pragma once

#include <string>

#include "netslice/core/types.hpp"

namespace netslice::core {

// Flat key/value intent format, line-addressable on parse errors:
//   tenant = alice
//   location = 0,0
//   max-price-per-hour = 100        (optional)
//   require-renewable = true        (optional, default false)
//   max-pue = 1.6                   (optional)
//   weight.pue = 2                  (optional; any weight.* key switches the
//   weight.renewable = 1             intent to explicit weights, unset ones
//   weight.comm = 1                  keep their defaults)
//   weight.price = 1
//   demand = VM 2 1                 (type quantity unit-capacity; unit
//                                    capacity optional, default 1)
//   kpp = latency_ms <= 10
//   kpp = throughput_mbps >= 100 elastic 0
IntentDescriptor parse_intent_text(const std::string& text, const std::string& origin);
IntentDescriptor parse_intent_file(const std::string& path);

// Canonical form; parse_intent_text(serialize_intent(x)) == x.
std::string serialize_intent(const IntentDescriptor& intent);

} // namespace netslice::core
