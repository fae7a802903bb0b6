#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace netslice::ml {

enum class TrafficClass {
    Benign,
    DosDns,
    DosMssql,
    DosNetbios,
    DosSnmp,
    DosUdp,
    Syn,
    Tftp,
    UdpLag,
};

inline constexpr std::size_t kTrafficClassCount = 9;
inline constexpr TrafficClass kAllTrafficClasses[] = {
    TrafficClass::Benign, TrafficClass::DosDns,   TrafficClass::DosMssql,
    TrafficClass::DosNetbios, TrafficClass::DosSnmp, TrafficClass::DosUdp,
    TrafficClass::Syn,    TrafficClass::Tftp,     TrafficClass::UdpLag,
};

std::string_view traffic_class_name(TrafficClass c);
// Accepts canonical names plus common dataset spellings (case and punctuation
// insensitive, DrDoS_* prefixes). Throws data_error on anything else.
TrafficClass parse_traffic_class(std::string_view s);

inline constexpr std::size_t kFlowFeatureCount = 12;

// Fixed feature order; every ingestion path projects onto exactly this.
inline constexpr std::string_view kFlowFeatureNames[kFlowFeatureCount] = {
    "duration",        "packets_fwd",   "packets_bwd",    "bytes_fwd",
    "bytes_bwd",       "mean_iat",      "std_iat",        "mean_pkt_len",
    "std_pkt_len",     "syn_count",     "flows_per_src_window",
    "dst_port_entropy",
};

struct FlowFeatureVector {
    std::array<double, kFlowFeatureCount> features{};
    std::optional<TrafficClass> label;
    bool operator==(const FlowFeatureVector&) const = default;
};

struct FlowDataset {
    std::vector<FlowFeatureVector> flows;
};

// CSV with a header naming features. Columns are matched by normalized name
// (lowercase, alphanumerics only), so FlowMeter-style headers with spaces or
// punctuation project cleanly; extra columns are ignored. A `label` column is
// optional. Throws data_error with row numbers on malformed content.
FlowDataset parse_flow_csv(const std::string& text, const std::string& origin);
FlowDataset load_flow_csv(const std::string& path);
std::string format_flow_csv(const FlowDataset& dataset);

// Seeded 9-class generator with Gaussian clusters whose centers are at least
// `min_separation` apart per feature sigma. Class sizes are deliberately
// unbalanced (rare attack classes stay small) so oversized neighborhoods in a
// nearest-neighbor sweep degrade accuracy.
FlowDataset synth_flow_dataset(std::uint64_t seed);

} // namespace netslice::ml
