#include "netslice/ml/flow.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "netslice/util/errors.hpp"
#include "netslice/util/rng.hpp"
#include "netslice/util/text.hpp"

namespace netslice::ml {

std::string_view traffic_class_name(TrafficClass c) {
    switch (c) {
        case TrafficClass::Benign: return "Benign";
        case TrafficClass::DosDns: return "DoS-DNS";
        case TrafficClass::DosMssql: return "DoS-MSSQL";
        case TrafficClass::DosNetbios: return "DoS-NetBIOS";
        case TrafficClass::DosSnmp: return "DoS-SNMP";
        case TrafficClass::DosUdp: return "DoS-UDP";
        case TrafficClass::Syn: return "Syn";
        case TrafficClass::Tftp: return "TFTP";
        case TrafficClass::UdpLag: return "UDP-lag";
    }
    return "?";
}

namespace {

// Lowercase alphanumerics only; "DoS-DNS", "DrDoS_DNS " and "dos dns" all
// normalize to comparable keys.
std::string norm_key(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c >= 'A' && c <= 'Z') out.push_back(static_cast<char>(c - 'A' + 'a'));
        else if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) out.push_back(c);
    }
    return out;
}

} // namespace

TrafficClass parse_traffic_class(std::string_view s) {
    static const std::map<std::string, TrafficClass> table = {
        {"benign", TrafficClass::Benign},
        {"dosdns", TrafficClass::DosDns},
        {"drdosdns", TrafficClass::DosDns},
        {"dosmssql", TrafficClass::DosMssql},
        {"drdosmssql", TrafficClass::DosMssql},
        {"dosnetbios", TrafficClass::DosNetbios},
        {"drdosnetbios", TrafficClass::DosNetbios},
        {"dossnmp", TrafficClass::DosSnmp},
        {"drdossnmp", TrafficClass::DosSnmp},
        {"dosudp", TrafficClass::DosUdp},
        {"drdosudp", TrafficClass::DosUdp},
        {"syn", TrafficClass::Syn},
        {"synflood", TrafficClass::Syn},
        {"tftp", TrafficClass::Tftp},
        {"udplag", TrafficClass::UdpLag},
    };
    auto it = table.find(norm_key(s));
    if (it == table.end())
        throw data_error("unknown traffic class: " + std::string(s));
    return it->second;
}

FlowDataset parse_flow_csv(const std::string& text, const std::string& origin) {
    auto lines = util::split(text, '\n');
    if (lines.empty() || util::trim(lines[0]).empty())
        throw data_error(origin + ":1: missing header row");

    auto header = util::split(lines[0], ',');
    // column index per canonical feature, -1 when the file lacks it
    std::vector<int> col_of(kFlowFeatureCount, -1);
    int label_col = -1;
    static const std::map<std::string, std::size_t> aliases = {
        {"flowduration", 0},
        {"totalfwdpackets", 1},   {"totalfwdpacket", 1},
        {"totalbackwardpackets", 2}, {"totalbwdpackets", 2},
        {"totallengthoffwdpackets", 3}, {"fwdpacketslengthtotal", 3},
        {"totallengthofbwdpackets", 4}, {"bwdpacketslengthtotal", 4},
        {"flowiatmean", 5},
        {"flowiatstd", 6},
        {"packetlengthmean", 7}, {"averagepacketsize", 7},
        {"packetlengthstd", 8},
        {"synflagcount", 9},    {"synflagcnt", 9},
    };
    for (std::size_t c = 0; c < header.size(); ++c) {
        const std::string key = norm_key(header[c]);
        if (key == "label" || key == "class") {
            label_col = static_cast<int>(c);
            continue;
        }
        for (std::size_t f = 0; f < kFlowFeatureCount; ++f)
            if (key == norm_key(kFlowFeatureNames[f]) && col_of[f] < 0)
                col_of[f] = static_cast<int>(c);
        auto ai = aliases.find(key);
        if (ai != aliases.end() && col_of[ai->second] < 0)
            col_of[ai->second] = static_cast<int>(c);
    }
    std::size_t matched = 0;
    for (int c : col_of)
        if (c >= 0) ++matched;
    if (matched == 0)
        throw data_error(origin + ":1: header matches none of the flow features");
    // Unmatched features become the constant 0; after min-max normalization a
    // constant column carries no distance information, so partial-width files
    // (real capture exports lack the synthetic-only columns) stay usable.

    FlowDataset out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string line = util::trim(lines[i]);
        if (line.empty() || line[0] == '#') continue;
        const std::string where = origin + ":" + std::to_string(i + 1);
        auto cols = util::split(line, ',');
        if (cols.size() != header.size())
            throw data_error(where + ": expected " + std::to_string(header.size()) +
                             " columns, got " + std::to_string(cols.size()));
        FlowFeatureVector v;
        try {
            for (std::size_t f = 0; f < kFlowFeatureCount; ++f) {
                if (col_of[f] < 0) continue;
                v.features[f] = util::parse_double(cols[static_cast<std::size_t>(col_of[f])],
                                                   std::string(kFlowFeatureNames[f]));
                if (!std::isfinite(v.features[f]))
                    throw data_error(std::string(kFlowFeatureNames[f]) + " is not finite");
            }
            if (label_col >= 0) {
                const std::string raw = util::trim(cols[static_cast<std::size_t>(label_col)]);
                if (!raw.empty()) v.label = parse_traffic_class(raw);
            }
        } catch (const Error& e) {
            throw data_error(where + ": " + e.what());
        }
        out.flows.push_back(v);
    }
    return out;
}

FlowDataset load_flow_csv(const std::string& path) {
    return parse_flow_csv(util::read_file(path), path);
}

std::string format_flow_csv(const FlowDataset& dataset) {
    std::ostringstream out;
    for (std::size_t f = 0; f < kFlowFeatureCount; ++f)
        out << (f ? "," : "") << kFlowFeatureNames[f];
    out << ",label\n";
    for (const auto& v : dataset.flows) {
        for (std::size_t f = 0; f < kFlowFeatureCount; ++f)
            out << (f ? "," : "") << util::fmt_double(v.features[f]);
        out << ',' << (v.label ? traffic_class_name(*v.label) : std::string_view{})
            << '\n';
    }
    return out.str();
}

FlowDataset synth_flow_dataset(std::uint64_t seed) {
    // Benign dominates, the two rarest attack classes stay small: with a
    // nearest-neighbor vote, oversized k drowns the rare classes in their
    // bigger neighbors, which is exactly the accuracy-vs-k shape the
    // cross-validation sweep asserts.
    static const std::map<TrafficClass, std::size_t> sizes = {
        {TrafficClass::Benign, 150}, {TrafficClass::DosDns, 45},
        {TrafficClass::DosMssql, 45}, {TrafficClass::DosNetbios, 45},
        {TrafficClass::DosSnmp, 45}, {TrafficClass::DosUdp, 45},
        {TrafficClass::Syn, 45},     {TrafficClass::Tftp, 12},
        {TrafficClass::UdpLag, 12},
    };
    constexpr double sigma = 0.06;
    constexpr double min_center_gap = 0.45;   // 7.5 sigma, comfortably separable

    util::Rng rng(seed);
    std::vector<std::array<double, kFlowFeatureCount>> centers;
    while (centers.size() < kTrafficClassCount) {
        std::array<double, kFlowFeatureCount> c{};
        for (auto& x : c) x = rng.uniform(0.1, 0.9);
        bool ok = true;
        for (const auto& prev : centers) {
            double d2 = 0.0;
            for (std::size_t f = 0; f < kFlowFeatureCount; ++f)
                d2 += (c[f] - prev[f]) * (c[f] - prev[f]);
            if (std::sqrt(d2) < min_center_gap) {
                ok = false;
                break;
            }
        }
        if (ok) centers.push_back(c);
    }

    FlowDataset out;
    for (std::size_t ci = 0; ci < kTrafficClassCount; ++ci) {
        const TrafficClass cls = kAllTrafficClasses[ci];
        for (std::size_t n = 0; n < sizes.at(cls); ++n) {
            FlowFeatureVector v;
            for (std::size_t f = 0; f < kFlowFeatureCount; ++f)
                v.features[f] = rng.normal(centers[ci][f], sigma);
            v.label = cls;
            out.flows.push_back(v);
        }
    }
    rng.shuffle(out.flows);
    return out;
}

} // namespace netslice::ml
