#include "netslice/ml/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "netslice/kernels/kernels.hpp"
#include "netslice/util/errors.hpp"
#include "netslice/util/text.hpp"

namespace netslice::ml {

SeriesScaler fit_scaler(const std::vector<double>& values) {
    if (values.empty()) throw usage_error("scaler: empty series");
    SeriesScaler s;
    s.min = *std::min_element(values.begin(), values.end());
    s.max = *std::max_element(values.begin(), values.end());
    if (!std::isfinite(s.min) || !std::isfinite(s.max))
        throw data_error("scaler: series contains non-finite values");
    return s;
}

double mse(const std::vector<double>& predicted, const std::vector<double>& actual) {
    if (predicted.size() != actual.size())
        throw usage_error("mse: length mismatch (" + std::to_string(predicted.size()) +
                          " vs " + std::to_string(actual.size()) + ")");
    if (predicted.empty()) throw usage_error("mse: empty series");
    return kernels::sq_l2(predicted.data(), actual.data(), predicted.size()) /
           static_cast<double>(predicted.size());
}

SeriesWindow parse_energy_csv(const std::string& text, const std::string& origin) {
    auto lines = util::split(text, '\n');
    if (lines.empty() || util::trim(lines[0]) != "timestamp,kwh")
        throw data_error(origin + ":1: energy trace header must be `timestamp,kwh`");
    SeriesWindow out;
    bool first = true;
    std::uint64_t expect = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string line = util::trim(lines[i]);
        if (line.empty() || line[0] == '#') continue;
        const std::string where = origin + ":" + std::to_string(i + 1);
        auto cols = util::split(line, ',');
        if (cols.size() != 2) throw data_error(where + ": expected 2 columns");
        std::uint64_t ts;
        double kwh;
        try {
            ts = static_cast<std::uint64_t>(util::parse_int(cols[0], "timestamp"));
            kwh = util::parse_double(cols[1], "kwh");
        } catch (const Error& e) {
            throw data_error(where + ": " + e.what());
        }
        if (!std::isfinite(kwh) || kwh < 0.0)
            throw data_error(where + ": kwh must be finite and >= 0");
        if (first) {
            out.start_index = ts;
            expect = ts;
            first = false;
        }
        if (ts != expect)
            throw data_error(where + ": timestamps must advance by one hour per row");
        ++expect;
        out.values.push_back(kwh);
    }
    if (out.values.empty()) throw data_error(origin + ": energy trace has no rows");
    return out;
}

SeriesWindow load_energy_csv(const std::string& path) {
    return parse_energy_csv(util::read_file(path), path);
}

std::string format_energy_csv(const SeriesWindow& series) {
    std::ostringstream out;
    out << "timestamp,kwh\n";
    for (std::size_t i = 0; i < series.values.size(); ++i)
        out << series.start_index + i << ',' << util::fmt_double(series.values[i]) << '\n';
    return out.str();
}

} // namespace netslice::ml
